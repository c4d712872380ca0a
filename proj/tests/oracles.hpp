#pragma once

// Test-side oracles, independent of the library code paths they check.

#include <cmath>
#include <functional>

namespace oracle {

// Plain recursive Simpson quadrature (local to the tests).
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol,
                      int depth = 0) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double left = (m - a) / 6.0 * (fa + 4.0 * f(lm) + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * f(rm) + fb);
    if (depth > 40 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, 0.5 * tol, depth + 1) + simpson(f, m, b, 0.5 * tol, depth + 1);
}

// First zero of the Bessel function J0; lambda_2 of the unit disk is its square.
inline constexpr double k_j01 = 2.404825557695773;

// Coarea-quotient upper bound for the unit square at p = q = 2, derived from
// the closed-form profile xi = (1-2t)^2, P = 4(1-2t) and psi = cos(pi s / 2):
// the quotient evaluates to 2 pi^2 + 8 in closed form.
inline const double k_square_coarea_bound = 2.0 * M_PI * M_PI + 8.0;

// Same quotient for the L x 1 rectangle, by quadrature on the closed-form
// profile xi = (L-2t)(1-2t), P = 2(L+1-4t).
inline double rectangle_coarea_bound(double L) {
    const double A = L;
    auto phi = [&](double t) { return std::cos(0.5 * M_PI * (L - 2.0 * t) * (1.0 - 2.0 * t) / A); };
    auto dphi = [&](double t) {
        const double xi = (L - 2.0 * t) * (1.0 - 2.0 * t);
        const double dxi = -2.0 * (1.0 - 2.0 * t) - 2.0 * (L - 2.0 * t);
        return -std::sin(0.5 * M_PI * xi / A) * 0.5 * M_PI * dxi / A;
    };
    auto P = [&](double t) { return 2.0 * (L + 1.0 - 4.0 * t); };
    const double num =
        simpson([&](double t) { return dphi(t) * dphi(t) * P(t); }, 0.0, 0.5, 1e-12);
    const double den =
        simpson([&](double t) { return phi(t) * phi(t) * P(t); }, 0.0, 0.5, 1e-12);
    return num / den;
}

} // namespace oracle
