#pragma once

#include <cmath>
#include <cstdlib>

namespace polya {

/// Adaptive Simpson quadrature with absolute tolerance.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 50) {
    auto simpson = [&](double lo, double hi, double flo, double fmid, double fhi) {
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    };
    auto recurse = [&](auto&& self, double lo, double hi, double flo, double fmid, double fhi,
                       double whole, double eps, int depth) -> double {
        double mid = 0.5 * (lo + hi);
        double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        double flm = f(lm), frm = f(rm);
        double left = simpson(lo, mid, flo, flm, fmid);
        double right = simpson(mid, hi, fmid, frm, fhi);
        double delta = left + right - whole;
        if (depth >= max_depth || std::fabs(delta) <= 15.0 * eps)
            return left + right + delta / 15.0;
        return self(self, lo, mid, flo, flm, fmid, left, 0.5 * eps, depth + 1) +
               self(self, mid, hi, fmid, frm, fhi, right, 0.5 * eps, depth + 1);
    };
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = simpson(a, b, fa, fm, fb);
    return recurse(recurse, a, b, fa, fm, fb, whole, tol, 0);
}

} // namespace polya
