#include "polya/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace polya {

PiCache::PiCache(int grid, Solve1dOptions opts) : grid_(grid), opts_(opts) {}

double PiCache::pi_pow_p(double p, double q) {
    if (q == 1.0) return std::pow(closed_form_pi_p1(p), p);
    if (p == 2.0 && q == 2.0) return M_PI * M_PI;
    if (std::isinf(q)) return std::pow(2.0, p); // tent function is optimal
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find({p, q});
    if (it != memo_.end()) return it->second;
    const double value = solve_pi_pq(ExponentPair(p, q, 1), grid_, opts_).value;
    memo_.emplace(std::make_pair(p, q), value);
    return value;
}

double PiCache::pi(double p, double q) { return std::pow(pi_pow_p(p, q), 1.0 / p); }

double polya_rhs(double volume, double perimeter, const ExponentPair& pq, PiCache& cache) {
    const double p = pq.p();
    return cache.pi_pow_p(p, pq.q()) / std::pow(2.0, p) *
           std::pow(perimeter / std::pow(volume, pq.alpha()), p);
}

CheckRecord polya_check(const ConvexPolygon& poly, const ExponentPair& pq, double h,
                        PiCache& cache, const Solve2dOptions& opts) {
    CheckRecord rec;
    rec.name = "polya";
    rec.left = solve_lambda_pq(poly, pq, h, opts).value;
    rec.right = polya_rhs(poly.area(), poly.perimeter(), pq, cache);
    rec.strict = true;
    rec.p = pq.p();
    rec.q = pq.q();
    rec.h = h;
    rec.left_provenance = "lambda_pq FEM estimate (upper bound; pass is conservative)";
    rec.right_provenance = "(pi_pq/2)^p (P/|Omega|^alpha)^p";
    return rec;
}

CheegerResult cheeger_convex_2d(const ConvexPolygon& poly, double tol) {
    const double R = poly.inradius();
    auto excess = [&](double t) {
        auto inner = poly.inner_parallel(t);
        const double xi = inner ? inner->area() : 0.0;
        return xi - M_PI * t * t;
    };
    double lo = 0.0, hi = R; // excess(0) = |Omega| > 0 > excess(R)
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0.0 ? lo : hi) = mid;
    }
    CheegerResult res;
    res.t_star = 0.5 * (lo + hi);
    res.h1 = 1.0 / res.t_star;
    return res;
}

double cheeger_ratio_scan(const ConvexPolygon& poly, int samples) {
    if (samples < 2) throw std::invalid_argument("cheeger_ratio_scan: samples must be >= 2");
    const double R = poly.inradius();
    double best = poly.perimeter() / poly.area(); // t = 0: Omega itself
    for (int i = 1; i < samples; ++i) {
        const double t = R * i / samples;
        auto inner = poly.inner_parallel(t);
        if (!inner) break;
        const double pt = inner->perimeter();
        const double at = inner->area();
        // Steiner: outward offset of a convex body by t.
        const double ratio = (pt + 2.0 * M_PI * t) / (at + pt * t + M_PI * t * t);
        best = std::min(best, ratio);
    }
    return best;
}

CheckRecord buser_check(const ConvexPolygon& poly, double p, double h, PiCache& cache,
                        const Solve2dOptions& opts) {
    const ExponentPair pp(p, p, 2);
    const double h1 = cheeger_convex_2d(poly).h1;
    const double right = cache.pi_pow_p(p, p) / std::pow(2.0, p) * std::pow(h1, p);
    double left = solve_lambda_pq(poly, pp, h, opts).value;
    bool refined = false;
    if (!(left < right)) { // sharpen the over-estimate before reporting
        left = solve_lambda_pq(poly, pp, 0.5 * h, opts).value;
        refined = true;
    }
    CheckRecord rec;
    rec.name = "buser";
    rec.left = left;
    rec.right = right;
    rec.strict = true;
    rec.p = p;
    rec.q = p;
    rec.h = refined ? 0.5 * h : h;
    rec.left_provenance = refined ? "lambda_p FEM estimate (refined once at h/2)"
                                  : "lambda_p FEM estimate (upper bound)";
    rec.right_provenance = "(pi_p/2)^p h1^p";
    return rec;
}

CheckRecord cheeger_lower_check(const ConvexPolygon& poly, double h,
                                const Solve2dOptions& opts) {
    const ExponentPair pq(2.0, 2.0, 2);
    const double h1 = cheeger_convex_2d(poly).h1;
    const double left = 0.25 * h1 * h1;
    const double lam_h = solve_lambda_pq(poly, pq, h, opts).value;
    const double lam_h2 = solve_lambda_pq(poly, pq, 0.5 * h, opts).value;
    // FEM over-estimates; assume O(h^2) excess and extrapolate it away.
    const double lam_re = lam_h2 + (lam_h2 - lam_h) / 3.0;
    const double excess = std::max(0.0, lam_h2 - lam_re);
    CheckRecord rec;
    rec.name = "cheeger_lower";
    rec.left = left;
    rec.right = lam_re - excess;
    rec.strict = true;
    rec.p = 2.0;
    rec.q = 2.0;
    rec.h = h;
    rec.left_provenance = "(1/4) h1^2";
    rec.right_provenance = "Richardson-extrapolated lambda_2 minus estimated excess";
    if (!rec.passed() && left < lam_h2)
        throw Inconclusive("cheeger_lower_check: margin undecidable at this resolution");
    return rec;
}

std::vector<CheckRecord> monotonicity_scan(const ConvexPolygon& poly, double p,
                                           std::span<const double> q_grid, double h,
                                           PiCache& cache, const Solve2dOptions& opts) {
    (void)cache;
    if (q_grid.empty()) throw std::invalid_argument("monotonicity_scan: empty q grid");
    for (std::size_t i = 0; i + 1 < q_grid.size(); ++i)
        if (!(q_grid[i] < q_grid[i + 1]))
            throw std::invalid_argument("monotonicity_scan: grid must be ascending in q");
    const double volume = poly.area();
    const double perimeter = poly.perimeter();
    std::vector<double> F;
    F.reserve(q_grid.size());
    for (double q : q_grid) {
        const ExponentPair pq(p, q, 2);
        const double lam = solve_lambda_pq(poly, pq, h, opts).value;
        F.push_back(lam * std::pow(std::pow(volume, pq.alpha()) / perimeter, p));
    }
    std::vector<CheckRecord> out;
    for (std::size_t i = 1; i < q_grid.size(); ++i) {
        CheckRecord rec;
        rec.name = "monotone_q";
        rec.left = F[i];
        rec.right = F[i - 1] * 1.01; // 1% solver tolerance per step
        rec.strict = false;
        rec.p = p;
        rec.q = q_grid[i];
        rec.h = h;
        char buf[64];
        std::snprintf(buf, sizeof buf, "F at q=%.6g", q_grid[i]);
        rec.left_provenance = buf;
        std::snprintf(buf, sizeof buf, "1.01 * F at q=%.6g", q_grid[i - 1]);
        rec.right_provenance = buf;
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<ConvexPolygon> random_corpus(std::uint64_t seed, int count, int vertices) {
    if (count < 1 || vertices < 3) throw std::invalid_argument("bad corpus parameters");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 2.0 * M_PI);
    std::vector<ConvexPolygon> out;
    out.reserve(static_cast<std::size_t>(count));
    const double min_gap = 0.15;
    while (static_cast<int>(out.size()) < count) {
        std::vector<double> ang(static_cast<std::size_t>(vertices));
        for (double& a : ang) a = unif(rng);
        std::sort(ang.begin(), ang.end());
        bool ok = true;
        for (int i = 0; i < vertices; ++i) {
            const double gap = (i + 1 < vertices) ? ang[static_cast<std::size_t>(i + 1)] - ang[static_cast<std::size_t>(i)]
                                                  : ang.front() + 2.0 * M_PI - ang.back();
            if (gap < min_gap) {
                ok = false;
                break;
            }
        }
        if (!ok) continue; // redraw deterministically
        std::vector<Point> pts(static_cast<std::size_t>(vertices));
        for (int i = 0; i < vertices; ++i)
            pts[static_cast<std::size_t>(i)] = {std::cos(ang[static_cast<std::size_t>(i)]),
                                                std::sin(ang[static_cast<std::size_t>(i)])};
        out.emplace_back(std::move(pts));
    }
    return out;
}

} // namespace polya
