#include "polya/shapeopt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace polya {

namespace {

double auto_h(const ConvexPolygon& poly, const FunctionalOptions& opts) {
    return opts.h > 0.0 ? opts.h : opts.h_factor * std::sqrt(poly.area());
}

// Convex hull (monotone chain) of a radial point set; repairs concavities
// introduced by a coordinate move.
std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Point a, Point b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<Point> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) { // lower
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) { // upper
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

} // namespace

ConvexPolygon normalize_shape(const ConvexPolygon& poly, const ExponentPair& pq) {
    const double a = pq.alpha();
    if (!(a > 0.5))
        throw InvalidExponents("normalize_shape needs alpha > 1/2 (planar shape class)");
    const double s = std::pow(poly.perimeter() / std::pow(poly.area(), a), 1.0 / (2.0 * a - 1.0));
    return poly.scaled(s);
}

ShapeFunctionalRecord functional(const ConvexPolygon& poly, const ExponentPair& pq,
                                 const FunctionalOptions& opts) {
    const double h = auto_h(poly, opts);
    EigEstimate est = solve_lambda_pq(poly, pq, h, opts.solve);
    ShapeFunctionalRecord rec{poly};
    rec.p = pq.p();
    rec.q = pq.q();
    rec.lambda = est.value;
    rec.volume = poly.area();
    rec.perimeter = poly.perimeter();
    rec.F = est.value *
            std::pow(std::pow(rec.volume, pq.alpha()) / rec.perimeter, pq.p());
    rec.h = h;
    rec.iterations = est.iterations;
    rec.spread = est.spread;
    return rec;
}

std::vector<ShapeFunctionalRecord> rectangle_sweep(const ExponentPair& pq,
                                                   std::span<const double> L_grid,
                                                   const FunctionalOptions& opts) {
    std::vector<ShapeFunctionalRecord> out;
    out.reserve(L_grid.size());
    for (double L : L_grid) {
        ConvexPolygon rect = normalize_shape(make_rectangle(L, 1.0), pq);
        ShapeFunctionalRecord rec = functional(rect, pq, opts);
        out.push_back(std::move(rec));
    }
    return out;
}

namespace {

ConvexPolygon radial_polygon(std::span<const double> radii) {
    const int k = static_cast<int>(radii.size());
    std::vector<Point> pts(radii.size());
    for (int i = 0; i < k; ++i) {
        const double th = 2.0 * M_PI * i / k;
        pts[static_cast<std::size_t>(i)] = {radii[static_cast<std::size_t>(i)] * std::cos(th),
                                            radii[static_cast<std::size_t>(i)] * std::sin(th)};
    }
    return ConvexPolygon(convex_hull(std::move(pts)));
}

// Distance from the origin to the boundary of the L x 1 rectangle centered
// at the origin, along direction theta: the radial inscription of the
// rectangle into the fixed-angle shape class.
double rectangle_ray(double L, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    double best = std::numeric_limits<double>::infinity();
    if (std::fabs(c) > 1e-15) best = std::min(best, 0.5 * L / std::fabs(c));
    if (std::fabs(s) > 1e-15) best = std::min(best, 0.5 / std::fabs(s));
    return best;
}

struct AscentEvaluator {
    const ExponentPair& pq;
    FunctionalOptions opts; // solve.multi_starts forced to 1 during ascent
    std::vector<double> last_field;
    int evaluations = 0;

    double evaluate(const ConvexPolygon& shape) {
        ConvexPolygon normalized = normalize_shape(shape, pq);
        FunctionalOptions o = opts;
        o.solve.multi_starts = 1;
        // Same-topology warm start: radial shapes share the fan connectivity.
        if (!last_field.empty()) o.solve.warm_start = last_field;
        try {
            EigEstimate est =
                solve_lambda_pq(normalized, pq, auto_h(normalized, o), o.solve);
            last_field = est.field.values;
            ++evaluations;
            return est.value; // normalized shape: F = lambda
        } catch (const std::invalid_argument&) {
            // Topology changed (hull dropped a vertex); retry cold.
            o.solve.warm_start.clear();
            EigEstimate est =
                solve_lambda_pq(normalized, pq, auto_h(normalized, o), o.solve);
            last_field = est.field.values;
            ++evaluations;
            return est.value;
        }
    }
};

} // namespace

MaximizeResult maximize_over_polygons(const ExponentPair& pq, int k,
                                      const MaximizeOptions& opts) {
    if (pq.regime() != ExponentPair::Regime::q_above_p)
        throw QNotGreaterThanP("shape maximization needs q > p; no optimal shape otherwise");
    if (k < 4) throw std::invalid_argument("maximize_over_polygons: k must be >= 4");
    if (!pq.valid()) throw InvalidExponents("invalid exponents: " + pq.label());

    // Rectangle start: argmax of an L-sweep unless pinned by the caller.
    double Lbest = opts.rectangle_L;
    if (!(Lbest > 0.0)) {
        FunctionalOptions sweep_opts = opts.eval;
        sweep_opts.solve.multi_starts = 1;
        double bestF = -1.0;
        for (double L : opts.sweep_grid) {
            ShapeFunctionalRecord rec =
                functional(normalize_shape(make_rectangle(L, 1.0), pq), pq, sweep_opts);
            if (rec.F > bestF) {
                bestF = rec.F;
                Lbest = L;
            }
        }
    }

    // Start radial profiles.
    std::vector<std::pair<std::string, std::vector<double>>> starts;
    starts.emplace_back("regular", std::vector<double>(static_cast<std::size_t>(k), 1.0));
    {
        std::vector<double> r(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            r[static_cast<std::size_t>(i)] = rectangle_ray(Lbest, 2.0 * M_PI * i / k);
        char name[48];
        std::snprintf(name, sizeof name, "rectangle(L=%.6g)", Lbest);
        starts.emplace_back(name, std::move(r));
    }
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(0.6, 1.6);
    for (int s = 0; s < opts.random_starts; ++s) {
        std::vector<double> r(static_cast<std::size_t>(k));
        for (double& x : r) x = unif(rng);
        starts.emplace_back("random" + std::to_string(s), std::move(r));
    }

    AscentEvaluator eval{pq, opts.eval};
    if (opts.max_evaluations < static_cast<int>(starts.size()))
        throw BudgetExceeded("maximize_over_polygons: budget below the number of starts");

    std::vector<std::pair<std::string, double>> start_values;
    bool budget_exhausted = false;
    double bestF = -std::numeric_limits<double>::infinity();
    double bestPerim = std::numeric_limits<double>::infinity();
    std::vector<double> bestRadii;
    for (auto& [name, radii0] : starts) {
        std::vector<double> r = radii0;
        eval.last_field.clear();
        const ConvexPolygon start_shape = radial_polygon(r);
        double F = eval.evaluate(start_shape);
        start_values.emplace_back(name, F);
        const double diam0 = start_shape.diameter();
        double step = opts.step_factor * diam0;
        const double stop = opts.step_stop * diam0;
        while (step >= stop && eval.evaluations < opts.max_evaluations) {
            bool improved = false;
            for (int i = 0; i < k && eval.evaluations < opts.max_evaluations; ++i) {
                for (double sign : {+1.0, -1.0}) {
                    std::vector<double> trial = r;
                    trial[static_cast<std::size_t>(i)] += sign * step;
                    if (trial[static_cast<std::size_t>(i)] < 0.05 * diam0) continue;
                    double Ft;
                    try {
                        Ft = eval.evaluate(radial_polygon(trial));
                    } catch (const InvalidPolygon&) {
                        continue;
                    }
                    if (Ft > F) {
                        F = Ft;
                        r = std::move(trial);
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        budget_exhausted = budget_exhausted || eval.evaluations >= opts.max_evaluations;
        const ConvexPolygon shape = normalize_shape(radial_polygon(r), pq);
        // Deterministic tie-break: smaller perimeter at equal F within 1e-6.
        const bool tie = std::fabs(F - bestF) <= 1e-6 * std::max(std::fabs(F), 1.0);
        if ((tie && shape.perimeter() < bestPerim) || (!tie && F > bestF)) {
            bestF = F;
            bestPerim = shape.perimeter();
            bestRadii = r;
        }
    }

    // Re-score the winner at h/2 with the full multi-start policy.
    ConvexPolygon winner = normalize_shape(radial_polygon(bestRadii), pq);
    FunctionalOptions fine = opts.eval;
    fine.h = 0.5 * auto_h(winner, opts.eval);
    return MaximizeResult{functional(winner, pq, fine), bestF, eval.evaluations,
                          budget_exhausted, std::move(start_values)};
}

std::vector<BallVsRectRow> ball_vs_rectangle(double p, std::span<const double> q_grid,
                                             const FunctionalOptions& opts,
                                             std::span<const double> L_grid) {
    static const std::vector<double> default_L{1, 2, 3, 5, 8, 12, 20, 35, 50};
    std::span<const double> Ls = L_grid.empty() ? std::span<const double>(default_L) : L_grid;
    std::vector<BallVsRectRow> rows;
    rows.reserve(q_grid.size());
    for (double q : q_grid) {
        if (!(q > p)) throw std::invalid_argument("ball_vs_rectangle: q grid must stay above p");
        const ExponentPair pq(p, q, 2);
        BallVsRectRow row;
        row.q = q;
        row.F_disk =
            functional(normalize_shape(make_regular_polygon(64), pq), pq, opts).F;
        row.F_rect = -std::numeric_limits<double>::infinity();
        for (double L : Ls) {
            const double F =
                functional(normalize_shape(make_rectangle(L, 1.0), pq), pq, opts).F;
            if (F > row.F_rect) {
                row.F_rect = F;
                row.best_L = L;
            }
        }
        row.rectangle_wins = row.F_rect > row.F_disk;
        rows.push_back(row);
    }
    return rows;
}

} // namespace polya
