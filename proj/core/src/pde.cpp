#include "polya/pde.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <random>

namespace polya {

namespace {

// Degree-4 rule on the reference triangle (6 points, positive weights).
struct GaussPoint {
    double l0, l1, l2, w;
};
constexpr std::array<GaussPoint, 6> kQuad = {{
    {0.108103018168070, 0.445948490915965, 0.445948490915965, 0.223381589678011},
    {0.445948490915965, 0.108103018168070, 0.445948490915965, 0.223381589678011},
    {0.445948490915965, 0.445948490915965, 0.108103018168070, 0.223381589678011},
    {0.816847572980459, 0.091576213509771, 0.091576213509771, 0.109951743655322},
    {0.091576213509771, 0.816847572980459, 0.091576213509771, 0.109951743655322},
    {0.091576213509771, 0.091576213509771, 0.816847572980459, 0.109951743655322},
}};

double pow_abs(double x, double e) {
    const double a = std::fabs(x);
    if (e == 2.0) return a * a;
    if (e == 1.0) return a;
    if (e == 3.0) return a * a * a;
    if (e == 4.0) return (a * a) * (a * a);
    return std::pow(a, e);
}

double sgn_pow(double x, double e) { // |x|^e sign(x)
    if (x == 0.0) return 0.0;
    if (e == 1.0) return x;
    if (e == 0.0) return x > 0.0 ? 1.0 : -1.0;
    if (e == 2.0) return std::fabs(x) * x;
    return std::copysign(std::pow(std::fabs(x), e), x);
}

struct LevelData {
    const TriMesh* mesh = nullptr;
    std::vector<double> area;
    std::vector<std::array<Point, 3>> grad_shape;
    std::vector<int> interior_of_node; // -1 for boundary nodes
    std::vector<int> node_of_interior;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> stiffness;
    bool factorized = false;

    explicit LevelData(const TriMesh& m) : mesh(&m) {
        const std::size_t T = m.triangles.size();
        area.resize(T);
        grad_shape.resize(T);
        for (std::size_t t = 0; t < T; ++t) {
            const auto& tri = m.triangles[t];
            const Point a = m.points[static_cast<std::size_t>(tri[0])];
            const Point b = m.points[static_cast<std::size_t>(tri[1])];
            const Point c = m.points[static_cast<std::size_t>(tri[2])];
            const double A = 0.5 * cross(b - a, c - a);
            area[t] = A;
            // grad of the shape function at vertex i: rot90(opposite edge)/(2A)
            const double inv = 1.0 / (2.0 * A);
            grad_shape[t][0] = {-(c.y - b.y) * inv, (c.x - b.x) * inv};
            grad_shape[t][1] = {-(a.y - c.y) * inv, (a.x - c.x) * inv};
            grad_shape[t][2] = {-(b.y - a.y) * inv, (b.x - a.x) * inv};
        }
        interior_of_node.assign(m.points.size(), -1);
        for (std::size_t i = 0; i < m.points.size(); ++i) {
            if (!m.on_boundary[i]) {
                interior_of_node[i] = static_cast<int>(node_of_interior.size());
                node_of_interior.push_back(static_cast<int>(i));
            }
        }
    }

    void ensure_stiffness() {
        if (factorized) return;
        const std::size_t T = mesh->triangles.size();
        const int n = static_cast<int>(node_of_interior.size());
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(T * 9);
        for (std::size_t t = 0; t < T; ++t) {
            const auto& tri = mesh->triangles[t];
            for (int i = 0; i < 3; ++i) {
                const int gi = interior_of_node[static_cast<std::size_t>(tri[i])];
                if (gi < 0) continue;
                for (int j = 0; j < 3; ++j) {
                    const int gj = interior_of_node[static_cast<std::size_t>(tri[j])];
                    if (gj < 0) continue;
                    trips.emplace_back(gi, gj,
                                       dot(grad_shape[t][static_cast<std::size_t>(i)],
                                           grad_shape[t][static_cast<std::size_t>(j)]) *
                                           area[t]);
                }
            }
        }
        Eigen::SparseMatrix<double> K(n, n);
        K.setFromTriplets(trips.begin(), trips.end());
        stiffness.compute(K);
        factorized = true;
    }
};

double numerator(const LevelData& L, const std::vector<double>& u, double p) {
    double sum = 0.0;
    const auto& tris = L.mesh->triangles;
    for (std::size_t t = 0; t < tris.size(); ++t) {
        const auto& tri = tris[t];
        Point g{0.0, 0.0};
        for (int i = 0; i < 3; ++i) {
            const double ui = u[static_cast<std::size_t>(tri[i])];
            g.x += ui * L.grad_shape[t][static_cast<std::size_t>(i)].x;
            g.y += ui * L.grad_shape[t][static_cast<std::size_t>(i)].y;
        }
        const double g2 = g.x * g.x + g.y * g.y;
        sum += (p == 2.0 ? g2 : std::pow(g2, 0.5 * p)) * L.area[t];
    }
    return sum;
}

double denominator(const LevelData& L, const std::vector<double>& u, double q, bool q_inf) {
    if (q_inf) {
        double m = 0.0;
        for (double x : u) m = std::max(m, std::fabs(x));
        return m;
    }
    double sum = 0.0;
    const auto& tris = L.mesh->triangles;
    for (std::size_t t = 0; t < tris.size(); ++t) {
        const auto& tri = tris[t];
        const double a = u[static_cast<std::size_t>(tri[0])];
        const double b = u[static_cast<std::size_t>(tri[1])];
        const double c = u[static_cast<std::size_t>(tri[2])];
        if (q == 2.0) { // exact for the quadratic integrand
            sum += L.area[t] / 6.0 * (a * a + b * b + c * c + a * b + b * c + c * a);
        } else {
            double s = 0.0;
            for (const GaussPoint& gp : kQuad)
                s += gp.w * pow_abs(gp.l0 * a + gp.l1 * b + gp.l2 * c, q);
            sum += L.area[t] * s;
        }
    }
    return sum;
}

double objective(const LevelData& L, const std::vector<double>& u, const ExponentPair& pq) {
    const double num = numerator(L, u, pq.p());
    const double den = denominator(L, u, pq.q(), pq.q_infinite());
    if (den == 0.0) throw DegenerateField("field is identically zero");
    const double expo = pq.q_infinite() ? pq.p() : pq.p() / pq.q();
    return num / std::pow(den, expo);
}

void normalize_field(const LevelData& L, std::vector<double>& u, const ExponentPair& pq) {
    const double den = denominator(L, u, pq.q(), pq.q_infinite());
    if (den == 0.0) throw DegenerateField("field collapsed to zero");
    const double c = pq.q_infinite() ? den : std::pow(den, 1.0 / pq.q());
    for (double& x : u) x /= c;
}

// Gradient of the quotient at a q-normalized field.
void gradient(const LevelData& L, const std::vector<double>& u, const ExponentPair& pq,
              double num_value, std::vector<double>& g) {
    const double p = pq.p();
    g.assign(u.size(), 0.0);
    const auto& tris = L.mesh->triangles;
    for (std::size_t t = 0; t < tris.size(); ++t) {
        const auto& tri = tris[t];
        Point gr{0.0, 0.0};
        for (int i = 0; i < 3; ++i) {
            const double ui = u[static_cast<std::size_t>(tri[i])];
            gr.x += ui * L.grad_shape[t][static_cast<std::size_t>(i)].x;
            gr.y += ui * L.grad_shape[t][static_cast<std::size_t>(i)].y;
        }
        const double norm2 = gr.x * gr.x + gr.y * gr.y;
        if (norm2 == 0.0) continue;
        const double coef = p * (p == 2.0 ? 1.0 : std::pow(norm2, 0.5 * p - 1.0)) * L.area[t];
        for (int i = 0; i < 3; ++i)
            g[static_cast<std::size_t>(tri[i])] +=
                coef * dot(gr, L.grad_shape[t][static_cast<std::size_t>(i)]);
    }
    if (pq.q_infinite()) {
        std::size_t imax = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < u.size(); ++i)
            if (std::fabs(u[i]) > best) {
                best = std::fabs(u[i]);
                imax = i;
            }
        g[imax] -= p * num_value * (u[imax] < 0.0 ? -1.0 : 1.0);
    } else {
        const double q = pq.q();
        const double scale = p * num_value; // (p/q) * num * dD, dD carries a factor q
        for (std::size_t t = 0; t < tris.size(); ++t) {
            const auto& tri = tris[t];
            const double a = u[static_cast<std::size_t>(tri[0])];
            const double b = u[static_cast<std::size_t>(tri[1])];
            const double c = u[static_cast<std::size_t>(tri[2])];
            if (q == 2.0) {
                const double f = scale * L.area[t] / 6.0;
                g[static_cast<std::size_t>(tri[0])] -= f * (2.0 * a + b + c);
                g[static_cast<std::size_t>(tri[1])] -= f * (2.0 * b + c + a);
                g[static_cast<std::size_t>(tri[2])] -= f * (2.0 * c + a + b);
            } else {
                for (const GaussPoint& gp : kQuad) {
                    const double val = gp.l0 * a + gp.l1 * b + gp.l2 * c;
                    const double f = scale * L.area[t] * gp.w * sgn_pow(val, q - 1.0);
                    g[static_cast<std::size_t>(tri[0])] -= f * gp.l0;
                    g[static_cast<std::size_t>(tri[1])] -= f * gp.l1;
                    g[static_cast<std::size_t>(tri[2])] -= f * gp.l2;
                }
            }
        }
    }
    for (std::size_t i = 0; i < u.size(); ++i)
        if (L.mesh->on_boundary[i]) g[i] = 0.0;
}

void h1_direction(LevelData& L, const std::vector<double>& g, std::vector<double>& d) {
    L.ensure_stiffness();
    const int n = static_cast<int>(L.node_of_interior.size());
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = g[static_cast<std::size_t>(L.node_of_interior[static_cast<std::size_t>(i)])];
    Eigen::VectorXd x = L.stiffness.solve(rhs);
    d.assign(g.size(), 0.0);
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(L.node_of_interior[static_cast<std::size_t>(i)])] = x[i];
}

struct DescentOutcome {
    double value = 0.0;
    std::vector<double> field;
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

DescentOutcome descend_level(LevelData& L, std::vector<double> u, const ExponentPair& pq,
                             const Solve2dOptions& opts, bool trace) {
    DescentOutcome out;
    normalize_field(L, u, pq);
    double obj = objective(L, u, pq);
    std::vector<double> g, d, trial;
    std::vector<double> history{obj};
    for (int it = 0; it < opts.max_iterations; ++it) {
        gradient(L, u, pq, obj, g);
        h1_direction(L, g, d);
        double gd = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) gd += g[i] * d[i];
        bool accepted = false;
        double step = 1.0;
        while (step > 1e-18) {
            trial.resize(u.size());
            for (std::size_t i = 0; i < u.size(); ++i) trial[i] = u[i] - step * d[i];
            double tobj;
            try {
                normalize_field(L, trial, pq);
                tobj = objective(L, trial, pq);
            } catch (const DegenerateField&) {
                step *= 0.5;
                continue;
            }
            if (tobj <= obj - opts.armijo_decrease * step * gd) {
                u.swap(trial);
                obj = tobj;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        ++out.iterations;
        if (!accepted) {
            out.converged = true;
            break;
        }
        if (opts.clamp_every > 0 && (it + 1) % opts.clamp_every == 0) {
            // Ground-state heuristic: make the dominant sign positive, then
            // drop the negative part.
            double pos = 0.0, neg = 0.0;
            for (double x : u) (x >= 0.0 ? pos : neg) += std::fabs(x);
            std::vector<double> clamped = u;
            if (neg > pos)
                for (double& x : clamped) x = -x;
            bool nonzero = false;
            for (double& x : clamped) {
                x = std::max(x, 0.0);
                nonzero = nonzero || x > 0.0;
            }
            if (nonzero) {
                normalize_field(L, clamped, pq);
                u = std::move(clamped);
                obj = objective(L, u, pq);
            }
        }
        history.push_back(obj);
        if (trace) out.trace.push_back(obj);
        const std::size_t w = static_cast<std::size_t>(opts.plateau_window);
        if (history.size() > w) {
            const double prev = history[history.size() - 1 - w];
            if ((prev - obj) / std::max(obj, 1e-300) < opts.rel_tol) {
                out.converged = true;
                break;
            }
        }
    }
    out.value = obj;
    out.field = std::move(u);
    return out;
}

std::vector<double> distance_start(const ConvexPolygon& poly, const TriMesh& mesh) {
    const auto& verts = poly.vertices();
    const std::size_t k = verts.size();
    std::vector<double> u(mesh.points.size(), 0.0);
    for (std::size_t i = 0; i < mesh.points.size(); ++i) {
        if (mesh.on_boundary[i]) continue;
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t e = 0; e < k; ++e) {
            const Point a = verts[e];
            const Point dir = verts[(e + 1) % k] - a;
            const double len = norm(dir);
            const Point n{-dir.y / len, dir.x / len};
            d = std::min(d, dot(n, mesh.points[i]) - dot(n, a));
        }
        u[i] = d;
    }
    return u;
}

std::vector<double> prolongate(const std::vector<double>& coarse,
                               const std::vector<std::array<int, 2>>& parents) {
    std::vector<double> fine(parents.size());
    for (std::size_t i = 0; i < parents.size(); ++i)
        fine[i] = 0.5 * (coarse[static_cast<std::size_t>(parents[i][0])] +
                         coarse[static_cast<std::size_t>(parents[i][1])]);
    return fine;
}

void validate_planar(const ExponentPair& pq) {
    if (pq.dim() != 2)
        throw InvalidExponents("planar solves need an ExponentPair with dim = 2");
    if (!pq.valid())
        throw InvalidExponents("(p,q) outside the admissible planar range: " + pq.label());
}

EigEstimate solve_on_hierarchy(const ConvexPolygon& poly, const MeshHierarchy& hier,
                               const ExponentPair& pq, double h, const Solve2dOptions& opts);

// Coarse (p,p) minimizer used as one of the q > p starts.
std::vector<double> pp_start(const ConvexPolygon& poly, const MeshHierarchy& hier,
                             std::size_t level, const ExponentPair& pq,
                             const Solve2dOptions& opts) {
    LevelData L(hier.levels[level]);
    ExponentPair pp(pq.p(), pq.p(), 2);
    Solve2dOptions sub = opts;
    sub.record_trace = false;
    DescentOutcome o = descend_level(L, distance_start(poly, hier.levels[level]), pp, sub, false);
    return std::move(o.field);
}

EigEstimate solve_on_hierarchy(const ConvexPolygon& poly, const MeshHierarchy& hier,
                               const ExponentPair& pq, double h, const Solve2dOptions& opts) {
    const std::size_t nlevels = hier.levels.size();
    EigEstimate est;
    est.h = h;

    if (!opts.warm_start.empty()) {
        if (opts.warm_start.size() != hier.finest().points.size())
            throw std::invalid_argument("warm_start size does not match the finest mesh");
        LevelData L(hier.finest());
        std::vector<double> u = opts.warm_start;
        for (std::size_t i = 0; i < u.size(); ++i)
            if (hier.finest().on_boundary[i]) u[i] = 0.0;
        DescentOutcome o = descend_level(L, std::move(u), pq, opts, opts.record_trace);
        if (!o.converged)
            throw ConvergenceFailure("2-D descent exhausted its budget", o.value);
        est.value = o.value;
        est.field.values = std::move(o.field);
        est.mesh = std::make_shared<TriMesh>(hier.finest());
        est.iterations = o.iterations;
        est.starts = 1;
        est.trace = std::move(o.trace);
        return est;
    }

    // Multi-start begins at the first level with a usable interior.
    std::size_t start_level = nlevels - 1;
    for (std::size_t lev = 0; lev < nlevels; ++lev)
        if (hier.levels[lev].interior_count() >= 64) {
            start_level = lev;
            break;
        }

    const bool above = pq.regime() == ExponentPair::Regime::q_above_p;
    const int nstarts = opts.multi_starts > 0 ? opts.multi_starts : (above ? 6 : 1);

    std::vector<std::vector<double>> starts;
    starts.push_back(distance_start(poly, hier.levels[start_level]));
    if (above && nstarts > 1)
        starts.push_back(pp_start(poly, hier, start_level, pq, opts));
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    while (static_cast<int>(starts.size()) < nstarts) {
        std::vector<double> u(hier.levels[start_level].points.size(), 0.0);
        for (std::size_t i = 0; i < u.size(); ++i)
            if (!hier.levels[start_level].on_boundary[i]) u[i] = unif(rng);
        starts.push_back(std::move(u));
    }
    est.starts = static_cast<int>(starts.size());

    // Cascade all starts to the next-to-finest level, pick the best, and
    // finish it on the finest mesh.
    const std::size_t compare_level = nlevels >= 2 ? nlevels - 2 : nlevels - 1;
    std::vector<std::unique_ptr<LevelData>> data;
    data.reserve(nlevels - start_level);
    for (std::size_t lev = start_level; lev < nlevels; ++lev)
        data.push_back(std::make_unique<LevelData>(hier.levels[lev]));

    double best = std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    std::vector<double> best_field;
    bool compare_is_finest = compare_level <= start_level;
    for (auto& s : starts) {
        std::vector<double> u = std::move(s);
        DescentOutcome o;
        const std::size_t stop_level = compare_is_finest ? nlevels - 1 : compare_level;
        for (std::size_t lev = start_level; lev <= stop_level; ++lev) {
            if (lev > start_level) u = prolongate(u, hier.parents[lev]);
            o = descend_level(*data[lev - start_level], std::move(u), pq, opts, false);
            u = std::move(o.field);
            est.iterations += o.iterations;
        }
        lo = std::min(lo, o.value);
        hi = std::max(hi, o.value);
        if (o.value < best) {
            best = o.value;
            best_field = std::move(u);
        }
    }
    est.spread = est.starts > 1 ? (hi - lo) / lo : 0.0;
    est.spread_flagged = est.spread > 5e-3;

    std::vector<double> u = std::move(best_field);
    DescentOutcome fin;
    if (!compare_is_finest) {
        for (std::size_t lev = compare_level + 1; lev < nlevels; ++lev) {
            if (lev > start_level) u = prolongate(u, hier.parents[lev]);
            fin = descend_level(*data[lev - start_level], std::move(u), pq, opts,
                                opts.record_trace && lev + 1 == nlevels);
            u = std::move(fin.field);
            est.iterations += fin.iterations;
        }
        if (!fin.converged)
            throw ConvergenceFailure("2-D descent exhausted its budget", fin.value);
        est.value = fin.value;
        est.trace = std::move(fin.trace);
    } else {
        est.value = best;
    }
    est.field.values = std::move(u);
    est.mesh = std::make_shared<TriMesh>(hier.finest());
    return est;
}

} // namespace

double rayleigh_2d(const TriMesh& mesh, const MeshField& u, const ExponentPair& pq) {
    if (u.values.size() != mesh.points.size())
        throw std::invalid_argument("field size does not match mesh");
    for (std::size_t i = 0; i < u.values.size(); ++i)
        if (mesh.on_boundary[i] && u.values[i] != 0.0)
            throw std::invalid_argument("field must vanish at boundary nodes");
    LevelData L(mesh);
    return objective(L, u.values, pq);
}

EigEstimate solve_lambda_pq(const ConvexPolygon& poly, const ExponentPair& pq, double h,
                            const Solve2dOptions& opts) {
    validate_planar(pq);
    MeshHierarchy hier = triangulate_hierarchy(poly, h, opts.node_budget);
    return solve_on_hierarchy(poly, hier, pq, h, opts);
}

double polya_upper_bound(const ConvexPolygon& poly, const ExponentPair& pq, int n_tau,
                         const Solve1dOptions& psi_opts) {
    validate_planar(pq);
    const InnerParallelProfile prof = parallel_profile(poly, n_tau);
    for (std::size_t j = 0; j + 1 < prof.tau.size(); ++j) {
        if (!(prof.xi[j + 1] < prof.xi[j]))
            throw ProfileTooCoarse("xi table is not strictly decreasing");
        if (prof.perim[j + 1] > prof.perim[j])
            throw ProfileTooCoarse("perimeter table is not non-increasing");
    }
    const double volume = prof.xi.front();

    ExponentPair pq1(pq.p(), pq.q(), 1);
    const Solve1dResult psi = solve_a_pq(pq1, 1000, psi_opts);
    const auto& pv = psi.minimizer.values;
    const int pn = psi.minimizer.cells();
    auto psi_at = [&](double s) {
        const double x = std::clamp(s, 0.0, 1.0) * pn;
        const int i = std::min(static_cast<int>(x), pn - 1);
        const double f = x - i;
        return (1.0 - f) * pv[static_cast<std::size_t>(i)] +
               f * pv[static_cast<std::size_t>(i) + 1];
    };

    std::vector<double> phi(prof.tau.size());
    for (std::size_t j = 0; j < prof.tau.size(); ++j) phi[j] = psi_at(prof.xi[j] / volume);

    double num = 0.0, den = 0.0, sup = 0.0;
    for (std::size_t j = 0; j + 1 < prof.tau.size(); ++j) {
        const double dt = prof.tau[j + 1] - prof.tau[j];
        const double slope = (phi[j + 1] - phi[j]) / dt;
        const double pmid = 0.5 * (prof.perim[j] + prof.perim[j + 1]);
        num += pow_abs(slope, pq.p()) * pmid * dt;
        if (!pq.q_infinite())
            den += 0.5 *
                   (pow_abs(phi[j], pq.q()) * prof.perim[j] +
                    pow_abs(phi[j + 1], pq.q()) * prof.perim[j + 1]) *
                   dt;
    }
    if (pq.q_infinite()) {
        for (double v : phi) sup = std::max(sup, std::fabs(v));
        if (sup == 0.0) throw DegenerateProfile("test profile vanished");
        return num / std::pow(sup, pq.p());
    }
    if (den == 0.0) throw DegenerateProfile("test profile vanished");
    return num / std::pow(den, pq.p() / pq.q());
}

std::vector<EigEstimate> right_continuity_scan(const ConvexPolygon& poly, double p,
                                               std::span<const double> q_grid, double h,
                                               const Solve2dOptions& opts) {
    if (q_grid.empty()) throw std::invalid_argument("q grid is empty");
    for (std::size_t i = 0; i + 1 < q_grid.size(); ++i)
        if (!(q_grid[i] > q_grid[i + 1]))
            throw std::invalid_argument("q grid must be strictly descending");
    if (!(q_grid.back() >= p))
        throw std::invalid_argument("q grid must stay at or above p");
    std::vector<EigEstimate> out;
    out.reserve(q_grid.size());
    for (double q : q_grid)
        out.push_back(solve_lambda_pq(poly, ExponentPair(p, q, 2), h, opts));
    return out;
}

} // namespace polya
