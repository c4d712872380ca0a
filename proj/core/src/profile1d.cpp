#include "polya/profile1d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace polya {

ExponentPair::ExponentPair(double p, double q, int dim) : p_(p), q_(q), dim_(dim) {
    if (!(p > 1.0) || std::isinf(p))
        throw InvalidExponents("p must satisfy 1 < p < infinity");
    if (!(q >= 1.0)) throw InvalidExponents("q must satisfy q >= 1");
    if (dim < 1) throw InvalidExponents("dimension must be >= 1");
}

double ExponentPair::sobolev_exponent() const {
    if (p_ >= dim_) return std::numeric_limits<double>::infinity();
    return dim_ * p_ / (dim_ - p_);
}

bool ExponentPair::valid() const {
    if (p_ > dim_) return true; // any 1 <= q <= infinity
    return q_ < sobolev_exponent();
}

std::string ExponentPair::label() const {
    char buf[48];
    if (q_infinite())
        std::snprintf(buf, sizeof buf, "p=%.6g,q=inf", p_);
    else
        std::snprintf(buf, sizeof buf, "p=%.6g,q=%.6g", p_, q_);
    return buf;
}

namespace {

void check_boundary(const DiscreteProfile& u) {
    if (u.values.size() < 3) throw std::invalid_argument("profile needs at least 2 cells");
    if (u.values.back() != 0.0)
        throw std::invalid_argument("profile must vanish at the right end");
    if (u.boundary == DiscreteProfile::Boundary::both_ends_zero && u.values.front() != 0.0)
        throw std::invalid_argument("profile must vanish at the left end");
}

double grad_power_sum(const std::vector<double>& v, double p, double h) {
    double sum = 0.0;
    const double hpow = std::pow(h, 1.0 - p);
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        sum += std::pow(std::fabs(v[i + 1] - v[i]), p) * hpow;
    return sum;
}

// Trapezoid of |u|^q; for q = inf returns max|u| instead.
double norm_integral(const std::vector<double>& v, double q, double h, bool q_inf) {
    if (q_inf) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::fabs(x));
        return m;
    }
    double sum = 0.5 * (std::pow(std::fabs(v.front()), q) + std::pow(std::fabs(v.back()), q));
    for (std::size_t i = 1; i + 1 < v.size(); ++i) sum += std::pow(std::fabs(v[i]), q);
    return sum * h;
}

double quotient(const std::vector<double>& v, const ExponentPair& pq, double h) {
    const double num = grad_power_sum(v, pq.p(), h);
    const double den = norm_integral(v, pq.q(), h, pq.q_infinite());
    if (den == 0.0) throw DegenerateProfile("profile is identically zero");
    const double expo = pq.q_infinite() ? pq.p() : pq.p() / pq.q();
    return num / std::pow(den, expo);
}

} // namespace

double rayleigh_1d(const DiscreteProfile& u, const ExponentPair& pq) {
    check_boundary(u);
    return quotient(u.values, pq, u.grid_step());
}

DiscreteProfile rearrange(const DiscreteProfile& u) {
    const int n = u.cells();
    DiscreteProfile out;
    out.boundary = u.boundary;
    out.values.assign(u.values.size(), 0.0);
    if (u.boundary == DiscreteProfile::Boundary::right_end_zero) {
        std::vector<double> mags(u.values.begin(), u.values.end() - 1);
        for (double& x : mags) x = std::fabs(x);
        std::sort(mags.begin(), mags.end(), std::greater<>());
        std::copy(mags.begin(), mags.end(), out.values.begin());
        return out;
    }
    std::vector<double> mags;
    mags.reserve(static_cast<std::size_t>(n) - 1);
    for (int i = 1; i < n; ++i) mags.push_back(std::fabs(u.values[static_cast<std::size_t>(i)]));
    std::sort(mags.begin(), mags.end(), std::greater<>());
    // Largest at the center, then alternately left/right outward.
    int left, right;
    std::size_t k = 0;
    if (n % 2 == 0) {
        out.values[static_cast<std::size_t>(n / 2)] = mags[k++];
        left = n / 2 - 1;
        right = n / 2 + 1;
    } else {
        left = (n - 1) / 2;
        right = (n + 1) / 2;
        out.values[static_cast<std::size_t>(left)] = mags[k++];
        if (k < mags.size()) out.values[static_cast<std::size_t>(right)] = mags[k++];
        --left;
        ++right;
    }
    while (k < mags.size()) {
        out.values[static_cast<std::size_t>(left--)] = mags[k++];
        if (k < mags.size()) out.values[static_cast<std::size_t>(right++)] = mags[k++];
    }
    return out;
}

namespace {

using Boundary = DiscreteProfile::Boundary;

int first_free_node(Boundary b) { return b == Boundary::both_ends_zero ? 1 : 0; }

void normalize(std::vector<double>& v, const ExponentPair& pq, double h) {
    const double den = norm_integral(v, pq.q(), h, pq.q_infinite());
    if (den == 0.0) throw DegenerateProfile("iterate collapsed to zero");
    const double c = pq.q_infinite() ? den : std::pow(den, 1.0 / pq.q());
    for (double& x : v) x /= c;
}

double sgn_pow(double x, double e) { // |x|^e * sign(x), with 0 -> 0
    if (x == 0.0) return 0.0;
    return std::copysign(std::pow(std::fabs(x), e), x);
}

// Gradient of the quotient at a q-normalized iterate.
void quotient_gradient(const std::vector<double>& v, const ExponentPair& pq, double h,
                       Boundary bnd, double num_value, std::vector<double>& g) {
    const std::size_t m = v.size();
    const double p = pq.p();
    const double hpow = std::pow(h, 1.0 - p);
    g.assign(m, 0.0);
    for (std::size_t c = 0; c + 1 < m; ++c) {
        const double t = p * sgn_pow(v[c + 1] - v[c], p - 1.0) * hpow;
        g[c] -= t;
        g[c + 1] += t;
    }
    if (pq.q_infinite()) {
        std::size_t imax = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < m; ++i)
            if (std::fabs(v[i]) > best) {
                best = std::fabs(v[i]);
                imax = i;
            }
        g[imax] -= p * num_value * (v[imax] < 0.0 ? -1.0 : 1.0);
    } else {
        const double q = pq.q();
        for (std::size_t i = 0; i < m; ++i) {
            const double w = (i == 0 || i + 1 == m) ? 0.5 * h : h;
            g[i] -= p * num_value * w * sgn_pow(v[i], q - 1.0);
        }
    }
    // Pin the Dirichlet nodes.
    if (bnd == Boundary::both_ends_zero) g.front() = 0.0;
    g.back() = 0.0;
}

// Tridiagonal solve K d = g for the free nodes, K the 1-D stiffness matrix
// (Dirichlet at the right end, and at the left end for both_ends profiles).
void h1_direction(const std::vector<double>& g, Boundary bnd, double h, std::vector<double>& d) {
    const int m = static_cast<int>(g.size());
    const int lo = first_free_node(bnd);
    const int hi = m - 2; // last free node
    const int nfree = hi - lo + 1;
    d.assign(g.size(), 0.0);
    if (nfree <= 0) return;
    std::vector<double> diag(static_cast<std::size_t>(nfree)), rhs(static_cast<std::size_t>(nfree));
    for (int i = 0; i < nfree; ++i) {
        diag[static_cast<std::size_t>(i)] =
            (bnd == Boundary::right_end_zero && i == 0) ? 1.0 / h : 2.0 / h;
        rhs[static_cast<std::size_t>(i)] = g[static_cast<std::size_t>(lo + i)];
    }
    const double off = -1.0 / h;
    for (int i = 1; i < nfree; ++i) {
        const double w = off / diag[static_cast<std::size_t>(i - 1)];
        diag[static_cast<std::size_t>(i)] -= w * off;
        rhs[static_cast<std::size_t>(i)] -= w * rhs[static_cast<std::size_t>(i - 1)];
    }
    for (int i = nfree - 1; i >= 0; --i) {
        double x = rhs[static_cast<std::size_t>(i)];
        if (i + 1 < nfree) x -= off * d[static_cast<std::size_t>(lo + i + 1)];
        d[static_cast<std::size_t>(lo + i)] = x / diag[static_cast<std::size_t>(i)];
    }
}

struct StartOutcome {
    double value = std::numeric_limits<double>::infinity();
    std::vector<double> profile;
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

StartOutcome descend(std::vector<double> v, const ExponentPair& pq, Boundary bnd, int n,
                     const Solve1dOptions& opts, bool trace) {
    const double h = 1.0 / n;
    StartOutcome out;
    normalize(v, pq, h);
    double obj = quotient(v, pq, h);
    std::vector<double> g, d, trial;
    std::vector<double> history;
    history.push_back(obj);
    for (int it = 0; it < opts.max_iterations; ++it) {
        const double num = obj; // at unit q-norm the numerator equals the quotient
        quotient_gradient(v, pq, h, bnd, num, g);
        if (opts.h1_metric)
            h1_direction(g, bnd, h, d);
        else
            d = g;
        double gd = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) gd += g[i] * d[i];
        bool accepted = false;
        double step = opts.armijo_initial_step;
        while (step > 1e-18) {
            trial = v;
            for (std::size_t i = 0; i < v.size(); ++i) trial[i] = v[i] - step * d[i];
            double tobj;
            try {
                normalize(trial, pq, h);
                tobj = quotient(trial, pq, h);
            } catch (const DegenerateProfile&) {
                step *= opts.armijo_backtrack;
                continue;
            }
            if (tobj <= obj - opts.armijo_decrease * step * gd) {
                v.swap(trial);
                obj = tobj;
                accepted = true;
                break;
            }
            step *= opts.armijo_backtrack;
        }
        ++out.iterations;
        if (!accepted) {
            out.converged = true; // no descent left at this resolution
            break;
        }
        if (opts.rearrange_every > 0 && (it + 1) % opts.rearrange_every == 0) {
            DiscreteProfile tmp;
            tmp.boundary = bnd;
            tmp.values = v;
            DiscreteProfile pol = rearrange(tmp);
            normalize(pol.values, pq, h);
            const double pobj = quotient(pol.values, pq, h);
            if (pobj <= obj) { // the polish never increases the objective
                v = pol.values;
                obj = pobj;
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
    out.profile = std::move(v);
    return out;
}

std::vector<double> refine_dyadic(const std::vector<double>& coarse) {
    std::vector<double> fine(2 * coarse.size() - 1);
    for (std::size_t i = 0; i < coarse.size(); ++i) fine[2 * i] = coarse[i];
    for (std::size_t i = 0; i + 1 < coarse.size(); ++i)
        fine[2 * i + 1] = 0.5 * (coarse[i] + coarse[i + 1]);
    return fine;
}

std::vector<int> grid_ladder(int n) {
    std::vector<int> ladder{n};
    while (ladder.back() % 2 == 0 && ladder.back() / 2 >= 200) ladder.push_back(ladder.back() / 2);
    std::reverse(ladder.begin(), ladder.end());
    return ladder;
}

Solve1dResult solve_quotient(const ExponentPair& pq, Boundary bnd, int n,
                             const Solve1dOptions& opts) {
    if (pq.p() < 1.05)
        throw InvalidExponents("p >= 1.05 required: the solver degenerates as p -> 1");
    if (n < 200) throw std::invalid_argument("grid size n must be >= 200");

    const std::vector<int> ladder = grid_ladder(n);
    const bool above = pq.regime() == ExponentPair::Regime::q_above_p;
    // Regime default: 8 random starts plus the (p,p) minimizer (and one
    // deterministic bump) for the non-convex q > p problem, 2 starts otherwise.
    int nstarts = opts.multi_starts > 0 ? opts.multi_starts : (above ? 10 : 2);

    // Start profiles on the coarsest grid, Dirichlet nodes exactly zero.
    const int n0 = ladder.front();
    std::vector<std::vector<double>> starts;
    {
        std::vector<double> v(static_cast<std::size_t>(n0) + 1, 0.0);
        for (int i = 1; i < n0; ++i) {
            const double t = double(i) / n0;
            v[static_cast<std::size_t>(i)] =
                bnd == Boundary::both_ends_zero ? std::sin(M_PI * t) : std::cos(0.5 * M_PI * t);
        }
        if (bnd == Boundary::right_end_zero) v[0] = 1.0;
        starts.push_back(std::move(v));
    }
    if (above && nstarts > 1) {
        // One start from the (p,p) minimizer.
        Solve1dOptions sub = opts;
        sub.multi_starts = 2;
        sub.record_trace = false;
        ExponentPair pp(pq.p(), pq.p(), pq.dim());
        Solve1dResult base = solve_quotient(pp, bnd, n0, sub);
        starts.push_back(base.minimizer.values);
    }
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    while (static_cast<int>(starts.size()) < nstarts) {
        std::vector<double> v(static_cast<std::size_t>(n0) + 1, 0.0);
        for (int i = first_free_node(bnd); i < n0; ++i)
            v[static_cast<std::size_t>(i)] = unif(rng);
        starts.push_back(std::move(v));
    }

    Solve1dResult res;
    res.starts = static_cast<int>(starts.size());
    double best = std::numeric_limits<double>::infinity();
    double worstFinal = 0.0, bestFinal = std::numeric_limits<double>::infinity();
    bool anyConverged = false;
    for (const auto& s0 : starts) {
        std::vector<double> v = s0;
        StartOutcome last;
        for (std::size_t lev = 0; lev < ladder.size(); ++lev) {
            if (lev > 0)
                while (static_cast<int>(v.size()) - 1 < ladder[lev]) v = refine_dyadic(v);
            last = descend(std::move(v), pq, bnd, ladder[lev], opts,
                           opts.record_trace && lev + 1 == ladder.size());
            v = std::move(last.profile);
            res.iterations += last.iterations;
        }
        anyConverged = anyConverged || last.converged;
        bestFinal = std::min(bestFinal, last.value);
        worstFinal = std::max(worstFinal, last.value);
        if (last.value < best) {
            best = last.value;
            res.minimizer.boundary = bnd;
            res.minimizer.values = std::move(v);
            res.trace = std::move(last.trace);
        }
    }
    if (!anyConverged)
        throw ConvergenceFailure("1-D quotient minimization did not plateau within budget", best);
    res.value = best;
    res.spread = (worstFinal - bestFinal) / bestFinal;
    res.spread_flagged = res.spread > 1e-3;
    return res;
}

} // namespace

Solve1dResult solve_pi_pq(const ExponentPair& pq, int n, const Solve1dOptions& opts) {
    return solve_quotient(pq, Boundary::both_ends_zero, n, opts);
}

Solve1dResult solve_a_pq(const ExponentPair& pq, int n, const Solve1dOptions& opts) {
    return solve_quotient(pq, Boundary::right_end_zero, n, opts);
}

double closed_form_pi_p1(double p) {
    if (!(p > 1.0)) throw InvalidExponents("closed_form_pi_p1 needs p > 1");
    return 2.0 * std::pow((2.0 * p - 1.0) / (p - 1.0), (p - 1.0) / p);
}

DiscreteProfile closed_form_extremal_p1(double p, int n) {
    if (!(p > 1.0)) throw InvalidExponents("closed_form_extremal_p1 needs p > 1");
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    const double e = p / (p - 1.0);
    const double peak = std::pow(0.5, e);
    DiscreteProfile u;
    u.boundary = DiscreteProfile::Boundary::both_ends_zero;
    u.values.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double t = double(i) / n;
        u.values[static_cast<std::size_t>(i)] = peak - std::pow(std::fabs(t - 0.5), e);
    }
    u.values.front() = 0.0;
    u.values.back() = 0.0;
    return u;
}

double length_scaling(double value_pow_p, double length, const ExponentPair& pq) {
    if (!(length > 0.0)) throw std::invalid_argument("length must be positive");
    return value_pow_p / std::pow(length, pq.p() - 1.0 + pq.p() * pq.inv_q());
}

double scaled_min(double length, const ExponentPair& pq, int n, const Solve1dOptions& opts) {
    return length_scaling(solve_pi_pq(pq, n, opts).value, length, pq);
}

} // namespace polya
