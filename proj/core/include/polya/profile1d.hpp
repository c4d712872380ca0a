#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "polya/errors.hpp"

namespace polya {

/// Integrability exponents (p, q) with the dimension they are used in.
/// p > 1 and q >= 1 always; q may be +infinity (1/q treated as 0).
class ExponentPair {
  public:
    ExponentPair(double p, double q, int dim = 2);

    double p() const { return p_; }
    double q() const { return q_; }
    int dim() const { return dim_; }
    bool q_infinite() const { return std::isinf(q_); }
    double inv_q() const { return q_infinite() ? 0.0 : 1.0 / q_; }

    /// alpha = 1 - 1/p + 1/q, the exponent pairing volume against perimeter.
    double alpha() const { return 1.0 - 1.0 / p_ + inv_q(); }

    /// Critical Sobolev exponent p* for this dimension (+inf when p >= N).
    double sobolev_exponent() const;

    /// Admissible range: q < p* for p <= N; q <= +inf for p > N.
    bool valid() const;

    enum class Regime { q_below_p, q_equal_p, q_above_p };
    Regime regime() const {
        if (q_infinite() || q_ > p_) return Regime::q_above_p;
        return q_ < p_ ? Regime::q_below_p : Regime::q_equal_p;
    }

    std::string label() const;

  private:
    double p_;
    double q_;
    int dim_;
};

/// Grid function on [0,1] with n cells (n+1 values) and a Dirichlet tag.
struct DiscreteProfile {
    enum class Boundary { both_ends_zero, right_end_zero };
    Boundary boundary = Boundary::both_ends_zero;
    std::vector<double> values;

    int cells() const { return static_cast<int>(values.size()) - 1; }
    double grid_step() const { return 1.0 / cells(); }
};

/// Discrete Rayleigh quotient (the p-th power of the constant):
///   sum_cells |du/h|^p h  /  (trapz |u|^q)^(p/q),
/// with the cell (forward-difference) gradient; for q = infinity the
/// denominator is (max |u|)^p. Throws DegenerateProfile on zero input and
/// std::invalid_argument if the boundary tag is not honored.
double rayleigh_1d(const DiscreteProfile& u, const ExponentPair& pq);

/// Symmetric-decreasing rearrangement on the grid: interior magnitudes are
/// sorted and placed outward from t = 1/2, giving an even, unimodal profile
/// that is equimeasurable with the input (an exact permutation of interior
/// nodes). For right_end_zero profiles the analogue is the non-increasing
/// arrangement with its maximum at the free end.
DiscreteProfile rearrange(const DiscreteProfile& u);

struct Solve1dOptions {
    int max_iterations = 100000;
    double rel_tol = 1e-10;  // relative objective change ...
    int plateau_window = 50; // ... over this many iterations
    int rearrange_every = 25;
    int multi_starts = 0; // 0 = regime default (8 random + the (p,p) start for q > p)
    std::uint64_t seed = 12345;
    double armijo_initial_step = 1.0;
    double armijo_backtrack = 0.5;
    double armijo_decrease = 1e-4;
    bool h1_metric = true; // descent direction from the H1 inner product
    bool record_trace = false;
};

struct Solve1dResult {
    double value = 0.0; // p-th power of the constant
    DiscreteProfile minimizer;
    int iterations = 0; // accepted steps, all starts
    int starts = 1;
    double spread = 0.0; // (max - min)/min of the per-start final values
    bool spread_flagged = false; // spread > 0.1%; best value still reported
    std::vector<double> trace;  // objective after each accepted step, best start
};

/// Minimizes the quotient over profiles vanishing at both ends: the p-th
/// power of the one-dimensional constant on (0,1). Normalized gradient
/// descent with Armijo line search, a rearrangement polish every few
/// iterations, and multi-start for q > p. Requires p >= 1.05 and n >= 200.
Solve1dResult solve_pi_pq(const ExponentPair& pq, int n, const Solve1dOptions& opts = {});

/// Same with only the right end forced to zero (the one-sided constant).
Solve1dResult solve_a_pq(const ExponentPair& pq, int n, const Solve1dOptions& opts = {});

/// Closed form of the q = 1 constant, 2*((2p-1)/(p-1))^((p-1)/p).
double closed_form_pi_p1(double p);

/// Its extremal, u(t) = (1/2)^(p/(p-1)) - |t - 1/2|^(p/(p-1)), sampled on n cells.
DiscreteProfile closed_form_extremal_p1(double p, int n);

/// Rescales a solved p-th power from (0,1) to an interval of length L:
/// value / L^(p-1+p/q).
double length_scaling(double value_pow_p, double length, const ExponentPair& pq);

/// Minimum of the quotient over (0, L): solves on (0,1), then rescales.
double scaled_min(double length, const ExponentPair& pq, int n,
                  const Solve1dOptions& opts = {});

std::string profile_to_csv(const DiscreteProfile& u);
std::string trace_to_csv(const std::vector<double>& trace);

} // namespace polya
