#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polya/geometry.hpp"
#include "polya/pde.hpp"
#include "polya/profile1d.hpp"

namespace polya {

/// One evaluation of the scale-invariant functional
///   F = lambda_{p,q}(Omega) * (|Omega|^alpha / P(Omega))^p,
/// together with the ingredients it was built from.
struct ShapeFunctionalRecord {
    ConvexPolygon polygon; // as evaluated
    double p = 0.0;
    double q = 0.0;
    double lambda = 0.0;
    double volume = 0.0;
    double perimeter = 0.0;
    double F = 0.0;
    double h = 0.0;
    int iterations = 0;
    double spread = 0.0;
};

struct FunctionalOptions {
    double h = 0.0;        // <= 0: h = h_factor * sqrt(|Omega|)
    double h_factor = 0.03;
    Solve2dOptions solve;
};

ShapeFunctionalRecord functional(const ConvexPolygon& poly, const ExponentPair& pq,
                                 const FunctionalOptions& opts = {});

/// Rescales so |Omega|^alpha / P = 1 (possible since alpha > 1/2); the
/// normalization the maximization works in, where F = lambda directly.
ConvexPolygon normalize_shape(const ConvexPolygon& poly, const ExponentPair& pq);

/// F along a grid of rectangles L x 1. For q <= p the curve saturates the
/// one-dimensional bound from below as L grows; for q > p it peaks at an
/// interior L and decays at both ends.
std::vector<ShapeFunctionalRecord> rectangle_sweep(const ExponentPair& pq,
                                                   std::span<const double> L_grid,
                                                   const FunctionalOptions& opts = {});

struct MaximizeOptions {
    FunctionalOptions eval;  // per-candidate evaluation (single-start during ascent)
    std::uint64_t seed = 2024;
    int random_starts = 2;
    int max_evaluations = 1500;
    double step_factor = 0.1;  // initial step = step_factor * diameter
    double step_stop = 1e-4;   // stop when step < step_stop * initial diameter
    double rectangle_L = 0.0;  // 0: locate the rectangle start by an internal sweep
    std::vector<double> sweep_grid = {1, 2, 3, 5, 8, 12, 20, 35, 50};
};

struct MaximizeResult {
    ShapeFunctionalRecord best;      // winner re-scored at h/2
    double F_coarse = 0.0;           // winner at the ascent resolution
    int evaluations = 0;
    bool budget_exhausted = false;   // ascent truncated by max_evaluations
    /// Start shapes as constructed and their F at the ascent resolution.
    std::vector<std::pair<std::string, double>> start_values;
};

/// Projected coordinate ascent over radial vertex positions at k fixed
/// equispaced angles, convex hull repair after every move, scale fixed by
/// normalize_shape before each solve. Starts: regular k-gon, the rectangle
/// from the sweep argmax (radially inscribed), and seeded random hulls.
/// Only meaningful for q > p (throws QNotGreaterThanP otherwise: for q <= p
/// the supremum is approached by slabs and never attained).
MaximizeResult maximize_over_polygons(const ExponentPair& pq, int k,
                                      const MaximizeOptions& opts = {});

struct BallVsRectRow {
    double q = 0.0;
    double F_disk = 0.0;
    double best_L = 0.0;
    double F_rect = 0.0;
    bool rectangle_wins = false;
};

/// For each q in the grid (q > p), compares the disk (64-gon) against the
/// best rectangle over an L-grid; reports where the rectangle family wins.
std::vector<BallVsRectRow> ball_vs_rectangle(double p, std::span<const double> q_grid,
                                             const FunctionalOptions& opts = {},
                                             std::span<const double> L_grid = {});

std::string sweep_to_csv(std::span<const ShapeFunctionalRecord> records);
std::string crossover_to_csv(std::span<const BallVsRectRow> rows);

} // namespace polya
