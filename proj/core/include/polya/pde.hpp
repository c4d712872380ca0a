#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "polya/geometry.hpp"
#include "polya/profile1d.hpp"

namespace polya {

/// Triangulation of a convex polygon: positively oriented triangles, nodes
/// flagged when they lie on the polygon boundary. Built as a centroid fan,
/// then uniformly refined (each triangle into four) until max_edge <= target_h.
struct TriMesh {
    std::vector<Point> points;
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::uint8_t> on_boundary;
    double target_h = 0.0;
    double max_edge = 0.0;
    int levels = 0;

    double total_area() const;
    std::size_t interior_count() const;
};

TriMesh triangulate(const ConvexPolygon& poly, double h, std::size_t node_budget = 2'000'000);

/// The refinement ladder behind a mesh; parents[k][i] holds the two level-k-1
/// nodes a level-k node interpolates (twice the same index for carried nodes).
struct MeshHierarchy {
    std::vector<TriMesh> levels;
    std::vector<std::vector<std::array<int, 2>>> parents;
    const TriMesh& finest() const { return levels.back(); }
};

MeshHierarchy triangulate_hierarchy(const ConvexPolygon& poly, double h,
                                    std::size_t node_budget = 2'000'000);

/// Nodal values on a TriMesh; zero at boundary nodes.
struct MeshField {
    std::vector<double> values;
};

/// Discrete Rayleigh quotient over the piecewise-linear space:
///   sum_T |grad u|_T|^p area_T / (sum_T int_T |u|^q)^(p/q),
/// gradients constant per triangle and |u|^q integrated by a degree-4 rule
/// (exact for q in {1,2,3,4} on single-signed triangles, so the quotient is
/// the continuous one of the interpolant and minimized values over-estimate
/// the true constant). q = infinity uses max over nodes.
double rayleigh_2d(const TriMesh& mesh, const MeshField& u, const ExponentPair& pq);

struct Solve2dOptions {
    int max_iterations = 20000; // per refinement level
    double rel_tol = 1e-9;      // relative objective change ...
    int plateau_window = 100;   // ... over this many accepted steps
    int clamp_every = 50;       // positivity projection period (ground state heuristic)
    int multi_starts = 0;       // 0 = regime default (6 for q > p, else 1)
    std::uint64_t seed = 777;
    std::size_t node_budget = 2'000'000;
    double armijo_decrease = 1e-4;
    bool record_trace = false;
    /// Nodal values on the finest mesh; when set, descent runs there directly.
    std::vector<double> warm_start;
};

struct EigEstimate {
    double value = 0.0; // upper bound for the continuous constant
    MeshField field;
    std::shared_ptr<const TriMesh> mesh;
    double h = 0.0;
    int iterations = 0;
    int starts = 1;
    double spread = 0.0;         // multi-start disagreement at the comparison level
    bool spread_flagged = false; // spread > 0.5%
    std::vector<double> trace;
};

/// Minimizes the Rayleigh quotient over mesh fields vanishing on the
/// boundary: an upper bound for the domain constant. Normalized projected
/// gradient descent (direction preconditioned by the P1 stiffness matrix)
/// with Armijo backtracking, cascadic over the refinement ladder;
/// multi-start for q > p. Throws InvalidExponents when (p, q) is outside
/// the planar admissible range.
EigEstimate solve_lambda_pq(const ConvexPolygon& poly, const ExponentPair& pq, double h,
                            const Solve2dOptions& opts = {});

/// Constructive upper bound from the inner-parallel profile: the test
/// function is profile-of-distance, phi(tau) = psi(xi(tau)/|Omega|) with psi
/// the one-sided 1-D minimizer, and the reduced quotient
///   int |phi'|^p P(Omega_tau) dtau / (int |phi|^q P(Omega_tau) dtau)^(p/q)
/// is evaluated on the tabulated profile. Throws ProfileTooCoarse if the
/// tables fail their monotonicity invariants.
double polya_upper_bound(const ConvexPolygon& poly, const ExponentPair& pq, int n_tau,
                         const Solve1dOptions& psi_opts = {});

/// Estimates along a descending q-grid ending at q = p.
std::vector<EigEstimate> right_continuity_scan(const ConvexPolygon& poly, double p,
                                               std::span<const double> q_grid, double h,
                                               const Solve2dOptions& opts = {});

std::string mesh_to_text(const TriMesh& mesh);
std::string field_to_csv(const TriMesh& mesh, const MeshField& u);
std::string estimate_to_report(const EigEstimate& e, const ExponentPair& pq);

} // namespace polya
