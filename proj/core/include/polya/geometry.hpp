#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polya/check_record.hpp"
#include "polya/errors.hpp"

namespace polya {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point a);
double distance(Point a, Point b);

/// Closed convex polygon, vertices in counterclockwise order.
///
/// Construction validates the input and throws InvalidPolygon on failure:
/// at least 3 vertices, counterclockwise (positive signed area), no duplicate
/// consecutive vertices, every turn left within a relative tolerance of 1e-9
/// of the bounding-box scale. Straight (collinear) vertices are allowed.
/// Invalid inputs are rejected, never repaired, at this layer.
///
/// Vertices are stored rotated so the lexicographically smallest one comes
/// first; cyclic relabelings of the same polygon compare and evaluate
/// identically.
class ConvexPolygon {
  public:
    explicit ConvexPolygon(std::vector<Point> vertices);

    const std::vector<Point>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }

    double area() const;       // shoelace
    double perimeter() const;  // sum of edge lengths
    double diameter() const;   // max pairwise vertex distance
    /// Radius of the largest inscribed disk; bisection on the emptiness of
    /// the inward offset, accurate to better than 1e-10 absolute.
    double inradius() const;

    /// Inward offset by tau: intersection of the edge half-planes shifted
    /// inward by tau. Empty (nullopt) exactly when tau >= inradius.
    std::optional<ConvexPolygon> inner_parallel(double tau) const;

    bool contains(Point pt, double tol = 0.0) const;

    ConvexPolygon scaled(double factor) const;
    ConvexPolygon translated(double dx, double dy) const;

    /// Max bounding-box side; the reference scale for tolerances.
    double scale() const;

  private:
    struct trusted_t {};
    ConvexPolygon(std::vector<Point> vertices, trusted_t);

    std::vector<Point> verts_;
};

ConvexPolygon make_rectangle(double width, double height);
ConvexPolygon make_unit_square();
/// Regular k-gon with circumradius r centered at the origin, first vertex on +x.
ConvexPolygon make_regular_polygon(int k, double r = 1.0);

/// Sampled tables of the inner-parallel geometry of a polygon:
/// xi(tau) = |Omega_tau| and P(Omega_tau) for tau in [0, inradius].
///
/// xi decreases strictly to 0 at tau = inradius, perim is non-increasing,
/// and the per-interval finite difference of xi matches the mean of perim
/// (exactly so away from offset kinks, since xi' = -P(Omega_tau)).
struct InnerParallelProfile {
    std::vector<double> tau;    // increasing, tau.front()=0, tau.back()=inradius
    std::vector<double> xi;     // areas; xi[0] = |Omega|
    std::vector<double> perim;  // perimeters; perim[0] = P(Omega)
    double inradius = 0.0;

    /// Trapezoid integral of perim over tau; equals |Omega| up to quadrature.
    double coarea_integral() const;
    /// Max over intervals of |d(xi)/d(tau) + mean(perim)|.
    double finite_difference_defect() const;
};

/// Tabulates the profile on n base samples (n >= 16), uniformly in tau with
/// extra refinement near tau = inradius where xi vanishes quadratically.
InnerParallelProfile parallel_profile(const ConvexPolygon& poly, int n);

std::string profile_to_csv(const InnerParallelProfile& profile);

/// Volume of the unit ball in R^N.
double unit_ball_volume(int dim);

/// Closed-form geometric data of the model families used by the estimates:
/// box slabs (-L/2,L/2)^{N-1} x (0,1), spherical cones of half-opening alpha,
/// and balls.
struct ModelBody {
    std::string id;
    int dim = 2;
    double volume = 0.0;
    double perimeter = 0.0;
    double inradius = 0.0;
    double diameter = 0.0;
};

ModelBody slab_box(double length, int dim);
/// Spherical cone {|x| < 1, x_N > |x| cos(alpha)}, 0 < alpha < pi/2. The
/// volume integral over the spherical cap is evaluated by adaptive Simpson
/// quadrature to 1e-10.
ModelBody cone_body(double alpha, int dim);
ModelBody ball_body(double radius, int dim);

/// Volume/perimeter vs inradius bounds: R/N <= |Omega|/P(Omega) < R.
/// Returns the non-strict lower-bound record and the strict upper-bound record.
std::array<CheckRecord, 2> makai_check(const ConvexPolygon& poly);
std::array<CheckRecord, 2> makai_check(const ModelBody& body);

/// Diameter bound gamma_N * diam <= P / R^(N-2) for planar polygons (N=2),
/// where both forms of the estimate coincide with gamma_2 * diam <= P.
CheckRecord diam_bound_check(const ConvexPolygon& poly);

/// Dimensional constant of the diameter bound.
double diam_bound_gamma(int dim);

/// Scale-invariant inradius/diameter estimate with exponent alpha:
/// requires alpha > (N-1)/N and alpha != 1 (throws BorderlineExponent at
/// alpha == 1). The multiplicative constants come from chaining the
/// volume/perimeter bounds with the isoperimetric inequality; they are not
/// claimed sharp.
CheckRecord inradius_diam_check(const ConvexPolygon& poly, double alpha);

} // namespace polya
