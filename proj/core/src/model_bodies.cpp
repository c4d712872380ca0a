#include <cmath>
#include <cstdio>

#include "polya/geometry.hpp"
#include "polya/quadrature.hpp"

namespace polya {

namespace {

std::string body_id(const char* kind, double param, int dim) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s(%.6g,N=%d)", kind, param, dim);
    return buf;
}

std::array<CheckRecord, 2> makai_records(const std::string& id, int dim, double volume,
                                         double perimeter, double inradius) {
    CheckRecord lower;
    lower.name = "makai_lower";
    lower.left = inradius / dim;
    lower.right = volume / perimeter;
    lower.strict = false;
    lower.polygon_id = id;
    lower.left_provenance = "inradius/N (divergence-theorem bound)";
    lower.right_provenance = "volume/perimeter";
    CheckRecord upper;
    upper.name = "makai_upper";
    upper.left = volume / perimeter;
    upper.right = inradius;
    upper.strict = true;
    upper.polygon_id = id;
    upper.left_provenance = "volume/perimeter";
    upper.right_provenance = "inradius (coarea bound)";
    return {lower, upper};
}

} // namespace

double unit_ball_volume(int dim) {
    if (dim < 1) throw std::invalid_argument("unit_ball_volume: dim must be >= 1");
    return std::pow(M_PI, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

ModelBody slab_box(double length, int dim) {
    if (!(length > 0.0)) throw std::invalid_argument("slab_box: length must be positive");
    if (dim < 2) throw std::invalid_argument("slab_box: dim must be >= 2");
    ModelBody b;
    b.id = body_id("slab", length, dim);
    b.dim = dim;
    b.volume = std::pow(length, dim - 1);
    b.perimeter = 2.0 * (dim - 1) * std::pow(length, dim - 2) + 2.0 * std::pow(length, dim - 1);
    b.inradius = 0.5 * std::min(length, 1.0);
    b.diameter = std::sqrt((dim - 1) * length * length + 1.0);
    return b;
}

ModelBody cone_body(double alpha, int dim) {
    if (!(alpha > 0.0 && alpha < 0.5 * M_PI))
        throw std::invalid_argument("cone_body: alpha must lie in (0, pi/2)");
    if (dim < 2) throw std::invalid_argument("cone_body: dim must be >= 2");
    const double omega_m1 = unit_ball_volume(dim - 1);
    const double cap = adaptive_simpson(
        [&](double t) { return omega_m1 * std::pow(1.0 - t * t, 0.5 * (dim - 1)); },
        std::cos(alpha), 1.0, 1e-10);
    ModelBody b;
    b.id = body_id("cone", alpha, dim);
    b.dim = dim;
    b.volume = omega_m1 / dim * std::pow(std::tan(alpha), dim - 1) * std::pow(std::cos(alpha), dim) + cap;
    b.perimeter = dim * b.volume + omega_m1 * std::pow(std::sin(alpha), dim - 2);
    b.inradius = std::sin(alpha) / (std::sin(alpha) + 1.0);
    b.diameter = std::max(1.0, 2.0 * std::sin(alpha));
    return b;
}

ModelBody ball_body(double radius, int dim) {
    if (!(radius > 0.0)) throw std::invalid_argument("ball_body: radius must be positive");
    const double omega = unit_ball_volume(dim);
    ModelBody b;
    b.id = body_id("ball", radius, dim);
    b.dim = dim;
    b.volume = omega * std::pow(radius, dim);
    b.perimeter = dim * omega * std::pow(radius, dim - 1);
    b.inradius = radius;
    b.diameter = 2.0 * radius;
    return b;
}

std::array<CheckRecord, 2> makai_check(const ConvexPolygon& poly) {
    char id[48];
    std::snprintf(id, sizeof id, "polygon(%zu)", poly.size());
    return makai_records(id, 2, poly.area(), poly.perimeter(), poly.inradius());
}

std::array<CheckRecord, 2> makai_check(const ModelBody& body) {
    return makai_records(body.id, body.dim, body.volume, body.perimeter, body.inradius);
}

double diam_bound_gamma(int dim) {
    const double omega_m1 = unit_ball_volume(dim - 1);
    const double omega = unit_ball_volume(dim);
    return 0.5 * std::min(omega_m1 * std::pow(0.75, 0.5 * (dim - 1)), 0.5 * dim * omega);
}

CheckRecord diam_bound_check(const ConvexPolygon& poly) {
    // N = 2: both P/R^(N-2) and (P/|Omega|^((N-2)/(N-1)))^(N-1) reduce to P.
    CheckRecord rec;
    rec.name = "diam_bound";
    rec.left = diam_bound_gamma(2) * poly.diameter();
    rec.right = poly.perimeter();
    rec.strict = false;
    rec.left_provenance = "gamma_2 * diameter, gamma_2 = sqrt(3)/2";
    rec.right_provenance = "perimeter (= P/R^0 = (P/|Omega|^0)^1 at N=2)";
    return rec;
}

CheckRecord inradius_diam_check(const ConvexPolygon& poly, double alpha) {
    constexpr int N = 2;
    if (alpha == 1.0)
        throw BorderlineExponent(
            "alpha = 1: diameter cannot be controlled by inradius and P/|Omega|");
    if (!(alpha > double(N - 1) / N))
        throw std::invalid_argument("inradius_diam_check: alpha must exceed (N-1)/N");
    const double gamma = diam_bound_gamma(N);
    const double R = poly.inradius();
    const double vol = poly.area();
    const double per = poly.perimeter();
    CheckRecord rec;
    rec.strict = false;
    if (alpha < 1.0) {
        // C1 * diam <= R^(alpha/(1-alpha)) * (P/|Omega|^alpha)^(1/(1-alpha)),
        // with C1 = gamma_2 at N=2 from the volume/perimeter upper bound.
        rec.name = "inradius_diam_good";
        rec.left = gamma * poly.diameter();
        rec.right = std::pow(R, alpha / (1.0 - alpha)) *
                    std::pow(per / std::pow(vol, alpha), 1.0 / (1.0 - alpha));
        rec.left_provenance = "C1 * diameter, C1 = gamma_2";
        rec.right_provenance = "R^(a/(1-a)) * (P/|Omega|^a)^(1/(1-a))";
    } else {
        // C2 * diam <= R^(-alpha/(alpha-1)) * (|Omega|^alpha/P)^(1/(alpha-1)),
        // with C2 = gamma_2 * N^(-alpha/(alpha-1)) from the lower bound.
        rec.name = "inradius_diam_bad";
        rec.left = gamma * std::pow(double(N), -alpha / (alpha - 1.0)) * poly.diameter();
        rec.right = std::pow(R, -alpha / (alpha - 1.0)) *
                    std::pow(std::pow(vol, alpha) / per, 1.0 / (alpha - 1.0));
        rec.left_provenance = "C2 * diameter, C2 = gamma_2 / 2^(a/(a-1))";
        rec.right_provenance = "R^(-a/(a-1)) * (|Omega|^a/P)^(1/(a-1))";
    }
    char pstr[32];
    std::snprintf(pstr, sizeof pstr, "%.6g", alpha);
    rec.polygon_id = std::string("alpha=") + pstr;
    return rec;
}

} // namespace polya
