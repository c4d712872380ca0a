#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "polya/geometry.hpp"

using namespace polya;

namespace {

ConvexPolygon triangle_345() { return ConvexPolygon({{0, 0}, {4, 0}, {0, 3}}); }

} // namespace

TEST_CASE("polygon validation") {
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}}), InvalidPolygon);
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), InvalidPolygon); // clockwise
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}, {2, 0}}), InvalidPolygon); // collinear
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), InvalidPolygon); // duplicate
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {2, 0}, {2, 2}, {1, 0.5}, {0, 2}}),
                    InvalidPolygon); // reflex vertex
    // A straight (180 degree) vertex is allowed.
    ConvexPolygon straight({{0, 0}, {0.5, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(straight.area() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(straight.perimeter() == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("area of reference polygons") {
    CHECK(make_unit_square().area() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ConvexPolygon({{0, 0}, {1, 0}, {0, 1}}).area() == doctest::Approx(0.5).epsilon(1e-14));
    // regular hexagon, circumradius 1: shoelace by hand gives 3 sqrt(3) / 2
    CHECK(make_regular_polygon(6).area() ==
          doctest::Approx(2.598076211353316).epsilon(1e-12));
}

TEST_CASE("perimeter of reference polygons") {
    CHECK(make_unit_square().perimeter() == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(make_rectangle(10, 1).perimeter() == doctest::Approx(22.0).epsilon(1e-14));
    CHECK(make_regular_polygon(6).perimeter() == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("inradius by offset bisection") {
    CHECK(make_unit_square().inradius() == doctest::Approx(0.5).epsilon(1e-10));
    ConvexPolygon equilateral({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}});
    CHECK(equilateral.inradius() ==
          doctest::Approx(0.28867513459481287).epsilon(1e-9)); // side/(2 sqrt 3)
    CHECK(make_rectangle(7, 1).inradius() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(triangle_345().inradius() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("diameter from vertex pairs") {
    CHECK(make_unit_square().diameter() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(make_rectangle(5, 1).diameter() == doctest::Approx(std::sqrt(26.0)).epsilon(1e-14));
    CHECK(make_regular_polygon(6).diameter() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("inner parallel of the square") {
    auto inner = make_unit_square().inner_parallel(0.25);
    REQUIRE(inner.has_value());
    CHECK(inner->area() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(inner->perimeter() == doctest::Approx(2.0).epsilon(1e-12));
    for (const Point& v : inner->vertices()) {
        CHECK(std::min(std::fabs(v.x - 0.25), std::fabs(v.x - 0.75)) < 1e-12);
        CHECK(std::min(std::fabs(v.y - 0.25), std::fabs(v.y - 0.75)) < 1e-12);
    }
    CHECK_FALSE(make_unit_square().inner_parallel(0.5).has_value());
    CHECK_FALSE(make_unit_square().inner_parallel(0.7).has_value());
    CHECK_THROWS_AS(make_unit_square().inner_parallel(-0.1), std::invalid_argument);
}

TEST_CASE("inner parallel of a triangle matches the similarity oracle") {
    // 3-4-5 triangle has inradius 1; the offset by tau is similar with
    // ratio (1 - tau), so area scales by its square.
    ConvexPolygon tri = triangle_345();
    for (double tau : {0.25, 0.5, 0.75}) {
        auto inner = tri.inner_parallel(tau);
        REQUIRE(inner.has_value());
        CHECK(inner->area() == doctest::Approx(6.0 * (1 - tau) * (1 - tau)).epsilon(1e-9));
        CHECK(inner->perimeter() == doctest::Approx(12.0 * (1 - tau)).epsilon(1e-9));
    }
}

TEST_CASE("parallel profile of the square follows the closed forms") {
    InnerParallelProfile prof = parallel_profile(make_unit_square(), 64);
    CHECK(prof.inradius == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(prof.tau.front() == 0.0);
    CHECK(prof.xi.front() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(prof.perim.front() == doctest::Approx(4.0).epsilon(1e-12));
    for (std::size_t j = 0; j + 1 < prof.tau.size(); ++j) {
        const double t = prof.tau[j];
        CHECK(prof.xi[j] == doctest::Approx((1 - 2 * t) * (1 - 2 * t)).epsilon(1e-9));
        CHECK(prof.perim[j] == doctest::Approx(4 * (1 - 2 * t)).epsilon(1e-9));
    }
    CHECK(prof.xi.back() == 0.0);
    CHECK(prof.tau.back() == doctest::Approx(prof.inradius).epsilon(1e-14));
    CHECK(prof.finite_difference_defect() < 1e-7);
    CHECK(prof.coarea_integral() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(parallel_profile(make_unit_square(), 8), std::invalid_argument);
}

TEST_CASE("profile tables are monotone and coarea-consistent") {
    auto corpus_poly = [](int k) {
        return make_regular_polygon(k, 1.0);
    };
    for (int k : {5, 7, 64}) {
        ConvexPolygon poly = corpus_poly(k);
        InnerParallelProfile prof = parallel_profile(poly, 128);
        for (std::size_t j = 0; j + 1 < prof.xi.size(); ++j) {
            CHECK(prof.xi[j + 1] < prof.xi[j]);      // strictly decreasing
            CHECK(prof.perim[j + 1] <= prof.perim[j]); // exact half-plane geometry
        }
        CHECK(prof.coarea_integral() ==
              doctest::Approx(poly.area()).epsilon(1e-3));
        CHECK(prof.finite_difference_defect() < 0.05 * poly.perimeter());
    }
}

TEST_CASE("disk-approximating 64-gon profile tracks the disk formula") {
    ConvexPolygon disk = make_regular_polygon(64);
    InnerParallelProfile prof = parallel_profile(disk, 64);
    for (std::size_t j = 0; j < prof.tau.size(); ++j) {
        const double want = M_PI * (1 - prof.tau[j]) * (1 - prof.tau[j]);
        CHECK(std::fabs(prof.xi[j] - want) < 0.01 * M_PI);
    }
}

TEST_CASE("inner parallels are nested") {
    // Containment of the deeper offset in the shallower one, vertex by vertex.
    for (int k : {5, 6, 8, 12}) {
        ConvexPolygon poly = make_regular_polygon(k, 1.3);
        const double R = poly.inradius();
        for (double f1 : {0.1, 0.4}) {
            for (double f2 : {0.55, 0.8}) {
                auto outer = poly.inner_parallel(f1 * R);
                auto inner = poly.inner_parallel(f2 * R);
                REQUIRE(outer.has_value());
                REQUIRE(inner.has_value());
                for (const Point& v : inner->vertices())
                    CHECK(outer->contains(v, 1e-9 * poly.scale()));
            }
        }
    }
}

TEST_CASE("slab quantities") {
    ModelBody s = slab_box(10, 2);
    CHECK(s.volume == doctest::Approx(10.0));
    CHECK(s.perimeter == doctest::Approx(22.0));
    CHECK(s.inradius == doctest::Approx(0.5));
    ModelBody s3 = slab_box(2, 3);
    CHECK(s3.volume == doctest::Approx(4.0));
    CHECK(s3.perimeter == doctest::Approx(16.0));
    CHECK(slab_box(0.4, 2).inradius == doctest::Approx(0.2));
    // closed forms match the polygon computations at N = 2
    ConvexPolygon rect = make_rectangle(10, 1);
    CHECK(rect.area() == doctest::Approx(s.volume).epsilon(1e-12));
    CHECK(rect.perimeter() == doctest::Approx(s.perimeter).epsilon(1e-12));
    CHECK(rect.inradius() == doctest::Approx(s.inradius).epsilon(1e-9));
    CHECK(rect.diameter() == doctest::Approx(s.diameter).epsilon(1e-12));
}

TEST_CASE("unit ball volumes") {
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(unit_ball_volume(2) == doctest::Approx(M_PI).epsilon(1e-14));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-14));
}

TEST_CASE("cone quantities") {
    // inradius formula: sin(a)/(1 + sin(a)) is 1/3 at a = pi/6, any dimension
    CHECK(cone_body(M_PI / 6, 2).inradius == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(cone_body(M_PI / 6, 3).inradius == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    // planar cone is a circular sector: area = alpha (half-opening, unit radius)
    const double alpha = M_PI / 4;
    CHECK(cone_body(alpha, 2).volume == doctest::Approx(alpha).epsilon(1e-9));
    CHECK(cone_body(0.3, 2).volume == doctest::Approx(0.3).epsilon(1e-9));
    // sharpness of the lower volume/perimeter bound along shrinking cones
    for (int N : {2, 3}) {
        ModelBody c = cone_body(1e-3, N);
        const double ratio = c.volume / (c.inradius * c.perimeter);
        CHECK(std::fabs(ratio - 1.0 / N) < 0.01 / N);
    }
    CHECK_THROWS_AS(cone_body(0.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(cone_body(2.0, 2), std::invalid_argument);
}

TEST_CASE("volume/perimeter within inradius bounds") {
    SUBCASE("ball attains the lower bound exactly") {
        for (int N : {2, 3}) {
            auto recs = makai_check(ball_body(1.0, N));
            CHECK(recs[0].passed());
            CHECK(recs[0].ratio() == doctest::Approx(1.0).epsilon(1e-12)); // tight
            CHECK(recs[1].passed());
        }
    }
    SUBCASE("long rectangle approaches the upper bound") {
        auto recs = makai_check(make_rectangle(50, 1));
        CHECK(recs[1].passed());
        CHECK(recs[1].ratio() == doctest::Approx(50.0 / (0.5 * 102.0)).epsilon(1e-6));
    }
    SUBCASE("thin cone approaches the lower bound") {
        auto recs = makai_check(cone_body(1e-3, 2));
        CHECK(recs[0].passed());
        CHECK(recs[0].ratio() == doctest::Approx(1.0).epsilon(0.01));
    }
    SUBCASE("strict upper bound on polygons") {
        for (int k : {3, 4, 5, 6, 8, 16}) {
            auto recs = makai_check(make_regular_polygon(k, 0.8));
            CHECK(recs[0].passed());
            CHECK(recs[1].passed());
            CHECK(recs[1].left < recs[1].right); // strict
        }
    }
}

TEST_CASE("diameter bound") {
    CHECK(diam_bound_gamma(2) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
    CheckRecord sq = diam_bound_check(make_unit_square());
    CHECK(sq.left == doctest::Approx(0.8660254037844386 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(sq.right == doctest::Approx(4.0));
    CHECK(sq.passed());
    CheckRecord rect = diam_bound_check(make_rectangle(100, 1));
    CHECK(rect.left == doctest::Approx(0.8660254037844386 * std::sqrt(10001.0)).epsilon(1e-12));
    CHECK(rect.right == doctest::Approx(202.0));
    CHECK(rect.passed());
}

TEST_CASE("inradius/diameter estimate") {
    CHECK_THROWS_AS(inradius_diam_check(make_unit_square(), 1.0), BorderlineExponent);
    CHECK_THROWS_AS(inradius_diam_check(make_unit_square(), 0.4), std::invalid_argument);
    for (double alpha : {0.75, 0.9}) {
        CheckRecord a = inradius_diam_check(make_unit_square(), alpha);
        CHECK(a.passed());
        CHECK(a.ratio() < 1.0); // slack recorded
        CheckRecord b = inradius_diam_check(make_rectangle(50, 1), alpha);
        CHECK(b.passed());
    }
    CheckRecord bad = inradius_diam_check(make_unit_square(), 1.5);
    CHECK(bad.passed());
    CHECK(bad.name == "inradius_diam_bad");
}

TEST_CASE("check ratios are scale invariant") {
    ConvexPolygon base = make_regular_polygon(7, 1.1);
    auto m0 = makai_check(base);
    auto d0 = diam_bound_check(base);
    auto i0 = inradius_diam_check(base, 0.75);
    auto i1 = inradius_diam_check(base, 1.5);
    for (double t : {0.5, 3.0}) {
        ConvexPolygon scaled = base.scaled(t);
        auto mt = makai_check(scaled);
        CHECK(mt[0].ratio() == doctest::Approx(m0[0].ratio()).epsilon(1e-12));
        CHECK(mt[1].ratio() == doctest::Approx(m0[1].ratio()).epsilon(1e-12));
        CHECK(diam_bound_check(scaled).ratio() == doctest::Approx(d0.ratio()).epsilon(1e-12));
        CHECK(inradius_diam_check(scaled, 0.75).ratio() ==
              doctest::Approx(i0.ratio()).epsilon(1e-12));
        CHECK(inradius_diam_check(scaled, 1.5).ratio() ==
              doctest::Approx(i1.ratio()).epsilon(1e-12));
    }
}
