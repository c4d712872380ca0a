#include <doctest.h>

#include <filesystem>

#include "polya/check_record.hpp"
#include "polya/io.hpp"
#include "polya/pde.hpp"
#include "polya/profile1d.hpp"
#include "polya/shapeopt.hpp"
#include "polya/svg.hpp"

using namespace polya;

TEST_CASE("polygon documents") {
    LoadedPolygon bare = parse_polygon("[[0,0],[1,0],[1,1],[0,1]]");
    CHECK(bare.polygon.area() == doctest::Approx(1.0));
    CHECK_FALSE(bare.reversed);
    LoadedPolygon object = parse_polygon(R"({"vertices": [[0,0],[2,0],[2,1],[0,1]]})");
    CHECK(object.polygon.area() == doctest::Approx(2.0));
    // clockwise input is reversed on load
    LoadedPolygon cw = parse_polygon("[[0,0],[0,1],[1,1],[1,0]]");
    CHECK(cw.reversed);
    CHECK(cw.polygon.area() == doctest::Approx(1.0));
    CHECK_THROWS_AS(parse_polygon("{\"points\": []}"), InvalidPolygon);
    CHECK_THROWS_AS(parse_polygon("[[0,0],[1,0],[1]]"), InvalidPolygon);
    CHECK_THROWS(parse_polygon("not json"));
    CHECK_THROWS_WITH_AS(load_polygon("definitely_missing.json"),
                         doctest::Contains("definitely_missing.json"), Error);
}

TEST_CASE("polygon round trip") {
    ConvexPolygon hex = make_regular_polygon(6, 1.25);
    const std::string doc = polygon_to_json(hex);
    LoadedPolygon back = parse_polygon(doc);
    REQUIRE(back.polygon.size() == hex.size());
    for (std::size_t i = 0; i < hex.size(); ++i) {
        CHECK(back.polygon.vertices()[i].x == hex.vertices()[i].x);
        CHECK(back.polygon.vertices()[i].y == hex.vertices()[i].y);
    }
}

TEST_CASE("check record semantics") {
    CheckRecord rec;
    rec.name = "demo";
    rec.left = 1.0;
    rec.right = 2.0;
    rec.strict = true;
    CHECK(rec.passed());
    CHECK(rec.ratio() == doctest::Approx(0.5));
    rec.left = 2.0;
    CHECK_FALSE(rec.passed()); // strict equality fails
    rec.strict = false;
    CHECK(rec.passed()); // non-strict tolerates the boundary
    rec.left = 2.0 + 1e-15;
    CHECK(rec.passed()); // and an ulp past it
    rec.left = 2.1;
    CHECK_FALSE(rec.passed());
}

TEST_CASE("csv and report writers") {
    CheckRecord rec;
    rec.name = "demo";
    rec.polygon_id = "square";
    rec.left = 1.0;
    rec.right = 4.0;
    rec.strict = true;
    rec.p = 2.0;
    const std::string csv = to_csv(std::vector<CheckRecord>{rec});
    CHECK(csv.find("name,polygon_id,p,q,h,left,right,ratio,strict,passed") != std::string::npos);
    CHECK(csv.find("demo,square,2,,") != std::string::npos); // q, h empty when absent
    const std::string report = to_report(rec);
    CHECK(report.find("check: demo") != std::string::npos);
    CHECK(report.find("passed: yes") != std::string::npos);

    DiscreteProfile u;
    u.values = {0.0, 0.5, 0.0};
    CHECK(profile_to_csv(u).rfind("t,u\n", 0) == 0);

    InnerParallelProfile prof = parallel_profile(make_unit_square(), 16);
    CHECK(profile_to_csv(prof).rfind("tau,xi,perim\n", 0) == 0);
}

TEST_CASE("mesh and field exports") {
    TriMesh mesh = triangulate(make_unit_square(), 0.5);
    MeshField u;
    u.values.assign(mesh.points.size(), 0.0);
    const std::string text = mesh_to_text(mesh);
    CHECK(text.find("nodes") == 0);
    CHECK(text.find("triangles") != std::string::npos);
    CHECK(field_to_csv(mesh, u).rfind("x,y,u\n", 0) == 0);
}

TEST_CASE("output header embeds version, command and seed") {
    const std::string header = file_header("polya check --seed 7", 7);
    CHECK(header.find("# polya 0.1.0") != std::string::npos);
    CHECK(header.find("# command: polya check --seed 7") != std::string::npos);
    CHECK(header.find("# seed: 7") != std::string::npos);
}

TEST_CASE("svg writers emit well-formed fragments") {
    const std::vector<double> x{1, 2, 5}, y{0.5, 0.8, 0.9};
    const std::string plot = svg_line_plot(x, y, "F(L)", "L", "F");
    CHECK(plot.find("<svg") == 0);
    CHECK(plot.find("<polyline") != std::string::npos);
    const std::vector<ConvexPolygon> polys{make_unit_square(), make_regular_polygon(6)};
    const std::vector<std::string> labels{"square", "hexagon"};
    const std::string shapes = svg_polygons(polys, labels, "shapes");
    CHECK(shapes.find("<polygon") != std::string::npos);
    CHECK(shapes.find("hexagon") != std::string::npos);
}

TEST_CASE("file writing") {
    const auto path = std::filesystem::temp_directory_path() / "polya_io_test" / "demo.txt";
    write_file(path, "contents\n");
    CHECK(std::filesystem::exists(path));
    std::filesystem::remove_all(path.parent_path());
}
