#include "polya/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "polya/check_record.hpp"
#include "polya/pde.hpp"
#include "polya/profile1d.hpp"
#include "polya/shapeopt.hpp"

namespace polya {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string opt_double(double x) { return std::isnan(x) ? std::string() : format_double(x); }

} // namespace

std::string to_csv(std::span<const CheckRecord> records) {
    std::ostringstream out;
    out << "name,polygon_id,p,q,h,left,right,ratio,strict,passed,left_provenance,right_provenance\n";
    for (const CheckRecord& r : records) {
        out << r.name << ',' << r.polygon_id << ',' << opt_double(r.p) << ',' << opt_double(r.q)
            << ',' << opt_double(r.h) << ',' << format_double(r.left) << ','
            << format_double(r.right) << ',' << format_double(r.ratio()) << ','
            << (r.strict ? 1 : 0) << ',' << (r.passed() ? 1 : 0) << ',' << r.left_provenance
            << ',' << r.right_provenance << '\n';
    }
    return out.str();
}

std::string to_report(const CheckRecord& r) {
    std::ostringstream out;
    out << "check: " << r.name << '\n';
    if (!r.polygon_id.empty()) out << "polygon: " << r.polygon_id << '\n';
    if (!std::isnan(r.p)) out << "p: " << format_double(r.p) << '\n';
    if (!std::isnan(r.q)) out << "q: " << format_double(r.q) << '\n';
    if (!std::isnan(r.h)) out << "h: " << format_double(r.h) << '\n';
    out << "left: " << format_double(r.left) << "  (" << r.left_provenance << ")\n";
    out << "right: " << format_double(r.right) << "  (" << r.right_provenance << ")\n";
    out << "ratio: " << format_double(r.ratio()) << '\n';
    out << "strict: " << (r.strict ? "yes" : "no") << '\n';
    out << "passed: " << (r.passed() ? "yes" : "no") << '\n';
    return out.str();
}

std::string profile_to_csv(const InnerParallelProfile& p) {
    std::ostringstream out;
    out << "tau,xi,perim\n";
    for (std::size_t i = 0; i < p.tau.size(); ++i)
        out << format_double(p.tau[i]) << ',' << format_double(p.xi[i]) << ','
            << format_double(p.perim[i]) << '\n';
    return out.str();
}

std::string profile_to_csv(const DiscreteProfile& u) {
    std::ostringstream out;
    out << "t,u\n";
    const int n = u.cells();
    for (int i = 0; i <= n; ++i)
        out << format_double(double(i) / n) << ','
            << format_double(u.values[static_cast<std::size_t>(i)]) << '\n';
    return out.str();
}

std::string trace_to_csv(const std::vector<double>& trace) {
    std::ostringstream out;
    out << "iteration,objective\n";
    for (std::size_t i = 0; i < trace.size(); ++i)
        out << i << ',' << format_double(trace[i]) << '\n';
    return out.str();
}

std::string mesh_to_text(const TriMesh& mesh) {
    std::ostringstream out;
    out << "nodes " << mesh.points.size() << '\n';
    for (std::size_t i = 0; i < mesh.points.size(); ++i)
        out << format_double(mesh.points[i].x) << ' ' << format_double(mesh.points[i].y) << ' '
            << int(mesh.on_boundary[i]) << '\n';
    out << "triangles " << mesh.triangles.size() << '\n';
    for (const auto& t : mesh.triangles) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    return out.str();
}

std::string field_to_csv(const TriMesh& mesh, const MeshField& u) {
    std::ostringstream out;
    out << "x,y,u\n";
    for (std::size_t i = 0; i < mesh.points.size(); ++i)
        out << format_double(mesh.points[i].x) << ',' << format_double(mesh.points[i].y) << ','
            << format_double(u.values[i]) << '\n';
    return out.str();
}

std::string estimate_to_report(const EigEstimate& e, const ExponentPair& pq) {
    std::ostringstream out;
    out << "exponents: " << pq.label() << '\n';
    out << "value: " << format_double(e.value) << '\n';
    out << "h: " << format_double(e.h) << '\n';
    if (e.mesh)
        out << "mesh: " << e.mesh->points.size() << " nodes, " << e.mesh->triangles.size()
            << " triangles, max edge " << format_double(e.mesh->max_edge) << '\n';
    out << "iterations: " << e.iterations << '\n';
    out << "starts: " << e.starts << '\n';
    out << "spread: " << format_double(e.spread) << (e.spread_flagged ? "  (flagged)" : "")
        << '\n';
    return out.str();
}

std::string sweep_to_csv(std::span<const ShapeFunctionalRecord> records) {
    std::ostringstream out;
    out << "p,q,volume,perimeter,lambda,F,h,iterations,spread\n";
    for (const auto& r : records)
        out << format_double(r.p) << ',' << format_double(r.q) << ',' << format_double(r.volume)
            << ',' << format_double(r.perimeter) << ',' << format_double(r.lambda) << ','
            << format_double(r.F) << ',' << format_double(r.h) << ',' << r.iterations << ','
            << format_double(r.spread) << '\n';
    return out.str();
}

std::string crossover_to_csv(std::span<const BallVsRectRow> rows) {
    std::ostringstream out;
    out << "q,F_disk,best_L,F_rect,rectangle_wins\n";
    for (const auto& r : rows)
        out << format_double(r.q) << ',' << format_double(r.F_disk) << ','
            << format_double(r.best_L) << ',' << format_double(r.F_rect) << ','
            << (r.rectangle_wins ? 1 : 0) << '\n';
    return out.str();
}

LoadedPolygon parse_polygon(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    const nlohmann::json* arr = &doc;
    if (doc.is_object()) {
        if (!doc.contains("vertices"))
            throw InvalidPolygon("polygon document lacks a \"vertices\" array");
        arr = &doc.at("vertices");
    }
    if (!arr->is_array()) throw InvalidPolygon("polygon document is not a vertex array");
    std::vector<Point> pts;
    pts.reserve(arr->size());
    for (const auto& row : *arr) {
        if (!row.is_array() || row.size() != 2)
            throw InvalidPolygon("each vertex must be a [x, y] pair");
        pts.push_back({row[0].get<double>(), row[1].get<double>()});
    }
    // Counterclockwise is enforced on load; clockwise input is reversed.
    double twice = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        twice += cross(pts[i], pts[(i + 1) % pts.size()]);
    bool reversed = false;
    if (twice < 0.0) {
        std::reverse(pts.begin(), pts.end());
        reversed = true;
    }
    return {ConvexPolygon(std::move(pts)), reversed};
}

LoadedPolygon load_polygon(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open polygon file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_polygon(ss.str());
}

std::string polygon_to_json(const ConvexPolygon& poly) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Point& p : poly.vertices()) arr.push_back({p.x, p.y});
    nlohmann::json doc;
    doc["vertices"] = std::move(arr);
    return doc.dump(2) + "\n";
}

void save_polygon(const std::filesystem::path& path, const ConvexPolygon& poly) {
    write_file(path, polygon_to_json(poly));
}

std::string file_header(std::string_view command_line, std::uint64_t seed) {
    std::ostringstream out;
    out << "# polya " << k_version << '\n';
    out << "# command: " << command_line << '\n';
    out << "# seed: " << seed << '\n';
    return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path.string());
    out << contents;
}

} // namespace polya
