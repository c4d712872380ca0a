#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "polya/pde.hpp"

namespace polya {

namespace {

double tri_area(const Point& a, const Point& b, const Point& c) {
    return 0.5 * cross(b - a, c - a);
}

double longest_edge(const TriMesh& m) {
    double best = 0.0;
    for (const auto& t : m.triangles) {
        const Point& a = m.points[static_cast<std::size_t>(t[0])];
        const Point& b = m.points[static_cast<std::size_t>(t[1])];
        const Point& c = m.points[static_cast<std::size_t>(t[2])];
        best = std::max({best, distance(a, b), distance(b, c), distance(c, a)});
    }
    return best;
}

std::uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

} // namespace

double TriMesh::total_area() const {
    double sum = 0.0;
    for (const auto& t : triangles)
        sum += tri_area(points[static_cast<std::size_t>(t[0])],
                        points[static_cast<std::size_t>(t[1])],
                        points[static_cast<std::size_t>(t[2])]);
    return sum;
}

std::size_t TriMesh::interior_count() const {
    std::size_t n = 0;
    for (std::uint8_t b : on_boundary) n += (b == 0);
    return n;
}

MeshHierarchy triangulate_hierarchy(const ConvexPolygon& poly, double h,
                                    std::size_t node_budget) {
    if (!(h > 0.0)) throw std::invalid_argument("triangulate: h must be positive");
    const auto& verts = poly.vertices();
    const std::size_t k = verts.size();

    TriMesh base;
    base.points = verts;
    Point centroid{0.0, 0.0};
    for (const Point& p : verts) centroid = centroid + p;
    centroid = (1.0 / static_cast<double>(k)) * centroid;
    base.points.push_back(centroid);
    base.on_boundary.assign(k + 1, 1);
    base.on_boundary[k] = 0;
    for (std::size_t i = 0; i < k; ++i)
        base.triangles.push_back({static_cast<int>(i), static_cast<int>((i + 1) % k),
                                  static_cast<int>(k)});
    base.target_h = h;
    base.max_edge = longest_edge(base);
    base.levels = 0;

    MeshHierarchy hier;
    hier.levels.push_back(std::move(base));
    hier.parents.emplace_back(); // level 0 has no parents

    while (hier.levels.back().max_edge > h) {
        const TriMesh& prev = hier.levels.back();
        // Edge occurrence counts decide which midpoints sit on the boundary.
        std::unordered_map<std::uint64_t, int> edge_count;
        edge_count.reserve(prev.triangles.size() * 3);
        for (const auto& t : prev.triangles)
            for (int e = 0; e < 3; ++e) edge_count[edge_key(t[e], t[(e + 1) % 3])]++;

        const std::size_t new_nodes = edge_count.size();
        if (prev.points.size() + new_nodes > node_budget)
            throw BudgetExceeded("triangulate: node budget exceeded before reaching target h");

        TriMesh next;
        next.points = prev.points;
        next.on_boundary = prev.on_boundary;
        next.target_h = h;
        std::vector<std::array<int, 2>> parents(prev.points.size());
        for (std::size_t i = 0; i < prev.points.size(); ++i)
            parents[i] = {static_cast<int>(i), static_cast<int>(i)};

        std::unordered_map<std::uint64_t, int> midpoint;
        midpoint.reserve(new_nodes);
        auto midpoint_of = [&](int a, int b) {
            const std::uint64_t key = edge_key(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            const Point& pa = next.points[static_cast<std::size_t>(a)];
            const Point& pb = next.points[static_cast<std::size_t>(b)];
            const int id = static_cast<int>(next.points.size());
            next.points.push_back({0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)});
            const bool on_bnd = prev.on_boundary[static_cast<std::size_t>(a)] &&
                                prev.on_boundary[static_cast<std::size_t>(b)] &&
                                edge_count.at(key) == 1;
            next.on_boundary.push_back(on_bnd ? 1 : 0);
            parents.push_back({std::min(a, b), std::max(a, b)});
            midpoint.emplace(key, id);
            return id;
        };

        next.triangles.reserve(prev.triangles.size() * 4);
        for (const auto& t : prev.triangles) {
            const int m01 = midpoint_of(t[0], t[1]);
            const int m12 = midpoint_of(t[1], t[2]);
            const int m20 = midpoint_of(t[2], t[0]);
            next.triangles.push_back({t[0], m01, m20});
            next.triangles.push_back({m01, t[1], m12});
            next.triangles.push_back({m20, m12, t[2]});
            next.triangles.push_back({m01, m12, m20});
        }
        next.max_edge = 0.5 * prev.max_edge;
        next.levels = prev.levels + 1;
        hier.levels.push_back(std::move(next));
        hier.parents.push_back(std::move(parents));
    }
    return hier;
}

TriMesh triangulate(const ConvexPolygon& poly, double h, std::size_t node_budget) {
    MeshHierarchy hier = triangulate_hierarchy(poly, h, node_budget);
    return std::move(hier.levels.back());
}

} // namespace polya
