#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diskbio/geometry.hpp"

namespace diskbio {

/// Structured triangulation of the disk of radius a. Level 0 is a hexagonal
/// fan of 6 triangles; each refinement quadrisects every triangle and projects
/// the new boundary-edge midpoints onto the circle. Vertices are append-only,
/// so level-l vertices keep their indices at level l+1.
struct TriangleMesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles; // counterclockwise
    std::vector<bool> boundary_vertex;
    double a = 1.0;
    int level = 0;

    int num_vertices() const { return int(vertices.size()); }
    int num_triangles() const { return int(triangles.size()); }

    std::array<Vec2, 3> tri_vertices(int t) const {
        const auto& tr = triangles[t];
        return {vertices[tr[0]], vertices[tr[1]], vertices[tr[2]]};
    }

    double tri_area(int t) const {
        auto v = tri_vertices(t);
        return 0.5 * cross(v[1] - v[0], v[2] - v[0]);
    }

    Vec2 tri_centroid(int t) const {
        auto v = tri_vertices(t);
        return (v[0] + v[1] + v[2]) * (1.0 / 3.0);
    }

    double total_area() const {
        double s = 0.0;
        for (int t = 0; t < num_triangles(); ++t) s += tri_area(t);
        return s;
    }

    double max_edge_length() const {
        double h = 0.0;
        for (const auto& tr : triangles)
            for (int e = 0; e < 3; ++e)
                h = std::max(h, (vertices[tr[e]] - vertices[tr[(e + 1) % 3]]).norm());
        return h;
    }

    std::vector<int> interior_vertices() const {
        std::vector<int> ids;
        for (int v = 0; v < num_vertices(); ++v)
            if (!boundary_vertex[v]) ids.push_back(v);
        return ids;
    }
};

inline TriangleMesh mesh_disk(double a, int level) {
    if (a <= 0.0) throw std::domain_error("mesh_disk: radius must be positive");
    if (level < 0) throw std::invalid_argument("mesh_disk: level >= 0");

    TriangleMesh mesh;
    mesh.a = a;
    mesh.vertices.push_back({0.0, 0.0});
    mesh.boundary_vertex.push_back(false);
    for (int k = 0; k < 6; ++k) {
        double th = k * std::numbers::pi / 3.0;
        mesh.vertices.push_back({a * std::cos(th), a * std::sin(th)});
        mesh.boundary_vertex.push_back(true);
    }
    for (int k = 0; k < 6; ++k) mesh.triangles.push_back({0, 1 + k, 1 + (k + 1) % 6});

    for (int lev = 0; lev < level; ++lev) {
        // count edge occurrences; an edge in exactly one triangle lies on the rim
        std::map<std::pair<int, int>, int> edge_count;
        for (const auto& tr : mesh.triangles)
            for (int e = 0; e < 3; ++e) {
                int i = tr[e], j = tr[(e + 1) % 3];
                edge_count[{std::min(i, j), std::max(i, j)}]++;
            }
        std::map<std::pair<int, int>, int> midpoint;
        auto mid_of = [&](int i, int j) {
            auto key = std::make_pair(std::min(i, j), std::max(i, j));
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            Vec2 m = (mesh.vertices[i] + mesh.vertices[j]) * 0.5;
            bool on_rim = edge_count[key] == 1;
            if (on_rim) m = m * (a / m.norm());
            int id = mesh.num_vertices();
            mesh.vertices.push_back(m);
            mesh.boundary_vertex.push_back(on_rim);
            midpoint[key] = id;
            return id;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(4 * mesh.triangles.size());
        for (const auto& tr : mesh.triangles) {
            int m01 = mid_of(tr[0], tr[1]);
            int m12 = mid_of(tr[1], tr[2]);
            int m20 = mid_of(tr[2], tr[0]);
            next.push_back({tr[0], m01, m20});
            next.push_back({m01, tr[1], m12});
            next.push_back({m20, m12, tr[2]});
            next.push_back({m01, m12, m20});
        }
        mesh.triangles = std::move(next);
    }
    mesh.level = level;
    return mesh;
}

/// Uniform-grid point locator. locate() returns the triangle containing the
/// point; locate_clamped() falls back to the nearest triangle and clamps the
/// barycentric coordinates, for quadrature nodes in the circle-polygon gap.
class PointLocator {
  public:
    explicit PointLocator(const TriangleMesh& mesh, int cells_per_axis = 0) : mesh_(&mesh) {
        n_ = cells_per_axis > 0
                 ? cells_per_axis
                 : std::max(4, int(std::sqrt(double(mesh.num_triangles()))));
        lo_ = -mesh.a;
        h_ = 2.0 * mesh.a / n_;
        bins_.resize(size_t(n_) * n_);
        for (int t = 0; t < mesh.num_triangles(); ++t) {
            auto v = mesh.tri_vertices(t);
            double x0 = std::min({v[0].x, v[1].x, v[2].x}), x1 = std::max({v[0].x, v[1].x, v[2].x});
            double y0 = std::min({v[0].y, v[1].y, v[2].y}), y1 = std::max({v[0].y, v[1].y, v[2].y});
            for (int i = cell(x0); i <= cell(x1); ++i)
                for (int j = cell(y0); j <= cell(y1); ++j) bins_[size_t(j) * n_ + i].push_back(t);
        }
    }

    struct Hit {
        int triangle = -1;
        std::array<double, 3> bary{};
    };

    Hit locate(const Vec2& p, double tol = 1e-12) const {
        int i = cell(p.x), j = cell(p.y);
        for (int t : bins_[size_t(j) * n_ + i]) {
            auto b = barycentric(t, p);
            if (b[0] >= -tol && b[1] >= -tol && b[2] >= -tol) return {t, b};
        }
        return {};
    }

    Hit locate_clamped(const Vec2& p) const {
        Hit h = locate(p);
        if (h.triangle >= 0) return h;
        // nearest triangle by least-negative barycentric deficit, search outward
        int ci = cell(p.x), cj = cell(p.y);
        double best = -1e300;
        for (int ring = 0; ring < n_ && h.triangle < 0; ++ring) {
            for (int j = std::max(0, cj - ring); j <= std::min(n_ - 1, cj + ring); ++j)
                for (int i = std::max(0, ci - ring); i <= std::min(n_ - 1, ci + ring); ++i) {
                    for (int t : bins_[size_t(j) * n_ + i]) {
                        auto b = barycentric(t, p);
                        double deficit = std::min({b[0], b[1], b[2]});
                        if (deficit > best) {
                            best = deficit;
                            h.triangle = t;
                            h.bary = b;
                        }
                    }
                }
            if (h.triangle >= 0) break;
        }
        if (h.triangle < 0) throw std::runtime_error("point location failed");
        double s = 0.0;
        for (auto& b : h.bary) {
            b = std::max(b, 0.0);
            s += b;
        }
        for (auto& b : h.bary) b /= s;
        return h;
    }

  private:
    int cell(double x) const {
        int i = int((x - lo_) / h_);
        return std::min(std::max(i, 0), n_ - 1);
    }

    std::array<double, 3> barycentric(int t, const Vec2& p) const {
        auto v = mesh_->tri_vertices(t);
        double det = cross(v[1] - v[0], v[2] - v[0]);
        double b1 = cross(p - v[0], v[2] - v[0]) / det;
        double b2 = cross(v[1] - v[0], p - v[0]) / det;
        return {1.0 - b1 - b2, b1, b2};
    }

    const TriangleMesh* mesh_;
    int n_ = 0;
    double lo_ = 0.0, h_ = 0.0;
    std::vector<std::vector<int>> bins_;
};

} // namespace diskbio
