#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rtlab/geometry.hpp"

namespace rtlab {

/// Edge endpoints are stored with v0 < v1; the global tangent runs v0 -> v1
/// and the global normal is the tangent rotated -pi/2.
struct MeshEdge {
    int v0 = -1;
    int v1 = -1;
    int tri0 = -1;
    int tri1 = -1;  // -1 on boundary edges

    bool boundary() const { return tri1 < 0; }
};

/// Immutable conforming triangulation of a simply connected polygon.
struct Mesh {
    std::vector<Vec2> vertex;
    std::vector<std::array<int, 3>> tri;            // CCW vertex indices
    std::vector<MeshEdge> edge;
    std::vector<std::array<int, 3>> tri_edge;       // global edge of local edge k (opposite vertex k)
    std::vector<std::array<int, 3>> tri_edge_sign;  // +1 iff outward normal == global normal

    int n_vertices() const { return static_cast<int>(vertex.size()); }
    int n_triangles() const { return static_cast<int>(tri.size()); }
    int n_edges() const { return static_cast<int>(edge.size()); }
    int n_boundary_edges() const;
    int n_interior_edges() const { return n_edges() - n_boundary_edges(); }

    TriangleGeometry geometry(int t) const {
        return triangle_geometry(vertex[tri[t][0]], vertex[tri[t][1]], vertex[tri[t][2]]);
    }
    double edge_length(int e) const { return norm(vertex[edge[e].v1] - vertex[edge[e].v0]); }
    Vec2 edge_midpoint(int e) const { return 0.5 * (vertex[edge[e].v0] + vertex[edge[e].v1]); }
    Vec2 edge_tangent(int e) const {
        return (vertex[edge[e].v1] - vertex[edge[e].v0]) / edge_length(e);
    }
    Vec2 edge_normal(int e) const { return rot90cw(edge_tangent(e)); }
    /// Triangle adjacent to e other than t (-1 on boundary).
    int neighbor(int e, int t) const { return edge[e].tri0 == t ? edge[e].tri1 : edge[e].tri0; }
    /// Local index of global edge e within triangle t.
    int local_edge(int t, int e) const;

    /// Longest edge in the mesh (the mesh size h).
    double max_diameter() const;

    /// Checks CCW orientation, edge adjacency counts, the Euler relation and
    /// interior-edge sign opposition; throws std::runtime_error on violation.
    void validate() const;

    /// Derives edges and incidence from vertices + triangles.
    static Mesh build(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles);
};

/// n x n squares on the unit square, each split by the same diagonal.
Mesh generate_uniform(int n);

/// Four quadrant blocks of (n/2) x (n/2) squares with the diagonal direction
/// alternating between adjacent quadrants. n must be even.
Mesh generate_piecewise_uniform(int n);

/// Uniform mesh with interior vertices displaced by deterministic pseudo-random
/// vectors of magnitude <= amplitude * (1/n)^(1+alpha). Boundary vertices stay.
Mesh generate_perturbed(int n, double alpha, double amplitude, std::uint64_t seed);

/// Red refinement: every triangle split into 4 via edge midpoints.
Mesh refine_regular(const Mesh& mesh);

/// Plain-text format: "V E T" header, V lines "x y", T lines "i j k" (0-based, CCW).
Mesh read_mesh(std::istream& in);
Mesh read_mesh_file(const std::string& path);
void write_mesh(const Mesh& mesh, std::ostream& out);
void write_mesh_file(const Mesh& mesh, const std::string& path);

}  // namespace rtlab
