#include "rtlab/mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace rtlab {

int Mesh::n_boundary_edges() const {
    int n = 0;
    for (const auto& e : edge)
        if (e.boundary()) ++n;
    return n;
}

int Mesh::local_edge(int t, int e) const {
    for (int k = 0; k < 3; ++k)
        if (tri_edge[t][k] == e) return k;
    throw std::logic_error("local_edge: edge not incident to triangle");
}

double Mesh::max_diameter() const {
    double h = 0.0;
    for (int e = 0; e < n_edges(); ++e) h = std::max(h, edge_length(e));
    return h;
}

Mesh Mesh::build(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles) {
    Mesh m;
    m.vertex = std::move(vertices);
    m.tri = std::move(triangles);
    m.tri_edge.assign(m.tri.size(), {-1, -1, -1});
    m.tri_edge_sign.assign(m.tri.size(), {0, 0, 0});

    std::map<std::pair<int, int>, int> index;
    for (int t = 0; t < m.n_triangles(); ++t) {
        for (int k = 0; k < 3; ++k) {
            const int a = m.tri[t][(k + 1) % 3];
            const int b = m.tri[t][(k + 2) % 3];
            const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
            auto it = index.find(key);
            int e;
            if (it == index.end()) {
                e = m.n_edges();
                index.emplace(key, e);
                m.edge.push_back({key.first, key.second, t, -1});
            } else {
                e = it->second;
                if (m.edge[e].tri1 >= 0)
                    throw std::runtime_error("Mesh::build: edge shared by more than two triangles");
                m.edge[e].tri1 = t;
            }
            m.tri_edge[t][k] = e;
            // local traversal a -> b vs global v0 -> v1
            m.tri_edge_sign[t][k] = (a == m.edge[e].v0) ? 1 : -1;
        }
    }
    m.validate();
    return m;
}

void Mesh::validate() const {
    for (int t = 0; t < n_triangles(); ++t) {
        const auto& v = tri[t];
        if (v[0] < 0 || v[0] >= n_vertices() || v[1] < 0 || v[1] >= n_vertices() || v[2] < 0 ||
            v[2] >= n_vertices())
            throw std::runtime_error("mesh: vertex index out of range in triangle " +
                                     std::to_string(t));
        if (!(signed_area(vertex[v[0]], vertex[v[1]], vertex[v[2]]) > 0.0))
            throw std::runtime_error("mesh: triangle " + std::to_string(t) +
                                     " is degenerate or not counterclockwise");
    }
    if (n_vertices() - n_edges() + n_triangles() != 1)
        throw std::runtime_error("mesh: Euler relation V - E + T = 1 violated");
    for (int e = 0; e < n_edges(); ++e) {
        if (edge[e].tri0 < 0)
            throw std::runtime_error("mesh: edge without adjacent triangle");
        if (!edge[e].boundary()) {
            const int t0 = edge[e].tri0, t1 = edge[e].tri1;
            const int k0 = local_edge(t0, e), k1 = local_edge(t1, e);
            if (tri_edge_sign[t0][k0] + tri_edge_sign[t1][k1] != 0)
                throw std::runtime_error("mesh: interior edge signs do not oppose");
        }
    }
}

namespace {

Mesh build_grid(int n, const std::function<bool(int, int)>& diag_nw_to_se) {
    std::vector<Vec2> v;
    v.reserve((n + 1) * (n + 1));
    const double h = 1.0 / n;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) v.push_back({i * h, j * h});
    auto id = [n](int i, int j) { return j * (n + 1) + i; };

    std::vector<std::array<int, 3>> tris;
    tris.reserve(2 * n * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const int v00 = id(i, j), v10 = id(i + 1, j);
            const int v01 = id(i, j + 1), v11 = id(i + 1, j + 1);
            if (diag_nw_to_se(i, j)) {
                // diagonal v10 -- v01
                tris.push_back({v00, v10, v01});
                tris.push_back({v10, v11, v01});
            } else {
                // diagonal v00 -- v11
                tris.push_back({v00, v10, v11});
                tris.push_back({v00, v11, v01});
            }
        }
    return Mesh::build(std::move(v), std::move(tris));
}

}  // namespace

Mesh generate_uniform(int n) {
    if (n < 1) throw std::invalid_argument("generate_uniform: n must be >= 1");
    return build_grid(n, [](int, int) { return false; });
}

Mesh generate_piecewise_uniform(int n) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("generate_piecewise_uniform: n must be even and >= 2");
    const int half = n / 2;
    return build_grid(n, [half](int i, int j) {
        const int qi = i / half, qj = j / half;
        return (qi + qj) % 2 == 1;
    });
}

Mesh generate_perturbed(int n, double alpha, double amplitude, std::uint64_t seed) {
    Mesh m = generate_uniform(n);
    if (amplitude == 0.0) return m;
    if (amplitude < 0.0) throw std::invalid_argument("generate_perturbed: amplitude must be >= 0");

    const double h = 1.0 / n;
    const double radius = amplitude * std::pow(h, 1.0 + alpha);
    std::mt19937_64 rng(seed);
    auto u01 = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };

    for (auto& p : m.vertex) {
        const bool interior =
            p.x > 0.5 * h && p.x < 1.0 - 0.5 * h && p.y > 0.5 * h && p.y < 1.0 - 0.5 * h;
        const double phi = 2.0 * M_PI * u01();
        const double r = radius * u01();
        if (!interior) continue;  // boundary vertices stay (rng still advances per vertex)
        p += Vec2{r * std::cos(phi), r * std::sin(phi)};
    }
    for (int t = 0; t < m.n_triangles(); ++t) {
        const auto& v = m.tri[t];
        if (!(signed_area(m.vertex[v[0]], m.vertex[v[1]], m.vertex[v[2]]) > 0.0))
            throw std::runtime_error(
                "generate_perturbed: displacement inverted triangle " + std::to_string(t) +
                "; reduce amplitude");
    }
    return m;
}

Mesh refine_regular(const Mesh& mesh) {
    std::vector<Vec2> v = mesh.vertex;
    v.reserve(v.size() + mesh.n_edges());
    for (int e = 0; e < mesh.n_edges(); ++e) v.push_back(mesh.edge_midpoint(e));
    auto mid = [&mesh](int t, int a, int b) {
        // midpoint vertex of the edge {a,b} of triangle t
        for (int k = 0; k < 3; ++k) {
            const int e = mesh.tri_edge[t][k];
            const auto& ed = mesh.edge[e];
            if ((ed.v0 == std::min(a, b)) && (ed.v1 == std::max(a, b)))
                return mesh.n_vertices() + e;
        }
        throw std::logic_error("refine_regular: edge lookup failed");
    };

    std::vector<std::array<int, 3>> tris;
    tris.reserve(4 * mesh.n_triangles());
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const auto [a, b, c] = mesh.tri[t];
        const int mab = mid(t, a, b), mbc = mid(t, b, c), mca = mid(t, c, a);
        tris.push_back({a, mab, mca});
        tris.push_back({b, mbc, mab});
        tris.push_back({c, mca, mbc});
        tris.push_back({mab, mbc, mca});
    }
    return Mesh::build(std::move(v), std::move(tris));
}

Mesh read_mesh(std::istream& in) {
    int nv = 0, ne = 0, nt = 0;
    if (!(in >> nv >> ne >> nt)) throw std::runtime_error("mesh file: bad header");
    std::vector<Vec2> v(nv);
    for (int i = 0; i < nv; ++i)
        if (!(in >> v[i].x >> v[i].y))
            throw std::runtime_error("mesh file: bad vertex line " + std::to_string(i));
    std::vector<std::array<int, 3>> tris(nt);
    for (int t = 0; t < nt; ++t)
        if (!(in >> tris[t][0] >> tris[t][1] >> tris[t][2]))
            throw std::runtime_error("mesh file: bad triangle line " + std::to_string(t));
    Mesh m = Mesh::build(std::move(v), std::move(tris));
    if (m.n_edges() != ne)
        throw std::runtime_error("mesh file: header edge count does not match derived edges");
    return m;
}

Mesh read_mesh_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open mesh file: " + path);
    return read_mesh(in);
}

void write_mesh(const Mesh& mesh, std::ostream& out) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d %d %d\n", mesh.n_vertices(), mesh.n_edges(),
                  mesh.n_triangles());
    out << buf;
    for (const auto& p : mesh.vertex) {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", p.x, p.y);
        out << buf;
    }
    for (const auto& t : mesh.tri) {
        std::snprintf(buf, sizeof(buf), "%d %d %d\n", t[0], t[1], t[2]);
        out << buf;
    }
}

void write_mesh_file(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output mesh file: " + path);
    write_mesh(mesh, out);
}

}  // namespace rtlab
