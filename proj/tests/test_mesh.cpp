#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rtlab/mesh.hpp"
#include "rtlab/utils.hpp"

using namespace rtlab;

namespace {

// triangles as sorted multisets of sorted vertex coordinates, for
// renumbering-independent comparison
std::vector<std::array<double, 6>> triangle_soup(const Mesh& m) {
    std::vector<std::array<double, 6>> soup;
    for (const auto& t : m.tri) {
        std::array<std::pair<double, double>, 3> pts;
        for (int k = 0; k < 3; ++k) pts[k] = {m.vertex[t[k]].x, m.vertex[t[k]].y};
        std::sort(pts.begin(), pts.end());
        soup.push_back({pts[0].first, pts[0].second, pts[1].first, pts[1].second, pts[2].first,
                        pts[2].second});
    }
    std::sort(soup.begin(), soup.end());
    return soup;
}

bool soup_close(const std::vector<std::array<double, 6>>& a,
                const std::vector<std::array<double, 6>>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        for (int j = 0; j < 6; ++j)
            if (std::abs(a[i][j] - b[i][j]) > 1e-14) return false;
    return true;
}

}  // namespace

TEST_CASE("uniform grid counts") {
    SUBCASE("smallest mesh") {
        const Mesh m = generate_uniform(1);
        CHECK(m.n_vertices() == 4);
        CHECK(m.n_triangles() == 2);
        CHECK(m.n_edges() == 5);
        CHECK(m.n_vertices() - m.n_edges() + m.n_triangles() == 1);
    }
    SUBCASE("unknown counts of the mixed method") {
        const Mesh m8 = generate_uniform(8);
        CHECK(m8.n_edges() == 208);
        CHECK(m8.n_triangles() == 128);
        CHECK(m8.n_edges() + m8.n_triangles() == 336);
        const Mesh m16 = generate_uniform(16);
        CHECK(m16.n_edges() + m16.n_triangles() == 1312);
    }
    SUBCASE("formulas for general n") {
        for (int n : {2, 3, 5}) {
            const Mesh m = generate_uniform(n);
            CHECK(m.n_vertices() == (n + 1) * (n + 1));
            CHECK(m.n_triangles() == 2 * n * n);
            CHECK(m.n_edges() == 3 * n * n + 2 * n);
        }
    }
    CHECK_THROWS_AS(generate_uniform(0), std::invalid_argument);
}

TEST_CASE("regular refinement counts and equivalence with the finer grid") {
    const Mesh coarse = generate_uniform(8);
    const Mesh fine = refine_regular(coarse);
    CHECK(fine.n_vertices() == coarse.n_vertices() + coarse.n_edges());  // 289
    CHECK(fine.n_triangles() == 4 * coarse.n_triangles());               // 512
    CHECK(fine.n_edges() == 2 * coarse.n_edges() + 3 * coarse.n_triangles());  // 800
    CHECK(fine.n_vertices() == 289);
    CHECK(fine.n_edges() == 800);
    CHECK(soup_close(triangle_soup(fine), triangle_soup(generate_uniform(16))));
}

TEST_CASE("refining one triangle gives four children of a quarter area") {
    const Mesh one = Mesh::build({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
    const Mesh four = refine_regular(one);
    REQUIRE(four.n_triangles() == 4);
    for (int t = 0; t < 4; ++t)
        CHECK(four.geometry(t).area == doctest::Approx(0.125).epsilon(1e-14));
}

TEST_CASE("piecewise uniform grid") {
    CHECK_THROWS_AS(generate_piecewise_uniform(7), std::invalid_argument);
    const Mesh tiny = generate_piecewise_uniform(2);
    CHECK(tiny.n_triangles() == 8);
    const Mesh m = generate_piecewise_uniform(8);
    CHECK(m.n_edges() + m.n_triangles() == 336);
    CHECK(m.n_vertices() - m.n_edges() + m.n_triangles() == 1);
    // adjacent quadrants carry different diagonal directions: the two cells
    // across the vertical midline have diagonals of opposite slope
    int up = 0, down = 0;
    for (int t = 0; t < m.n_triangles(); ++t) {
        const TriangleGeometry g = m.geometry(t);
        for (int k = 0; k < 3; ++k)
            if (std::abs(std::abs(g.tangent[k].x) - std::abs(g.tangent[k].y)) < 1e-12) {
                if (g.tangent[k].x * g.tangent[k].y > 0)
                    ++up;
                else
                    ++down;
            }
    }
    CHECK(up > 0);
    CHECK(down > 0);
    CHECK(up + down == 2 * 64);  // each of the 64 cells contributes its diagonal twice
}

TEST_CASE("perturbed grid") {
    SUBCASE("zero amplitude reproduces the uniform grid") {
        const Mesh a = generate_perturbed(6, 0.5, 0.0, 3);
        const Mesh b = generate_uniform(6);
        REQUIRE(a.n_vertices() == b.n_vertices());
        for (int v = 0; v < a.n_vertices(); ++v) {
            CHECK(a.vertex[v].x == b.vertex[v].x);
            CHECK(a.vertex[v].y == b.vertex[v].y);
        }
    }
    SUBCASE("deterministic in the seed") {
        const Mesh a = generate_perturbed(6, 0.5, 0.25, 42);
        const Mesh b = generate_perturbed(6, 0.5, 0.25, 42);
        for (int v = 0; v < a.n_vertices(); ++v) CHECK(a.vertex[v].x == b.vertex[v].x);
        const Mesh c = generate_perturbed(6, 0.5, 0.25, 43);
        bool same = true;
        for (int v = 0; v < a.n_vertices(); ++v) same = same && a.vertex[v].x == c.vertex[v].x;
        CHECK(!same);
    }
    SUBCASE("boundary vertices stay put") {
        const Mesh m = generate_perturbed(6, 0.5, 0.25, 7);
        for (const auto& p : m.vertex) {
            const bool on_boundary = p.x <= 0.0 || p.x >= 1.0 || p.y <= 0.0 || p.y >= 1.0;
            if (on_boundary) {
                CHECK((p.x == 0.0 || p.x == 1.0 || p.y == 0.0 || p.y == 1.0));
            }
        }
        m.validate();
    }
    SUBCASE("inverting displacement is rejected") {
        CHECK_THROWS_AS(generate_perturbed(4, 0.0, 3.0, 11), std::runtime_error);
    }
    SUBCASE("displacement scales as h^(1+alpha) across levels") {
        const double alpha = 0.5;
        std::vector<double> lh, ld;
        for (int n : {8, 16, 32, 64}) {
            const Mesh m = generate_perturbed(n, alpha, 0.25, 5);
            const Mesh u = generate_uniform(n);
            double dmax = 0.0;
            for (int v = 0; v < m.n_vertices(); ++v)
                dmax = std::max(dmax, norm(m.vertex[v] - u.vertex[v]));
            lh.push_back(std::log(1.0 / n));
            ld.push_back(std::log(dmax));
        }
        CHECK(least_squares_slope(lh, ld) == doctest::Approx(1.0 + alpha).epsilon(0.07));
    }
}

TEST_CASE("every generator satisfies the mesh invariants after refinement") {
    for (Mesh m : {generate_uniform(5), generate_piecewise_uniform(6),
                   generate_perturbed(6, 0.7, 0.25, 9)}) {
        m.validate();
        const Mesh r = refine_regular(m);
        r.validate();
        CHECK(r.n_vertices() - r.n_edges() + r.n_triangles() == 1);
    }
}

TEST_CASE("mesh file round trip") {
    const Mesh m = generate_perturbed(4, 0.5, 0.2, 17);
    std::stringstream buffer;
    write_mesh(m, buffer);
    const Mesh back = read_mesh(buffer);
    REQUIRE(back.n_vertices() == m.n_vertices());
    REQUIRE(back.n_triangles() == m.n_triangles());
    CHECK(back.n_edges() == m.n_edges());
    for (int v = 0; v < m.n_vertices(); ++v) {
        CHECK(back.vertex[v].x == m.vertex[v].x);
        CHECK(back.vertex[v].y == m.vertex[v].y);
    }
    std::stringstream bad("3 3 1\n0 0\n1 0\n0 1\n0 2 1\n");
    CHECK_THROWS(read_mesh(bad));  // clockwise triangle
}

TEST_CASE("triangle geometry on the reference triangle") {
    const TriangleGeometry g = triangle_geometry({0, 0}, {1, 0}, {0, 1});
    CHECK(g.area == doctest::Approx(0.5));
    CHECK(g.edge_length[0] == doctest::Approx(std::sqrt(2.0)));
    CHECK(g.edge_length[1] == doctest::Approx(1.0));
    CHECK(g.edge_length[2] == doctest::Approx(1.0));
    CHECK(g.normal[0].x == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(g.normal[0].y == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(g.height[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(g.grad_lambda[0].x == doctest::Approx(-1.0));
    CHECK(g.grad_lambda[0].y == doctest::Approx(-1.0));
}

TEST_CASE("triangle geometry identities on random triangles") {
    std::uint64_t state = 2024;
    auto next = [&state]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return (state >> 11) * 0x1.0p-53;
    };
    for (int trial = 0; trial < 50; ++trial) {
        Vec2 a{next(), next()}, b{next(), next()}, c{next(), next()};
        if (signed_area(a, b, c) < 0) std::swap(b, c);
        if (signed_area(a, b, c) < 0.02) continue;
        const TriangleGeometry g = triangle_geometry(a, b, c);
        CHECK(g.angle[0] + g.angle[1] + g.angle[2] == doctest::Approx(M_PI).epsilon(1e-12));
        for (int k = 0; k < 3; ++k) {
            CHECK(g.area ==
                  doctest::Approx(0.5 * g.edge_length[k] * g.height[k]).epsilon(1e-12));
            const Vec2 rot_n = rot90(g.normal[k]);
            CHECK(rot_n.x == doctest::Approx(g.tangent[k].x).epsilon(1e-12));
            CHECK(rot_n.y == doctest::Approx(g.tangent[k].y).epsilon(1e-12));
            const Vec2 want = (-1.0 / g.height[k]) * g.normal[k];
            CHECK(g.grad_lambda[k].x == doctest::Approx(want.x).epsilon(1e-12));
            CHECK(g.grad_lambda[k].y == doctest::Approx(want.y).epsilon(1e-12));
        }
    }
}

TEST_CASE("equilateral triangle has three equal angles") {
    const TriangleGeometry g =
        triangle_geometry({0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0});
    for (int k = 0; k < 3; ++k) CHECK(g.angle[k] == doctest::Approx(M_PI / 3.0).epsilon(1e-13));
}

TEST_CASE("uniform grid parallelogram deviations vanish") {
    const Mesh m = generate_uniform(8);
    const double h = m.max_diameter();
    for (int e = 0; e < m.n_edges(); ++e) {
        if (m.edge[e].boundary()) continue;
        // opposite side lengths of the two-triangle quadrilateral
        const auto& ed = m.edge[e];
        auto third = [&](int t) {
            for (int v : m.tri[t])
                if (v != ed.v0 && v != ed.v1) return v;
            return -1;
        };
        const Vec2 a = m.vertex[ed.v0], b = m.vertex[ed.v1];
        const Vec2 c = m.vertex[third(ed.tri0)], d = m.vertex[third(ed.tri1)];
        const double dev = std::max(std::abs(norm(a - c) - norm(b - d)),
                                    std::abs(norm(d - a) - norm(c - b)));
        CHECK(dev <= 1e-14 * h);
    }
}
