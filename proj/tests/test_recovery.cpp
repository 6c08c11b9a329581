#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "rtlab/oracles.hpp"
#include "rtlab/problems.hpp"
#include "rtlab/recovery.hpp"
#include "rtlab/study.hpp"
#include "rtlab/utils.hpp"

using namespace rtlab;

namespace {

const Quadrature quad = Quadrature::standard();

RTField interpolate_linear(const Mesh& m, const LinearVectorField& p) {
    return interpolate_rt(m, quad, [&](Vec2 x) { return p(x); });
}

}  // namespace

TEST_CASE("recovery reproduces constants at every midpoint") {
    for (const Mesh& m : {generate_uniform(6), generate_perturbed(6, 0.5, 0.25, 2)}) {
        const Vec2 c{1.5, -0.75};
        const RTField q = interpolate_rt(m, quad, [c](Vec2) { return c; });
        const Recovered rec = apply_gh(m, q);
        for (int e = 0; e < m.n_edges(); ++e) {
            CHECK(rec.field.value[e].x == doctest::Approx(c.x).epsilon(1e-13));
            CHECK(rec.field.value[e].y == doctest::Approx(c.y).epsilon(1e-13));
        }
    }
}

TEST_CASE("linear field on an exact parallelogram pair") {
    // two triangles forming the unit square; the single interior edge is the diagonal
    const Mesh m = Mesh::build({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}});
    const LinearVectorField p{{0.7, -0.3, 1.1, 0.4}, {0.2, -0.9}};
    const RTField q = interpolate_linear(m, p);
    const Recovered rec = apply_gh(m, q);
    for (int e = 0; e < m.n_edges(); ++e) {
        if (m.edge[e].boundary()) continue;
        const Vec2 want = p(m.edge_midpoint(e));
        CHECK(rec.field.value[e].x == doctest::Approx(want.x).epsilon(1e-14));
        CHECK(rec.field.value[e].y == doctest::Approx(want.y).epsilon(1e-14));
    }
}

TEST_CASE("linear field on the uniform grid: interior and boundary midpoints exact") {
    const Mesh m = generate_uniform(6);
    const LinearVectorField p{{0.5, 1.5, -2.0, 0.25}, {1.0, 2.0}};
    const RTField q = interpolate_linear(m, p);
    const Recovered rec = apply_gh(m, q);
    CHECK(rec.fallbacks == 0);
    for (int e = 0; e < m.n_edges(); ++e) {
        const Vec2 want = p(m.edge_midpoint(e));
        CHECK(norm(rec.field.value[e] - want) <= 1e-13);
    }
}

TEST_CASE("recovery is linear in its input") {
    const Mesh m = generate_perturbed(5, 0.7, 0.2, 44);
    std::uint64_t state = 77;
    RTField q1{std::vector<double>(m.n_edges())}, q2{std::vector<double>(m.n_edges())};
    for (int e = 0; e < m.n_edges(); ++e) {
        q1.dof[e] = random_unit(state);
        q2.dof[e] = random_unit(state);
    }
    const double a = 1.75, b = -0.4;
    RTField combo{std::vector<double>(m.n_edges())};
    for (int e = 0; e < m.n_edges(); ++e) combo.dof[e] = a * q1.dof[e] + b * q2.dof[e];
    const VectorCRField r1 = apply_gh(m, q1).field;
    const VectorCRField r2 = apply_gh(m, q2).field;
    const VectorCRField rc = apply_gh(m, combo).field;
    for (int e = 0; e < m.n_edges(); ++e) {
        const Vec2 want = a * r1.value[e] + b * r2.value[e];
        CHECK(rc.value[e].x == doctest::Approx(want.x).epsilon(1e-12));
        CHECK(rc.value[e].y == doctest::Approx(want.y).epsilon(1e-12));
    }
}

TEST_CASE("measured L2 bound of the recovery operator") {
    std::uint64_t state = 4242;
    for (const Mesh& m : {generate_uniform(8), generate_piecewise_uniform(8),
                          generate_perturbed(8, 0.5, 0.25, 3)}) {
        const auto mass = rt_mass_matrix(m, quad);
        for (int trial = 0; trial < 5; ++trial) {
            RTField q{std::vector<double>(m.n_edges())};
            for (double& d : q.dof) d = random_unit(state);
            const VectorCRField rec = apply_gh(m, q).field;
            double num_sq = 0.0;
            for (int t = 0; t < m.n_triangles(); ++t) {
                const TriangleGeometry g = m.geometry(t);
                num_sq += integrate(quad.tri, g, [&](Vec2 x) {
                    const Vec2 v = eval(m, g, rec, t, x);
                    return dot(v, v);
                });
            }
            const double denom = rt_l2_norm(mass, q);
            CHECK(std::sqrt(num_sq) <= 10.0 * denom);
        }
    }
}

TEST_CASE("midpoint defect for linear fields follows the parallelogram deviation") {
    // patch deviations scale as h^(1+alpha); so does the pointwise defect for a
    // fixed linear field (the patch-norm form divides one power of h out)
    const double alpha = 0.5;
    const LinearVectorField p{{1.0, 0.5, -0.25, 0.75}, {0.3, 0.1}};
    std::vector<double> lh, ldef;
    for (int n : {8, 16, 32, 64}) {
        const Mesh m = generate_perturbed(n, alpha, 0.25, 9);
        const RTField q = interpolate_linear(m, p);
        const Recovered rec = apply_gh(m, q);
        double defect = 0.0;
        for (int e = 0; e < m.n_edges(); ++e) {
            if (m.edge[e].boundary()) continue;
            defect = std::max(defect, norm(rec.field.value[e] - p(m.edge_midpoint(e))));
        }
        lh.push_back(std::log(m.max_diameter()));
        ldef.push_back(std::log(defect));
    }
    const double slope = least_squares_slope(lh, ldef);
    CHECK(slope == doctest::Approx(1.0 + alpha).epsilon(0.1));
}

TEST_CASE("estimator") {
    SUBCASE("a continuous RT polynomial has a vanishing indicator") {
        const Mesh m = generate_uniform(5);
        // q = a + a x is globally continuous and inside the RT space
        const RTField q = interpolate_rt(m, quad, [](Vec2 x) {
            return Vec2{1.0 - 2.0 * x.x, -0.5 - 2.0 * x.y};
        });
        const EstimatorResult est = estimator(m, quad, q);
        for (double eta : est.eta_tau) CHECK(eta <= 1e-13);
    }
    SUBCASE("invariant under vertex renumbering") {
        const ProblemSpec prob = sine_reaction_problem();
        const Mesh m = generate_uniform(6);
        const MixedSolution sol = solve_mixed(m, prob, quad);
        const double eta = estimator(m, quad, sol.p).eta;

        std::vector<int> perm(m.n_vertices());
        std::iota(perm.begin(), perm.end(), 0);
        std::mt19937_64 rng(5);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Vec2> v(m.n_vertices());
        for (int i = 0; i < m.n_vertices(); ++i) v[perm[i]] = m.vertex[i];
        std::vector<std::array<int, 3>> tris;
        for (const auto& t : m.tri) tris.push_back({perm[t[0]], perm[t[1]], perm[t[2]]});
        const Mesh shuffled = Mesh::build(std::move(v), std::move(tris));
        const MixedSolution sol2 = solve_mixed(shuffled, prob, quad);
        const double eta2 = estimator(shuffled, quad, sol2.p).eta;
        CHECK(eta2 == doctest::Approx(eta).epsilon(1e-8));
    }
    SUBCASE("accepts piecewise-constant input") {
        const Mesh m = generate_uniform(4);
        std::vector<Vec2> grad(m.n_triangles(), Vec2{2.0, -1.0});
        const Recovered rec = apply_gh(m, grad);
        for (int e = 0; e < m.n_edges(); ++e) {
            CHECK(rec.field.value[e].x == doctest::Approx(2.0).epsilon(1e-13));
            CHECK(rec.field.value[e].y == doctest::Approx(-1.0).epsilon(1e-13));
        }
    }
    SUBCASE("single-triangle mesh falls back to one-sided values") {
        const Mesh one = Mesh::build({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
        const RTField q = interpolate_rt(one, quad, [](Vec2) { return Vec2{1.0, 0.0}; });
        const Recovered rec = apply_gh(one, q);
        CHECK(rec.fallbacks == 3);
        for (int e = 0; e < 3; ++e)
            CHECK(rec.field.value[e].x == doctest::Approx(1.0).epsilon(1e-13));
    }
}
