#include <doctest.h>

#include <cmath>

#include "rtlab/quadrature.hpp"

using namespace rtlab;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// int over the reference triangle of x^a y^b
double reference_monomial(int a, int b) {
    return factorial(a) * factorial(b) / factorial(a + b + 2);
}

}  // namespace

TEST_CASE("triangle rule: weights sum to one") {
    const TriangleRule rule = triangle_rule_degree5();
    double w = 0.0;
    for (const auto& n : rule.node) w += n.w;
    CHECK(w == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("triangle rule integrates monomials through degree 5") {
    const TriangleRule rule = triangle_rule_degree5();
    const TriangleGeometry ref = triangle_geometry({0, 0}, {1, 0}, {0, 1});
    for (int a = 0; a <= 5; ++a)
        for (int b = 0; a + b <= 5; ++b) {
            const double got = integrate(rule, ref, [&](Vec2 p) {
                return std::pow(p.x, a) * std::pow(p.y, b);
            });
            const double want = reference_monomial(a, b);
            CHECK(std::abs(got - want) <= 1e-14 * std::max(1.0, std::abs(want)));
        }
}

TEST_CASE("edge rule integrates monomials through degree 7") {
    const EdgeRule rule = edge_rule_gauss4();
    double w = 0.0;
    for (const auto& n : rule.node) w += n.w;
    CHECK(w == doctest::Approx(1.0).epsilon(1e-15));
    for (int k = 0; k <= 7; ++k) {
        const double got =
            integrate_edge(rule, {0, 0}, {1, 0}, [&](Vec2 p) { return std::pow(p.x, k); });
        CHECK(got == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
    }
}

TEST_CASE("rules scale with the element measure") {
    const TriangleGeometry g = triangle_geometry({1, 1}, {3, 1.5}, {1.2, 4});
    const double area = integrate(triangle_rule_degree5(), g, [](Vec2) { return 1.0; });
    CHECK(area == doctest::Approx(g.area).epsilon(1e-14));
    const double len = integrate_edge(edge_rule_gauss4(), {1, 2}, {4, 6}, [](Vec2) { return 1.0; });
    CHECK(len == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("composite refinement keeps exactness and shrinks transcendental error") {
    const TriangleGeometry ref = triangle_geometry({0, 0}, {1, 0}, {0, 1});
    const TriangleRule base = triangle_rule_degree5();
    const TriangleRule fine = refine_rule(base, 2);
    double w = 0.0;
    for (const auto& n : fine.node) w += n.w;
    CHECK(w == doctest::Approx(1.0).epsilon(1e-13));
    const double want = reference_monomial(3, 2);
    CHECK(integrate(fine, ref, [](Vec2 p) {
              return p.x * p.x * p.x * p.y * p.y;
          }) == doctest::Approx(want).epsilon(1e-13));

    auto osc = [](Vec2 p) { return std::sin(7.0 * p.x) * std::cos(5.0 * p.y); };
    const double truth = integrate(refine_rule(base, 6), ref, osc);
    const double coarse_err = std::abs(integrate(base, ref, osc) - truth);
    const double fine_err = std::abs(integrate(fine, ref, osc) - truth);
    CHECK(fine_err < 0.01 * coarse_err);
}
