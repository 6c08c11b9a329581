#pragma once

#include <vector>

#include "rtlab/geometry.hpp"

namespace rtlab {

/// Symmetric rule on the reference triangle in barycentric form; weights sum to 1.
struct TriangleRule {
    struct Node {
        double l0, l1, l2;
        double w;
    };
    std::vector<Node> node;
    int degree = 0;
};

/// Rule on the unit segment [0,1]; weights sum to 1.
struct EdgeRule {
    struct Node {
        double s;
        double w;
    };
    std::vector<Node> node;
    int degree = 0;
};

/// 7-point degree-5 triangle rule.
TriangleRule triangle_rule_degree5();
/// 4-point Gauss rule, exact through degree 7.
EdgeRule edge_rule_gauss4();

/// Composite refinement: apply the rule on 4^levels congruent subtriangles
/// (2^levels subsegments). Same polynomial degree, much smaller error.
TriangleRule refine_rule(const TriangleRule& rule, int levels);
EdgeRule refine_rule(const EdgeRule& rule, int levels);

struct Quadrature {
    TriangleRule tri;
    EdgeRule edge;

    static Quadrature standard() { return {triangle_rule_degree5(), edge_rule_gauss4()}; }
    Quadrature refined(int levels) const {
        return {refine_rule(tri, levels), refine_rule(edge, levels)};
    }
};

template <class F>
double integrate(const TriangleRule& rule, const TriangleGeometry& g, F&& f) {
    double s = 0.0;
    for (const auto& n : rule.node)
        s += n.w * f(g.point({n.l0, n.l1, n.l2}));
    return g.area * s;
}

template <class F>
double integrate_edge(const EdgeRule& rule, Vec2 p0, Vec2 p1, F&& f) {
    double s = 0.0;
    for (const auto& n : rule.node)
        s += n.w * f(p0 + n.s * (p1 - p0));
    return norm(p1 - p0) * s;
}

}  // namespace rtlab
