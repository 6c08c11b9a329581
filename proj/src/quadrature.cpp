#include "rtlab/quadrature.hpp"

#include <cmath>

namespace rtlab {

TriangleRule triangle_rule_degree5() {
    TriangleRule r;
    r.degree = 5;
    const double s15 = std::sqrt(15.0);
    const double a = (6.0 + s15) / 21.0;
    const double wa = (155.0 + s15) / 1200.0;
    const double b = (6.0 - s15) / 21.0;
    const double wb = (155.0 - s15) / 1200.0;
    r.node.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 9.0 / 40.0});
    for (int k = 0; k < 3; ++k) {
        double la[3] = {a, a, a};
        la[k] = 1.0 - 2.0 * a;
        r.node.push_back({la[0], la[1], la[2], wa});
        double lb[3] = {b, b, b};
        lb[k] = 1.0 - 2.0 * b;
        r.node.push_back({lb[0], lb[1], lb[2], wb});
    }
    return r;
}

EdgeRule edge_rule_gauss4() {
    EdgeRule r;
    r.degree = 7;
    const double x1 = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
    const double x2 = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
    const double w1 = (18.0 + std::sqrt(30.0)) / 36.0;
    const double w2 = (18.0 - std::sqrt(30.0)) / 36.0;
    // map [-1,1] -> [0,1], weights renormalized to sum 1
    for (double x : {-x2, -x1, x1, x2}) {
        const double w = (std::abs(x) == x2 ? w2 : w1) / 2.0;
        r.node.push_back({0.5 * (1.0 + x), w});
    }
    return r;
}

TriangleRule refine_rule(const TriangleRule& rule, int levels) {
    TriangleRule out = rule;
    for (int lev = 0; lev < levels; ++lev) {
        TriangleRule next;
        next.degree = out.degree;
        // children of the reference triangle in barycentric coordinates:
        // lambda_child -> lambda_parent is affine; enumerate the 4 red children.
        const std::array<std::array<std::array<double, 3>, 3>, 4> child = {{
            {{{1.0, 0.0, 0.0}, {0.5, 0.5, 0.0}, {0.5, 0.0, 0.5}}},
            {{{0.5, 0.5, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.5, 0.5}}},
            {{{0.5, 0.0, 0.5}, {0.0, 0.5, 0.5}, {0.0, 0.0, 1.0}}},
            {{{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}}},
        }};
        for (const auto& c : child)
            for (const auto& n : out.node) {
                TriangleRule::Node m;
                m.l0 = n.l0 * c[0][0] + n.l1 * c[1][0] + n.l2 * c[2][0];
                m.l1 = n.l0 * c[0][1] + n.l1 * c[1][1] + n.l2 * c[2][1];
                m.l2 = n.l0 * c[0][2] + n.l1 * c[1][2] + n.l2 * c[2][2];
                m.w = n.w / 4.0;
                next.node.push_back(m);
            }
        out = next;
    }
    return out;
}

EdgeRule refine_rule(const EdgeRule& rule, int levels) {
    EdgeRule out = rule;
    for (int lev = 0; lev < levels; ++lev) {
        EdgeRule next;
        next.degree = out.degree;
        for (int half = 0; half < 2; ++half)
            for (const auto& n : out.node)
                next.node.push_back({0.5 * (n.s + half), n.w / 2.0});
        out = next;
    }
    return out;
}

}  // namespace rtlab
