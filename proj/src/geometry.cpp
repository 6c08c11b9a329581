#include "rtlab/geometry.hpp"

#include <stdexcept>

namespace rtlab {

TriangleGeometry triangle_geometry(Vec2 a0, Vec2 a1, Vec2 a2) {
    TriangleGeometry g;
    g.vertex = {a0, a1, a2};
    g.area = signed_area(a0, a1, a2);
    if (!(g.area > 0.0))
        throw std::invalid_argument("triangle_geometry: vertices are not counterclockwise");
    g.barycenter = (a0 + a1 + a2) / 3.0;
    for (int k = 0; k < 3; ++k) {
        const Vec2 from = g.vertex[(k + 1) % 3];
        const Vec2 to = g.vertex[(k + 2) % 3];
        const Vec2 d = to - from;
        g.edge_length[k] = norm(d);
        g.tangent[k] = d / g.edge_length[k];
        g.normal[k] = rot90cw(g.tangent[k]);
        g.height[k] = 2.0 * g.area / g.edge_length[k];
        g.grad_lambda[k] = (-1.0 / g.height[k]) * g.normal[k];
    }
    for (int k = 0; k < 3; ++k) {
        const Vec2 u = g.vertex[(k + 1) % 3] - g.vertex[k];
        const Vec2 v = g.vertex[(k + 2) % 3] - g.vertex[k];
        g.angle[k] = std::atan2(cross(u, v), dot(u, v));
    }
    return g;
}

}  // namespace rtlab
