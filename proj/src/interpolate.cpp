#include "rtlab/interpolate.hpp"

#include <cmath>

namespace rtlab {

RTField interpolate_rt(const Mesh& mesh, const Quadrature& quad, const VectorFn& q) {
    RTField out{std::vector<double>(mesh.n_edges(), 0.0)};
    for (int e = 0; e < mesh.n_edges(); ++e) {
        const Vec2 n = mesh.edge_normal(e);
        const Vec2 p0 = mesh.vertex[mesh.edge[e].v0];
        const Vec2 p1 = mesh.vertex[mesh.edge[e].v1];
        out.dof[e] = integrate_edge(quad.edge, p0, p1, [&](Vec2 x) { return dot(q(x), n); });
    }
    return out;
}

RTField interpolate_rt_midpoint(const Mesh& mesh, const VectorFn& q) {
    RTField out{std::vector<double>(mesh.n_edges(), 0.0)};
    for (int e = 0; e < mesh.n_edges(); ++e)
        out.dof[e] =
            mesh.edge_length(e) * dot(q(mesh.edge_midpoint(e)), mesh.edge_normal(e));
    return out;
}

P0Field project_p0(const Mesh& mesh, const Quadrature& quad, const ScalarFn& v) {
    P0Field out{std::vector<double>(mesh.n_triangles(), 0.0)};
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const TriangleGeometry g = mesh.geometry(t);
        out.value[t] = integrate(quad.tri, g, v) / g.area;
    }
    return out;
}

CRField interpolate_cr(const Mesh& mesh, const Quadrature& quad, const ScalarFn& v) {
    CRField out{std::vector<double>(mesh.n_edges(), 0.0)};
    for (int e = 0; e < mesh.n_edges(); ++e) {
        const Vec2 p0 = mesh.vertex[mesh.edge[e].v0];
        const Vec2 p1 = mesh.vertex[mesh.edge[e].v1];
        out.value[e] = integrate_edge(quad.edge, p0, p1, v) / mesh.edge_length(e);
    }
    return out;
}

VectorCRField interpolate_cr(const Mesh& mesh, const Quadrature& quad, const VectorFn& q) {
    VectorCRField out{std::vector<Vec2>(mesh.n_edges())};
    CRField cx = interpolate_cr(mesh, quad, [&](Vec2 x) { return q(x).x; });
    CRField cy = interpolate_cr(mesh, quad, [&](Vec2 x) { return q(x).y; });
    for (int e = 0; e < mesh.n_edges(); ++e) out.value[e] = {cx.value[e], cy.value[e]};
    return out;
}

RTField rt_dofs_of(const Mesh& mesh, const VectorCRField& v) {
    RTField out{std::vector<double>(mesh.n_edges(), 0.0)};
    for (int e = 0; e < mesh.n_edges(); ++e)
        out.dof[e] = mesh.edge_length(e) * dot(v.value[e], mesh.edge_normal(e));
    return out;
}

RTField rt_dofs_of_piecewise_affine(const Mesh& mesh,
                                    const std::function<Vec2(int, Vec2)>& field) {
    RTField out{std::vector<double>(mesh.n_edges(), 0.0)};
    for (int e = 0; e < mesh.n_edges(); ++e) {
        const int t = mesh.edge[e].tri0;
        out.dof[e] = mesh.edge_length(e) *
                     dot(field(t, mesh.edge_midpoint(e)), mesh.edge_normal(e));
    }
    return out;
}

double commuting_diagram_defect(const Mesh& mesh, const Quadrature& quad, const VectorFn& q) {
    const RTField qh = interpolate_rt(mesh, quad, q);
    double max_defect = 0.0;
    double scale = 0.0;
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const TriangleGeometry g = mesh.geometry(t);
        double flux = 0.0;
        for (int k = 0; k < 3; ++k) {
            const Vec2 n = g.normal[k];
            flux += integrate_edge(quad.edge, g.vertex[(k + 1) % 3], g.vertex[(k + 2) % 3],
                                   [&](Vec2 x) { return dot(q(x), n); });
        }
        const double mean_div = flux / g.area;
        max_defect = std::max(max_defect, std::abs(div_value(mesh, g, qh, t) - mean_div));
        scale = std::max(scale, std::abs(mean_div));
    }
    return max_defect / std::max(scale, 1.0);
}

namespace {

/// Local RT interpolant of an affine field (exact edge integrals).
std::array<double, 3> local_rt_dofs(const TriangleGeometry& g, const LinearVectorField& p) {
    std::array<double, 3> d;
    for (int k = 0; k < 3; ++k)
        d[k] = g.edge_length[k] * dot(p(g.edge_midpoint(k)), g.normal[k]);
    return d;
}

Vec2 local_rt_eval(const TriangleGeometry& g, const std::array<double, 3>& d, Vec2 x) {
    Vec2 out{0.0, 0.0};
    for (int k = 0; k < 3; ++k) out += d[k] * rt_basis(g, k, x);
    return out;
}

}  // namespace

double local_expansion_defect(const TriangleGeometry& g, const LinearVectorField& p,
                              const Quadrature& quad) {
    const auto dofs = local_rt_dofs(g, p);
    std::array<double, 3> coeff;
    for (int k = 0; k < 3; ++k) {
        const Vec2 dp_dt = p.grad * g.tangent[k];
        coeff[k] = -0.5 * g.edge_length[k] * g.edge_length[k] * dot(g.normal[k], dp_dt);
    }
    double defect = 0.0;
    for (const auto& node : quad.tri.node) {
        const Vec2 x = g.point({node.l0, node.l1, node.l2});
        Vec2 grad_r{0.0, 0.0};
        const auto l = g.lambda(x);
        for (int k = 0; k < 3; ++k) {
            const int km = (k + 2) % 3, kp = (k + 1) % 3;
            grad_r += coeff[k] * (l[kp] * g.grad_lambda[km] + l[km] * g.grad_lambda[kp]);
        }
        const Vec2 curl_r = rot90cw(grad_r);
        defect = std::max(defect, norm(p(x) - local_rt_eval(g, dofs, x) - curl_r));
    }
    return defect;
}

double local_variational_identity_defect(const TriangleGeometry& g, const LinearVectorField& p,
                                         Vec2 q, const Quadrature& quad) {
    const auto dofs = local_rt_dofs(g, p);
    const double lhs = integrate(quad.tri, g, [&](Vec2 x) {
        return dot(p(x) - local_rt_eval(g, dofs, x), q);
    });

    double rhs = 0.0;
    for (int k = 0; k < 3; ++k) {
        const int km = (k + 2) % 3, kp = (k + 1) % 3;
        const Vec2 dp_dt = p.grad * g.tangent[k];
        const Vec2 dp_dn = p.grad * g.normal[k];
        const double weighted =
            g.area * dot(g.tangent[k], dp_dt) - g.area * dot(g.normal[k], dp_dn) +
            0.5 * (g.edge_length[km] * g.edge_length[km] -
                   g.edge_length[kp] * g.edge_length[kp]) *
                dot(g.normal[k], dp_dt);
        const double bubble = integrate_edge(
            quad.edge, g.vertex[(k + 1) % 3], g.vertex[(k + 2) % 3], [&](Vec2 x) {
                const auto l = g.lambda(x);
                return l[km] * l[kp];
            });
        rhs += (std::cos(g.angle[k]) / std::sin(g.angle[k])) * bubble * weighted *
               dot(q, g.normal[k]);
    }
    return std::abs(lhs - rhs);
}

double rt_duality_defect(const TriangleGeometry& g, const EdgeRule& rule) {
    double defect = 0.0;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            const double nj = integrate_edge(
                rule, g.vertex[(j + 1) % 3], g.vertex[(j + 2) % 3],
                [&](Vec2 x) { return dot(rt_basis(g, k, x), g.normal[j]); });
            defect = std::max(defect, std::abs(nj - (j == k ? 1.0 : 0.0)));
        }
    return defect;
}

double cr_rt_interpolation_defect(const Mesh& mesh, const Quadrature& quad, const VectorFn& q) {
    const RTField direct = interpolate_rt(mesh, quad, q);
    const RTField via_cr = rt_dofs_of(mesh, interpolate_cr(mesh, quad, q));
    double scale = 0.0;
    for (double d : direct.dof) scale = std::max(scale, std::abs(d));
    double defect = 0.0;
    for (int e = 0; e < mesh.n_edges(); ++e)
        defect = std::max(defect, std::abs(direct.dof[e] - via_cr.dof[e]));
    return defect / std::max(scale, 1e-300);
}

double normal_trace_jump(const Mesh& mesh, const RTField& q) {
    double jump = 0.0;
    for (int e = 0; e < mesh.n_edges(); ++e) {
        if (mesh.edge[e].boundary()) continue;
        const Vec2 m = mesh.edge_midpoint(e);
        const Vec2 n = mesh.edge_normal(e);
        const double a = dot(eval(mesh, q, mesh.edge[e].tri0, m), n);
        const double b = dot(eval(mesh, q, mesh.edge[e].tri1, m), n);
        jump = std::max(jump, std::abs(a - b));
    }
    return jump;
}

}  // namespace rtlab
