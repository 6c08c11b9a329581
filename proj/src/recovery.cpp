#include "rtlab/recovery.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "rtlab/utils.hpp"

namespace rtlab {

namespace {

bool edges_meet(const Mesh& mesh, int e1, int e2) {
    const auto& a = mesh.edge[e1];
    const auto& b = mesh.edge[e2];
    return a.v0 == b.v0 || a.v0 == b.v1 || a.v1 == b.v0 || a.v1 == b.v1;
}

}  // namespace

Recovered apply_gh(const Mesh& mesh, const TriVectorEval& field) {
    Recovered out;
    out.field.value.assign(mesh.n_edges(), Vec2{0.0, 0.0});

    for (int e = 0; e < mesh.n_edges(); ++e) {
        if (mesh.edge[e].boundary()) continue;
        const Vec2 m = mesh.edge_midpoint(e);
        out.field.value[e] =
            0.5 * (field(mesh.edge[e].tri0, m) + field(mesh.edge[e].tri1, m));
    }

    for (int e = 0; e < mesh.n_edges(); ++e) {
        if (!mesh.edge[e].boundary()) continue;
        const int t = mesh.edge[e].tri0;
        const Vec2 mid = mesh.edge_midpoint(e);

        // candidate patches: the triangle's interior edges whose partner edge
        // across the neighbor is interior too; pick the one extrapolating most
        // directly inward (purely geometric, independent of edge numbering)
        const TriangleGeometry g = mesh.geometry(t);
        const Vec2 inward = -1.0 * g.normal[mesh.local_edge(t, e)];
        int eprime = -1, esecond = -1;
        double best_score = -2.0;
        for (int k = 0; k < 3; ++k) {
            const int cand = mesh.tri_edge[t][k];
            if (mesh.edge[cand].boundary()) continue;
            const int tprime = mesh.neighbor(cand, t);
            int cand2 = -1;
            for (int j = 0; j < 3; ++j)
                if (!edges_meet(mesh, mesh.tri_edge[tprime][j], e))
                    cand2 = mesh.tri_edge[tprime][j];
            if (cand2 < 0 || mesh.edge[cand2].boundary()) continue;
            const Vec2 dir = mesh.edge_midpoint(cand) - mid;
            const double score = dot(dir, inward) / norm(dir);
            if (score > best_score + 1e-12 ||
                (score > best_score - 1e-12 && (eprime < 0 || cand < eprime))) {
                best_score = score;
                eprime = cand;
                esecond = cand2;
            }
        }
        if (eprime < 0) {
            out.field.value[e] = field(t, mid);
            ++out.fallbacks;
            continue;
        }
        out.field.value[e] = 2.0 * out.field.value[eprime] - out.field.value[esecond];
    }
    if (out.fallbacks > 0)
        warn("recovery: one-sided fallback on " + std::to_string(out.fallbacks) +
             " boundary midpoint(s) with incomplete patches");
    return out;
}

Recovered apply_gh(const Mesh& mesh, const RTField& q) {
    return apply_gh(mesh, [&](int t, Vec2 x) { return eval(mesh, q, t, x); });
}

Recovered apply_gh(const Mesh& mesh, const std::vector<Vec2>& per_triangle) {
    return apply_gh(mesh, [&](int t, Vec2) { return per_triangle[t]; });
}

EstimatorResult estimator(const Mesh& mesh, const Quadrature& quad, const RTField& p_h) {
    const VectorCRField recovered = apply_gh(mesh, p_h).field;
    EstimatorResult out;
    out.eta_tau.resize(mesh.n_triangles());
    double total = 0.0;
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const TriangleGeometry g = mesh.geometry(t);
        const double sq = integrate(quad.tri, g, [&](Vec2 x) {
            const Vec2 d = eval(mesh, g, recovered, t, x) - eval(mesh, g, p_h, t, x);
            return dot(d, d);
        });
        out.eta_tau[t] = std::sqrt(std::max(0.0, sq));
        total += sq;
    }
    out.eta = std::sqrt(std::max(0.0, total));
    return out;
}

void write_indicator_csv(const EstimatorResult& result, std::ostream& out) {
    out << "triangle,eta\n";
    char buf[64];
    for (size_t t = 0; t < result.eta_tau.size(); ++t) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", t, result.eta_tau[t]);
        out << buf;
    }
}

}  // namespace rtlab
