#include "rtlab/structure.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "rtlab/utils.hpp"

namespace rtlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int third_vertex(const Mesh& mesh, int t, int e) {
    for (int v : mesh.tri[t])
        if (v != mesh.edge[e].v0 && v != mesh.edge[e].v1) return v;
    throw std::logic_error("third_vertex: edge not part of triangle");
}

}  // namespace

double parallelogram_deviation(const Mesh& mesh, int e) {
    const MeshEdge& ed = mesh.edge[e];
    if (ed.boundary()) throw std::invalid_argument("parallelogram_deviation: boundary edge");
    const Vec2 a = mesh.vertex[ed.v0];
    const Vec2 b = mesh.vertex[ed.v1];
    const Vec2 c = mesh.vertex[third_vertex(mesh, ed.tri0, e)];
    const Vec2 d = mesh.vertex[third_vertex(mesh, ed.tri1, e)];
    // sides of the quadrilateral c-a-d-b; opposite pairs must match
    const double l0 = norm(a - c), l1 = norm(d - a), l2 = norm(b - d), l3 = norm(c - b);
    return std::max(std::abs(l0 - l2), std::abs(l1 - l3));
}

LevelStructure analyze_structure(const Mesh& mesh, const StructureOptions& opt) {
    if (!(opt.threshold_c > 0.0))
        throw std::invalid_argument("analyze_structure: threshold constant must be positive");
    LevelStructure out;
    out.h = mesh.max_diameter();
    const double edge_tol = opt.threshold_c * std::pow(out.h, 1.0 + opt.alpha);
    const double tangent_tol = opt.threshold_c * std::pow(out.h, opt.alpha);
    out.edge_deviation.assign(mesh.n_edges(), kNaN);
    out.vertex_edge_deviation.assign(mesh.n_vertices(), kNaN);
    out.vertex_tangent_gap.assign(mesh.n_vertices(), kNaN);

    std::vector<double> tri_area(mesh.n_triangles());
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const auto& v = mesh.tri[t];
        tri_area[t] = signed_area(mesh.vertex[v[0]], mesh.vertex[v[1]], mesh.vertex[v[2]]);
    }

    for (int e = 0; e < mesh.n_edges(); ++e) {
        if (mesh.edge[e].boundary()) continue;
        ++out.n_interior_edges;
        const double dev = parallelogram_deviation(mesh, e);
        out.edge_deviation[e] = dev;
        out.max_deviation = std::max(out.max_deviation, dev);
        if (dev <= edge_tol) {
            ++out.n_e1;
            out.max_e1_deviation = std::max(out.max_e1_deviation, dev);
        } else {
            ++out.n_e2;
            out.e2_measure += tri_area[mesh.edge[e].tri0] + tri_area[mesh.edge[e].tri1];
            out.e2_edges.push_back(e);
        }
    }

    // boundary vertices: each carries exactly two boundary edges
    std::vector<std::array<int, 2>> vertex_bedge(mesh.n_vertices(), {-1, -1});
    for (int e = 0; e < mesh.n_edges(); ++e) {
        if (!mesh.edge[e].boundary()) continue;
        for (int v : {mesh.edge[e].v0, mesh.edge[e].v1}) {
            auto& slot = vertex_bedge[v];
            if (slot[0] < 0)
                slot[0] = e;
            else if (slot[1] < 0)
                slot[1] = e;
            else
                throw std::runtime_error("analyze_structure: boundary vertex with >2 boundary edges");
        }
    }

    for (int x = 0; x < mesh.n_vertices(); ++x) {
        const auto& be = vertex_bedge[x];
        if (be[0] < 0) continue;
        if (be[1] < 0) throw std::runtime_error("analyze_structure: dangling boundary edge");
        ++out.n_boundary_vertices;

        // corresponding-edge pairs: start at the boundary edges, then follow
        // each triangle counterclockwise
        const int e = be[0], ep = be[1];
        const int t = mesh.edge[e].tri0, tp = mesh.edge[ep].tri0;
        const TriangleGeometry g = mesh.geometry(t), gp = mesh.geometry(tp);
        const int k = mesh.local_edge(t, e), kp = mesh.local_edge(tp, ep);

        const double tangent_gap = norm(g.tangent[k] - gp.tangent[kp]);
        double worst_len = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double len = g.edge_length[(k + i) % 3];
            const double lenp = gp.edge_length[(kp + i) % 3];
            worst_len = std::max(worst_len, std::abs(len - lenp));
        }
        out.vertex_edge_deviation[x] = worst_len;
        out.vertex_tangent_gap[x] = tangent_gap;
        if (tangent_gap > tangent_tol || worst_len > edge_tol) {
            ++out.kappa;
            out.p2_vertices.push_back(x);
        }
    }
    return out;
}

namespace {

/// Log-log slope of a positive quantity vs h; +inf when the quantity vanishes
/// at every level, NaN when fewer than two positive samples remain.
double decay_fit(const std::vector<double>& h, const std::vector<double>& q,
                 const std::vector<double>& zero_scale) {
    std::vector<double> lx, ly;
    bool all_zero = true;
    for (size_t i = 0; i < q.size(); ++i) {
        if (q[i] > zero_scale[i]) {
            all_zero = false;
            lx.push_back(std::log(h[i]));
            ly.push_back(std::log(q[i]));
        }
    }
    if (all_zero) return kInf;
    if (lx.size() < 2) return kNaN;
    return least_squares_slope(lx, ly);
}

}  // namespace

MeshStructureReport analyze_structure(const std::vector<Mesh>& levels,
                                      const StructureOptions& opt) {
    if (levels.empty()) throw std::invalid_argument("analyze_structure: no meshes");
    MeshStructureReport rep;
    rep.options = opt;
    for (const Mesh& m : levels) rep.level.push_back(analyze_structure(m, opt));

    std::vector<double> h, dev, dev_floor, meas, meas_floor;
    for (const auto& lv : rep.level) {
        h.push_back(lv.h);
        dev.push_back(lv.max_e1_deviation);
        dev_floor.push_back(1e-13 * lv.h);
        meas.push_back(lv.e2_measure);
        meas_floor.push_back(0.0);
    }
    if (rep.level.size() >= 2) {
        const double slope = decay_fit(h, dev, dev_floor);
        rep.alpha_hat = std::isinf(slope) ? kInf : slope - 1.0;
        rep.sigma_hat = decay_fit(h, meas, meas_floor);
    } else {
        rep.alpha_hat = kNaN;
        const bool e2_empty = rep.level.front().n_e2 == 0;
        rep.sigma_hat = e2_empty ? kInf : kNaN;
    }
    if (std::isnan(rep.sigma_hat))
        rep.rho = kNaN;
    else
        rep.rho = std::min(1.0, std::min(opt.alpha, rep.sigma_hat / 2.0));
    return rep;
}

MeshStructureReport analyze_structure_single(const Mesh& mesh, const StructureOptions& opt) {
    return analyze_structure(std::vector<Mesh>{mesh}, opt);
}

namespace {

std::string csv_number(double v) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void write_structure_csv(const MeshStructureReport& report, std::ostream& out) {
    out << "level,h,E1,E2,E2_measure,kappa,alphahat,sigmahat,rho\n";
    for (size_t i = 0; i < report.level.size(); ++i) {
        const auto& lv = report.level[i];
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%zu,%.6e,%d,%d,%.6e,%d,", i, lv.h, lv.n_e1, lv.n_e2,
                      lv.e2_measure, lv.kappa);
        out << buf << csv_number(report.alpha_hat) << ',' << csv_number(report.sigma_hat) << ','
            << csv_number(report.rho) << '\n';
    }
}

}  // namespace rtlab
