#include "rtlab/solver.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <cmath>

#include "rtlab/utils.hpp"

namespace rtlab {

namespace {

constexpr double kResidualTol = 1e-10;

Mat2 inverse_checked(const Mat2& a, Vec2 x) {
    const double scale = std::abs(a.a11) + std::abs(a.a12) + std::abs(a.a21) + std::abs(a.a22);
    if (std::abs(a.a12 - a.a21) > 1e-12 * std::max(scale, 1.0))
        throw std::invalid_argument("coefficient A is not symmetric at (" + std::to_string(x.x) +
                                    ", " + std::to_string(x.y) + ")");
    if (!(a.a11 > 0.0) || !(a.det() > 0.0))
        throw std::invalid_argument("coefficient A is not positive definite at (" +
                                    std::to_string(x.x) + ", " + std::to_string(x.y) + ")");
    return a.inverse();
}

double relative_residual(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& b) {
    const double nb = b.norm();
    return (A * x - b).norm() / (nb > 0.0 ? nb : 1.0);
}

Eigen::VectorXd sparse_lu_solve(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                                SolveReport& report, const char* what) {
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success)
        throw SolverError(std::string(what) + ": sparse LU factorization failed (singular system?)");
    Eigen::VectorXd x = lu.solve(b);
    report.rel_residual = relative_residual(A, x, b);
    report.unknowns = static_cast<int>(A.rows());
    report.method = "SparseLU/COLAMD";
    if (!(report.rel_residual <= kResidualTol))
        throw SolverError(std::string(what) + ": residual " +
                          std::to_string(report.rel_residual) + " exceeds 1e-10");
    return x;
}

Eigen::VectorXd ldlt_solve(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                           SolveReport& report, const char* what) {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
    if (ldlt.info() != Eigen::Success)
        throw SolverError(std::string(what) + ": LDLT factorization failed");
    Eigen::VectorXd x = ldlt.solve(b);
    report.rel_residual = relative_residual(A, x, b);
    report.unknowns = static_cast<int>(A.rows());
    report.method = "SimplicialLDLT";
    if (!(report.rel_residual <= kResidualTol))
        throw SolverError(std::string(what) + ": residual " +
                          std::to_string(report.rel_residual) + " exceeds 1e-10");
    return x;
}

void check_neumann_compatibility(const Mesh& mesh, const ProblemSpec& problem,
                                 const Quadrature& quad) {
    double int_f = 0.0, scale = 0.0;
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const TriangleGeometry g = mesh.geometry(t);
        int_f += integrate(quad.tri, g, problem.f);
        scale += integrate(quad.tri, g, [&](Vec2 x) { return std::abs(problem.f(x)); });
    }
    double int_g = 0.0;
    for (int e = 0; e < mesh.n_edges(); ++e) {
        if (!mesh.edge[e].boundary()) continue;
        const Vec2 p0 = mesh.vertex[mesh.edge[e].v0], p1 = mesh.vertex[mesh.edge[e].v1];
        int_g += integrate_edge(quad.edge, p0, p1, problem.g);
        scale += integrate_edge(quad.edge, p0, p1, [&](Vec2 x) { return std::abs(problem.g(x)); });
    }
    if (std::abs(int_f + int_g) > 1e-8 * std::max(scale, 1.0))
        throw std::invalid_argument(
            "pure Neumann problem with c = 0 needs compatible data: int f + int g = " +
            std::to_string(int_f + int_g));
}

}  // namespace

MixedSystem assemble_mixed(const Mesh& mesh, const ProblemSpec& problem, const Quadrature& quad) {
    if (!problem.f) throw std::invalid_argument("assemble_mixed: source term f is required");
    const int ne = mesh.n_edges();
    const int nt = mesh.n_triangles();
    const bool has_b = static_cast<bool>(problem.b);
    const bool has_c = static_cast<bool>(problem.c);

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(nt) * 16);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ne + nt);

    for (int t = 0; t < nt; ++t) {
        const TriangleGeometry g = mesh.geometry(t);
        const auto& edges = mesh.tri_edge[t];
        const auto& sign = mesh.tri_edge_sign[t];

        double m_loc[3][3] = {};
        double n_loc[3] = {};
        double c_loc = 0.0;
        double f_loc = 0.0;
        for (const auto& node : quad.tri.node) {
            const Vec2 x = g.point({node.l0, node.l1, node.l2});
            const double w = node.w * g.area;
            const Mat2 alpha = inverse_checked(problem.coeff_A(x), x);
            Vec2 phi[3];
            for (int k = 0; k < 3; ++k) phi[k] = rt_basis(g, k, x);
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) m_loc[j][k] += w * dot(alpha * phi[k], phi[j]);
            if (has_b) {
                const Vec2 beta = alpha * problem.b(x);
                for (int j = 0; j < 3; ++j) n_loc[j] += w * dot(beta, phi[j]);
            }
            if (has_c) c_loc += w * problem.c(x);
            f_loc += w * problem.f(x);
        }

        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k)
                trip.emplace_back(edges[j], edges[k], sign[j] * sign[k] * m_loc[j][k]);
            trip.emplace_back(edges[j], ne + t, sign[j] - sign[j] * n_loc[j]);
            trip.emplace_back(ne + t, edges[j], sign[j]);
        }
        if (has_c) trip.emplace_back(ne + t, ne + t, -c_loc);
        rhs[ne + t] = -f_loc;
    }

    if (problem.bc == BcKind::dirichlet && problem.g) {
        for (int e = 0; e < ne; ++e) {
            if (!mesh.edge[e].boundary()) continue;
            const int t = mesh.edge[e].tri0;
            const int sign = mesh.tri_edge_sign[t][mesh.local_edge(t, e)];
            const Vec2 p0 = mesh.vertex[mesh.edge[e].v0], p1 = mesh.vertex[mesh.edge[e].v1];
            rhs[e] = sign / mesh.edge_length(e) * integrate_edge(quad.edge, p0, p1, problem.g);
        }
    }

    MixedSystem sys;
    sys.bc = problem.bc;
    sys.n_p_unknowns = ne;
    sys.n_u_unknowns = nt;
    sys.p_unknown.resize(ne);
    for (int e = 0; e < ne; ++e) sys.p_unknown[e] = e;
    sys.p_fixed.assign(ne, 0.0);
    sys.A.resize(ne + nt, ne + nt);
    sys.A.setFromTriplets(trip.begin(), trip.end());
    sys.A.makeCompressed();
    sys.rhs = std::move(rhs);

    if (problem.bc == BcKind::neumann) return apply_neumann(mesh, problem, sys);
    return sys;
}

MixedSystem apply_neumann(const Mesh& mesh, const ProblemSpec& problem, const MixedSystem& full) {
    const int ne = mesh.n_edges();
    const int nt = mesh.n_triangles();
    if (full.n_p_unknowns != ne || full.A.rows() != ne + nt)
        throw std::invalid_argument("apply_neumann: expects the unconstrained system");
    const bool pure = !static_cast<bool>(problem.c);
    const Quadrature quad = Quadrature::standard();
    if (pure) check_neumann_compatibility(mesh, problem, quad);

    MixedSystem sys;
    sys.bc = BcKind::neumann;
    sys.p_unknown.assign(ne, -1);
    sys.p_fixed.assign(ne, 0.0);
    int next = 0;
    for (int e = 0; e < ne; ++e) {
        if (mesh.edge[e].boundary()) {
            // dof = edge flux of g, oriented from outward to the global normal
            const int t = mesh.edge[e].tri0;
            const int sign = mesh.tri_edge_sign[t][mesh.local_edge(t, e)];
            const Vec2 p0 = mesh.vertex[mesh.edge[e].v0], p1 = mesh.vertex[mesh.edge[e].v1];
            sys.p_fixed[e] =
                problem.g ? sign * integrate_edge(quad.edge, p0, p1, problem.g) : 0.0;
        } else {
            sys.p_unknown[e] = next++;
        }
    }
    sys.n_p_unknowns = next;
    sys.n_u_unknowns = nt;
    const int dim = next + nt;
    sys.mean_pinned = pure;

    auto reduced_index = [&](int full_idx) -> int {
        if (full_idx < ne) return sys.p_unknown[full_idx];
        return next + (full_idx - ne);
    };

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
    for (int e = 0; e < ne; ++e)
        if (sys.p_unknown[e] >= 0) rhs[sys.p_unknown[e]] = full.rhs[e];
    for (int t = 0; t < nt; ++t) rhs[next + t] = full.rhs[ne + t];

    const int pinned_row = pure ? dim - 1 : -1;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(full.A.nonZeros());
    for (int col = 0; col < full.A.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(full.A, col); it; ++it) {
            const int r = reduced_index(static_cast<int>(it.row()));
            const int c = reduced_index(col);
            if (r < 0) continue;  // test functions have zero normal trace
            if (c < 0) {
                rhs[r] -= it.value() * sys.p_fixed[col];
                continue;
            }
            if (r == pinned_row) continue;
            trip.emplace_back(r, c, it.value());
        }
    }
    if (pure) {
        // gauge: replace the last u equation by the zero-mean constraint
        for (int t = 0; t < nt; ++t) {
            const auto& v = mesh.tri[t];
            trip.emplace_back(pinned_row, next + t,
                              signed_area(mesh.vertex[v[0]], mesh.vertex[v[1]], mesh.vertex[v[2]]));
        }
        rhs[pinned_row] = 0.0;
    }

    sys.A.resize(dim, dim);
    sys.A.setFromTriplets(trip.begin(), trip.end());
    sys.A.makeCompressed();
    sys.rhs = std::move(rhs);
    return sys;
}

MixedSolution solve_mixed(const Mesh& mesh, const MixedSystem& system) {
    MixedSolution sol;
    const Eigen::VectorXd x = sparse_lu_solve(system.A, system.rhs, sol.report, "solve_mixed");
    sol.p.dof.resize(mesh.n_edges());
    for (int e = 0; e < mesh.n_edges(); ++e) {
        const int idx = system.p_unknown[e];
        sol.p.dof[e] = idx >= 0 ? x[idx] : system.p_fixed[e];
    }
    sol.u.value.resize(mesh.n_triangles());
    for (int t = 0; t < mesh.n_triangles(); ++t) sol.u.value[t] = x[system.n_p_unknowns + t];
    return sol;
}

MixedSolution solve_mixed(const Mesh& mesh, const ProblemSpec& problem, const Quadrature& quad) {
    return solve_mixed(mesh, assemble_mixed(mesh, problem, quad));
}

CrSolution solve_cr(const Mesh& mesh, const Quadrature& quad, const ScalarFn& f, CrRhs rhs_kind) {
    const int ne = mesh.n_edges();
    std::vector<int> unknown(ne, -1);
    int next = 0;
    for (int e = 0; e < ne; ++e)
        if (!mesh.edge[e].boundary()) unknown[e] = next++;

    CrSolution sol;
    sol.f_proj = project_p0(mesh, quad, f);

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(mesh.n_triangles()) * 9);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(next);
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const TriangleGeometry g = mesh.geometry(t);
        const auto& edges = mesh.tri_edge[t];
        for (int j = 0; j < 3; ++j) {
            const int row = unknown[edges[j]];
            if (row < 0) continue;
            for (int k = 0; k < 3; ++k) {
                const int colu = unknown[edges[k]];
                if (colu < 0) continue;  // homogeneous boundary values
                trip.emplace_back(row, colu,
                                  4.0 * g.area * dot(g.grad_lambda[j], g.grad_lambda[k]));
            }
            if (rhs_kind == CrRhs::projected) {
                rhs[row] += sol.f_proj.value[t] * g.area / 3.0;
            } else {
                rhs[row] += integrate(quad.tri, g, [&](Vec2 x) {
                    return f(x) * cr_basis(g, j, x);
                });
            }
        }
    }
    Eigen::SparseMatrix<double> A(next, next);
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();
    const Eigen::VectorXd x = ldlt_solve(A, rhs, sol.report, "solve_cr");

    sol.u.value.assign(ne, 0.0);
    for (int e = 0; e < ne; ++e)
        if (unknown[e] >= 0) sol.u.value[e] = x[unknown[e]];
    return sol;
}

RTField marini_reconstruct(const Mesh& mesh, const CRField& ubar, const P0Field& f_proj) {
    RTField out{std::vector<double>(mesh.n_edges(), 0.0)};
    for (int e = 0; e < mesh.n_edges(); ++e) {
        const int t = mesh.edge[e].tri0;
        const TriangleGeometry g = mesh.geometry(t);
        const Vec2 grad = cr_gradient(mesh, g, ubar, t);
        const Vec2 m = mesh.edge_midpoint(e);
        const Vec2 value = grad - (0.5 * f_proj.value[t]) * (m - g.barycenter);
        out.dof[e] = mesh.edge_length(e) * dot(value, mesh.edge_normal(e));
    }
    return out;
}

Eigen::SparseMatrix<double> rt_mass_matrix(const Mesh& mesh, const Quadrature& quad) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(mesh.n_triangles()) * 9);
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const TriangleGeometry g = mesh.geometry(t);
        const auto& edges = mesh.tri_edge[t];
        const auto& sign = mesh.tri_edge_sign[t];
        double m_loc[3][3] = {};
        for (const auto& node : quad.tri.node) {
            const Vec2 x = g.point({node.l0, node.l1, node.l2});
            const double w = node.w * g.area;
            Vec2 phi[3];
            for (int k = 0; k < 3; ++k) phi[k] = rt_basis(g, k, x);
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) m_loc[j][k] += w * dot(phi[k], phi[j]);
        }
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                trip.emplace_back(edges[j], edges[k], sign[j] * sign[k] * m_loc[j][k]);
    }
    Eigen::SparseMatrix<double> m(mesh.n_edges(), mesh.n_edges());
    m.setFromTriplets(trip.begin(), trip.end());
    m.makeCompressed();
    return m;
}

double rt_l2_norm(const Eigen::SparseMatrix<double>& mass, const RTField& q) {
    Eigen::Map<const Eigen::VectorXd> x(q.dof.data(), q.dof.size());
    return std::sqrt(std::max(0.0, x.dot(mass * x)));
}

HelmholtzSplit helmholtz_split(const Mesh& mesh, const Quadrature& quad, const RTField& xi,
                               BcKind bc) {
    const int nv = mesh.n_vertices();
    const int ne = mesh.n_edges();
    const int nt = mesh.n_triangles();
    HelmholtzSplit out;

    // stream function system over S_h: (curl w, curl s) = (xi, curl s)
    std::vector<int> w_unknown(nv, -1);
    if (bc == BcKind::neumann) {
        std::vector<bool> on_boundary(nv, false);
        for (const auto& e : mesh.edge)
            if (e.boundary()) on_boundary[e.v0] = on_boundary[e.v1] = true;
        int next = 0;
        for (int v = 0; v < nv; ++v)
            if (!on_boundary[v]) w_unknown[v] = next++;
    } else {
        int next = 0;
        for (int v = 1; v < nv; ++v) w_unknown[v] = next++;  // vertex 0 pinned, shifted below
    }
    int nw = 0;
    for (int v = 0; v < nv; ++v) nw = std::max(nw, w_unknown[v] + 1);

    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nw);
    for (int t = 0; t < nt; ++t) {
        const TriangleGeometry g = mesh.geometry(t);
        for (int j = 0; j < 3; ++j) {
            const int row = w_unknown[mesh.tri[t][j]];
            if (row < 0) continue;
            for (int k = 0; k < 3; ++k) {
                const int col = w_unknown[mesh.tri[t][k]];
                if (col < 0) continue;
                trip.emplace_back(row, col, g.area * dot(g.grad_lambda[j], g.grad_lambda[k]));
            }
            const Vec2 curl_s = rot90cw(g.grad_lambda[j]);
            rhs[row] += integrate(quad.tri, g, [&](Vec2 x) {
                return dot(eval(mesh, g, xi, t, x), curl_s);
            });
        }
    }
    Eigen::SparseMatrix<double> A(nw, nw);
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();
    const Eigen::VectorXd wsol = ldlt_solve(A, rhs, out.report, "helmholtz_split");

    out.w.value.assign(nv, 0.0);
    for (int v = 0; v < nv; ++v)
        if (w_unknown[v] >= 0) out.w.value[v] = wsol[w_unknown[v]];
    if (bc != BcKind::neumann) {
        double integral = 0.0, area = 0.0;
        for (int t = 0; t < nt; ++t) {
            const auto& v = mesh.tri[t];
            const double a =
                signed_area(mesh.vertex[v[0]], mesh.vertex[v[1]], mesh.vertex[v[2]]);
            integral += a / 3.0 * (out.w.value[v[0]] + out.w.value[v[1]] + out.w.value[v[2]]);
            area += a;
        }
        const double shift = integral / area;
        for (double& wv : out.w.value) wv -= shift;
    }

    // curl-part dofs are tangential increments of w along each edge
    out.curl_part.dof.resize(ne);
    out.grad_part.dof.resize(ne);
    for (int e = 0; e < ne; ++e) {
        out.curl_part.dof[e] = out.w.value[mesh.edge[e].v1] - out.w.value[mesh.edge[e].v0];
        out.grad_part.dof[e] = xi.dof[e] - out.curl_part.dof[e];
    }

    const Eigen::SparseMatrix<double> mass = rt_mass_matrix(mesh, quad);
    Eigen::Map<const Eigen::VectorXd> gvec(out.grad_part.dof.data(), ne);
    Eigen::Map<const Eigen::VectorXd> cvec(out.curl_part.dof.data(), ne);
    const double ng = rt_l2_norm(mass, out.grad_part);
    const double nc = rt_l2_norm(mass, out.curl_part);
    out.orthogonality = std::abs(gvec.dot(mass * cvec)) / std::max(ng * nc, 1e-300);
    for (int t = 0; t < nt; ++t)
        out.max_div_curl = std::max(out.max_div_curl,
                                    std::abs(div_value(mesh, out.curl_part, t)));

    // potential of the grad part from the consistent normal equations
    std::vector<int> p_col(ne, -1);
    int ncol = 0;
    for (int e = 0; e < ne; ++e)
        if (bc != BcKind::neumann || !mesh.edge[e].boundary()) p_col[e] = ncol++;

    Eigen::VectorXd mg = mass * gvec;  // (grad part, Phi_e) for all edges
    std::vector<Eigen::Triplet<double>> btrip;
    Eigen::VectorXd brhs = Eigen::VectorXd::Zero(nt);
    for (int t = 0; t < nt; ++t)
        for (int k = 0; k < 3; ++k) {
            const int e = mesh.tri_edge[t][k];
            if (p_col[e] < 0) continue;
            btrip.emplace_back(t, p_col[e], static_cast<double>(mesh.tri_edge_sign[t][k]));
        }
    Eigen::SparseMatrix<double> B(nt, ncol);
    B.setFromTriplets(btrip.begin(), btrip.end());
    Eigen::VectorXd mg_cols(ncol);
    for (int e = 0; e < ne; ++e)
        if (p_col[e] >= 0) mg_cols[p_col[e]] = mg[e];
    Eigen::SparseMatrix<double> BBt = (B * Eigen::SparseMatrix<double>(B.transpose())).pruned();
    Eigen::VectorXd vrhs = -(B * mg_cols);

    Eigen::VectorXd vsol;
    if (bc == BcKind::neumann) {
        // constants are in the nullspace: pin the last triangle, then recenter
        const int n = nt - 1;
        Eigen::SparseMatrix<double> BBr = BBt.topLeftCorner(n, n);
        SolveReport rep;
        Eigen::VectorXd head = ldlt_solve(BBr, vrhs.head(n), rep, "helmholtz potential");
        vsol = Eigen::VectorXd::Zero(nt);
        vsol.head(n) = head;
        double integral = 0.0, area = 0.0;
        for (int t = 0; t < nt; ++t) {
            const auto& vv = mesh.tri[t];
            const double a =
                signed_area(mesh.vertex[vv[0]], mesh.vertex[vv[1]], mesh.vertex[vv[2]]);
            integral += a * vsol[t];
            area += a;
        }
        vsol.array() -= integral / area;
    } else {
        SolveReport rep;
        vsol = ldlt_solve(BBt, vrhs, rep, "helmholtz potential");
    }
    out.v.value.assign(vsol.data(), vsol.data() + nt);
    return out;
}

}  // namespace rtlab
