#pragma once

#include <Eigen/Sparse>
#include <stdexcept>
#include <string>

#include "rtlab/interpolate.hpp"

namespace rtlab {

enum class BcKind { dirichlet, neumann };

/// Thrown when a linear solve fails or misses the residual contract.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Coefficients and data of -div(A grad u + b u) + c u = f. Null callbacks for
/// A, b, c mean identity / zero. g is the Dirichlet trace or the Neumann flux
/// p.n (outward normal), depending on bc.
struct ProblemSpec {
    std::function<Mat2(Vec2)> A;
    VectorFn b;
    ScalarFn c;
    ScalarFn f;
    ScalarFn g;
    BcKind bc = BcKind::dirichlet;

    // optional manufactured solution for error studies
    ScalarFn exact_u;
    VectorFn exact_grad_u;
    VectorFn exact_p;

    Mat2 coeff_A(Vec2 x) const { return A ? A(x) : Mat2::identity(); }
    Vec2 coeff_b(Vec2 x) const { return b ? b(x) : Vec2{0.0, 0.0}; }
    double coeff_c(Vec2 x) const { return c ? c(x) : 0.0; }
    Mat2 alpha(Vec2 x) const { return coeff_A(x).inverse(); }
    Vec2 beta(Vec2 x) const { return alpha(x) * coeff_b(x); }
};

struct SolveReport {
    double rel_residual = 0.0;
    int unknowns = 0;
    std::string method;
};

/// Saddle system on (edge dofs, triangle dofs); row-compressed storage.
/// With the Neumann constraint applied, boundary-edge dofs are eliminated and
/// recorded in p_fixed.
struct MixedSystem {
    Eigen::SparseMatrix<double> A;
    Eigen::VectorXd rhs;
    BcKind bc = BcKind::dirichlet;
    int n_p_unknowns = 0;
    int n_u_unknowns = 0;
    std::vector<int> p_unknown;    // per edge: unknown index or -1
    std::vector<double> p_fixed;   // imposed dof where p_unknown == -1
    bool mean_pinned = false;
};

struct MixedSolution {
    RTField p;
    P0Field u;
    SolveReport report;
};

MixedSystem assemble_mixed(const Mesh& mesh, const ProblemSpec& problem, const Quadrature& quad);

/// Eliminates boundary-edge dofs (fixed to the edge flux of g) from a system
/// assembled without boundary conditions; pins mean(u) = 0 when c is absent.
MixedSystem apply_neumann(const Mesh& mesh, const ProblemSpec& problem, const MixedSystem& full);

MixedSolution solve_mixed(const Mesh& mesh, const MixedSystem& system);
MixedSolution solve_mixed(const Mesh& mesh, const ProblemSpec& problem, const Quadrature& quad);

enum class CrRhs { pointwise, projected };

struct CrSolution {
    CRField u;
    P0Field f_proj;  // P_h f, kept for the flux reconstruction
    SolveReport report;
};

/// CR method for -Laplace u = f with zero boundary midpoint values; the rhs is
/// (f, v_h) or (P_h f, v_h) depending on rhs_kind.
CrSolution solve_cr(const Mesh& mesh, const Quadrature& quad, const ScalarFn& f, CrRhs rhs_kind);

/// Closed-form flux p(x) = grad ubar - (P_h f / 2)(x - barycenter), returned as
/// RT dofs; coincides with the mixed Poisson flux when ubar solves the
/// projected-rhs CR system.
RTField marini_reconstruct(const Mesh& mesh, const CRField& ubar, const P0Field& f_proj);

struct HelmholtzSplit {
    P1Field w;
    RTField curl_part;  // dofs of curl w
    RTField grad_part;  // xi - curl part
    P0Field v;          // potential of the grad part
    double orthogonality = 0.0;  // |(grad,curl)| / (||grad|| ||curl||)
    double max_div_curl = 0.0;   // max per-triangle |div curl_part|
    SolveReport report;
};

/// L2-orthogonal splitting of an RT field into grad_h V_h + curl S_h. The
/// stream function w is zero-mean (zero-trace under the Neumann variant).
HelmholtzSplit helmholtz_split(const Mesh& mesh, const Quadrature& quad, const RTField& xi,
                               BcKind bc);

/// RT mass matrix with identity coefficient (edge dofs only).
Eigen::SparseMatrix<double> rt_mass_matrix(const Mesh& mesh, const Quadrature& quad);

/// sqrt(x' M x) for an RT coefficient vector.
double rt_l2_norm(const Eigen::SparseMatrix<double>& mass, const RTField& q);

}  // namespace rtlab
