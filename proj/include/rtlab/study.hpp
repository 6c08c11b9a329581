#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "rtlab/problems.hpp"
#include "rtlab/recovery.hpp"

namespace rtlab {

// ---- error norms -----------------------------------------------------------

double l2_error(const Mesh& mesh, const Quadrature& quad, const RTField& q_h, const VectorFn& q);
double l2_error(const Mesh& mesh, const Quadrature& quad, const RTField& a, const RTField& b);
double l2_error(const Mesh& mesh, const P0Field& a, const P0Field& b);
double l2_error(const Mesh& mesh, const Quadrature& quad, const VectorCRField& v_h,
                const VectorFn& q);
double l2_error(const Mesh& mesh, const Quadrature& quad, const CRField& v_h, const ScalarFn& v);
/// || div(a - b) || from the per-triangle constant divergences.
double l2_div_error(const Mesh& mesh, const RTField& a, const RTField& b);
/// Broken-gradient error of a scalar CR field against an analytic gradient.
double l2_grad_error(const Mesh& mesh, const Quadrature& quad, const CRField& v_h,
                     const VectorFn& grad);

// ---- convergence orders -----------------------------------------------------

struct OrderFit {
    std::vector<double> step;  // order between level k and k+1 (NaN where undefined)
    double ls_slope = 0.0;     // log-log least-squares slope vs h
};

OrderFit fit_order(const std::vector<double>& errors, const std::vector<double>& h);

// ---- experiment harness -----------------------------------------------------

enum class Family { uniform, piecewise, perturbed, file };
enum class ProblemKind { mixed, mixed_neumann, cr, convection };

struct ExperimentConfig {
    Family family = Family::uniform;
    int n0 = 8;
    int levels = 4;
    double alpha = 0.5;       // perturbed family only
    double amplitude = 0.25;  // perturbed family only
    std::uint64_t seed = 1;
    std::string mesh_file;    // file family: level 0, refined upward
    ProblemKind problem = ProblemKind::mixed;
    int quad_refine = 0;   // composite refinement levels on the default rules
    std::string out_csv;   // empty: no file output
    std::string out_dat;
    std::string dump_dir;  // per-level solution dumps when set
};

struct LevelRecord {
    int nu = 0;
    double h = 0.0;
    double err_p = 0.0;
    double err_superclose = 0.0;
    double err_div = 0.0;
    double err_u = 0.0;
    double err_recovery = 0.0;
    double effectivity = 0.0;
};

struct ErrorReport {
    ExperimentConfig config;
    std::vector<LevelRecord> level;
    OrderFit ord_p, ord_superclose, ord_div, ord_u, ord_recovery;
};

/// Generates the mesh family, solves each level, and fills the error table.
/// A solver failure aborts the run with SolverError after writing the levels
/// completed so far to out_csv (the CLI maps this to exit code 2).
ErrorReport run_experiment(const ExperimentConfig& config);

/// Mesh for level k of the family described by config.
Mesh family_mesh(const ExperimentConfig& config, int level);

void write_report_csv(const ErrorReport& report, std::ostream& out);
void write_report_dat(const ErrorReport& report, std::ostream& out);
void print_report(const ErrorReport& report, std::ostream& out);

}  // namespace rtlab
