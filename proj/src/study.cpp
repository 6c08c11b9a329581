#include "rtlab/study.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "rtlab/utils.hpp"

namespace rtlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class PerTriangle>
double l2_accumulate(const Mesh& mesh, PerTriangle&& sq) {
    const double total = parallel_sum(mesh.n_triangles(), [&](int begin, int end) {
        double s = 0.0;
        for (int t = begin; t < end; ++t) s += sq(t);
        return s;
    });
    return std::sqrt(std::max(0.0, total));
}

}  // namespace

double l2_error(const Mesh& mesh, const Quadrature& quad, const RTField& q_h, const VectorFn& q) {
    return l2_accumulate(mesh, [&](int t) {
        const TriangleGeometry g = mesh.geometry(t);
        return integrate(quad.tri, g, [&](Vec2 x) {
            const Vec2 d = q(x) - eval(mesh, g, q_h, t, x);
            return dot(d, d);
        });
    });
}

double l2_error(const Mesh& mesh, const Quadrature& quad, const RTField& a, const RTField& b) {
    RTField diff{a.dof};
    for (int e = 0; e < mesh.n_edges(); ++e) diff.dof[e] -= b.dof[e];
    return l2_accumulate(mesh, [&](int t) {
        const TriangleGeometry g = mesh.geometry(t);
        return integrate(quad.tri, g, [&](Vec2 x) {
            const Vec2 d = eval(mesh, g, diff, t, x);
            return dot(d, d);
        });
    });
}

double l2_error(const Mesh& mesh, const P0Field& a, const P0Field& b) {
    return l2_accumulate(mesh, [&](int t) {
        const auto& v = mesh.tri[t];
        const double area = signed_area(mesh.vertex[v[0]], mesh.vertex[v[1]], mesh.vertex[v[2]]);
        const double d = a.value[t] - b.value[t];
        return area * d * d;
    });
}

double l2_error(const Mesh& mesh, const Quadrature& quad, const VectorCRField& v_h,
                const VectorFn& q) {
    return l2_accumulate(mesh, [&](int t) {
        const TriangleGeometry g = mesh.geometry(t);
        return integrate(quad.tri, g, [&](Vec2 x) {
            const Vec2 d = q(x) - eval(mesh, g, v_h, t, x);
            return dot(d, d);
        });
    });
}

double l2_error(const Mesh& mesh, const Quadrature& quad, const CRField& v_h, const ScalarFn& v) {
    return l2_accumulate(mesh, [&](int t) {
        const TriangleGeometry g = mesh.geometry(t);
        return integrate(quad.tri, g, [&](Vec2 x) {
            const double d = v(x) - eval(mesh, g, v_h, t, x);
            return d * d;
        });
    });
}

double l2_div_error(const Mesh& mesh, const RTField& a, const RTField& b) {
    return l2_accumulate(mesh, [&](int t) {
        const TriangleGeometry g = mesh.geometry(t);
        const double d = div_value(mesh, g, a, t) - div_value(mesh, g, b, t);
        return g.area * d * d;
    });
}

double l2_grad_error(const Mesh& mesh, const Quadrature& quad, const CRField& v_h,
                     const VectorFn& grad) {
    return l2_accumulate(mesh, [&](int t) {
        const TriangleGeometry g = mesh.geometry(t);
        const Vec2 gh = cr_gradient(mesh, g, v_h, t);
        return integrate(quad.tri, g, [&](Vec2 x) {
            const Vec2 d = grad(x) - gh;
            return dot(d, d);
        });
    });
}

OrderFit fit_order(const std::vector<double>& errors, const std::vector<double>& h) {
    if (errors.size() != h.size())
        throw std::invalid_argument("fit_order: errors and h must have equal length");
    OrderFit out;
    if (h.size() < 2) throw std::invalid_argument("fit_order: need at least two levels");
    for (size_t k = 0; k + 1 < errors.size(); ++k) {
        if (errors[k] > 0.0 && errors[k + 1] > 0.0 && h[k] != h[k + 1])
            out.step.push_back(std::log(errors[k] / errors[k + 1]) / std::log(h[k] / h[k + 1]));
        else
            out.step.push_back(kNaN);
    }
    std::vector<double> lx, ly;
    for (size_t k = 0; k < errors.size(); ++k)
        if (errors[k] > 0.0) {
            lx.push_back(std::log(h[k]));
            ly.push_back(std::log(errors[k]));
        }
    out.ls_slope = least_squares_slope(lx, ly);
    return out;
}

Mesh family_mesh(const ExperimentConfig& config, int level) {
    switch (config.family) {
        case Family::uniform: {
            Mesh m = generate_uniform(config.n0);
            for (int k = 0; k < level; ++k) m = refine_regular(m);
            return m;
        }
        case Family::piecewise: {
            Mesh m = generate_piecewise_uniform(config.n0);
            for (int k = 0; k < level; ++k) m = refine_regular(m);
            return m;
        }
        case Family::perturbed:
            // regenerated per level so the displacement scales with the level's own h
            return generate_perturbed(config.n0 << level, config.alpha, config.amplitude,
                                      config.seed);
        case Family::file: {
            if (config.mesh_file.empty())
                throw std::invalid_argument("family_mesh: the file family needs a mesh file");
            Mesh m = read_mesh_file(config.mesh_file);
            for (int k = 0; k < level; ++k) m = refine_regular(m);
            return m;
        }
    }
    throw std::logic_error("family_mesh: unknown family");
}

namespace {

void dump_solution(const ExperimentConfig& config, int level, const std::vector<double>& p,
                   const std::vector<double>& u, const SolveReport& report) {
    if (config.dump_dir.empty()) return;
    const std::string base = config.dump_dir + "/level" + std::to_string(level);
    std::ofstream pf(base + "_p.csv");
    write_field_csv(p, pf);
    if (!u.empty()) {
        std::ofstream uf(base + "_u.csv");
        write_field_csv(u, uf);
    }
    std::ofstream log(base + "_solve.log");
    log << "method " << report.method << "\nunknowns " << report.unknowns
        << "\nrel_residual " << report.rel_residual << "\n";
}

LevelRecord run_mixed_level(const ExperimentConfig& config, const Mesh& mesh,
                            const ProblemSpec& problem, const Quadrature& quad, int level) {
    const MixedSolution sol = solve_mixed(mesh, problem, quad);
    const RTField pi_p = interpolate_rt(mesh, quad, problem.exact_p);
    const P0Field ph_u = project_p0(mesh, quad, problem.exact_u);
    const VectorCRField recovered = apply_gh(mesh, sol.p).field;

    LevelRecord rec;
    rec.nu = sol.report.unknowns;
    rec.h = mesh.max_diameter();
    rec.err_p = l2_error(mesh, quad, sol.p, problem.exact_p);
    rec.err_superclose = l2_error(mesh, quad, pi_p, sol.p);
    rec.err_div = l2_div_error(mesh, pi_p, sol.p);
    rec.err_u = l2_error(mesh, ph_u, sol.u);
    rec.err_recovery = l2_error(mesh, quad, recovered, problem.exact_p);
    rec.effectivity = estimator(mesh, quad, sol.p).eta / rec.err_p;
    dump_solution(config, level, sol.p.dof, sol.u.value, sol.report);
    return rec;
}

LevelRecord run_cr_level(const ExperimentConfig& config, const Mesh& mesh,
                         const ProblemSpec& problem, const Quadrature& quad, int level) {
    const CrSolution sol = solve_cr(mesh, quad, problem.f, CrRhs::pointwise);
    const CrSolution bar = solve_cr(mesh, quad, problem.f, CrRhs::projected);
    std::vector<Vec2> grad(mesh.n_triangles());
    for (int t = 0; t < mesh.n_triangles(); ++t)
        grad[t] = cr_gradient(mesh, mesh.geometry(t), sol.u, t);
    const VectorCRField recovered = apply_gh(mesh, grad).field;

    LevelRecord rec;
    rec.nu = sol.report.unknowns;
    rec.h = mesh.max_diameter();
    rec.err_p = l2_grad_error(mesh, quad, sol.u, problem.exact_grad_u);
    {
        CRField gap{bar.u.value};
        for (size_t e = 0; e < gap.value.size(); ++e) gap.value[e] -= sol.u.value[e];
        rec.err_superclose = l2_grad_error(mesh, quad, gap, [](Vec2) { return Vec2{0.0, 0.0}; });
    }
    rec.err_div = 0.0;
    rec.err_u = l2_error(mesh, quad, sol.u, problem.exact_u);
    rec.err_recovery = l2_error(mesh, quad, recovered, problem.exact_grad_u);
    {
        // ||G grad - grad|| / ||grad u - grad||
        double num_sq = 0.0;
        for (int t = 0; t < mesh.n_triangles(); ++t) {
            const TriangleGeometry g = mesh.geometry(t);
            num_sq += integrate(quad.tri, g, [&](Vec2 x) {
                const Vec2 d = eval(mesh, g, recovered, t, x) - grad[t];
                return dot(d, d);
            });
        }
        rec.effectivity = std::sqrt(num_sq) / rec.err_p;
    }
    dump_solution(config, level, sol.u.value, {}, sol.report);
    return rec;
}

}  // namespace

namespace {

void finish_report(ErrorReport& report) {
    if (report.level.size() < 2) return;  // orders unavailable
    std::vector<double> h;
    for (const auto& lv : report.level) h.push_back(lv.h);
    auto column = [&](double LevelRecord::*field) {
        std::vector<double> v;
        for (const auto& lv : report.level) v.push_back(lv.*field);
        return v;
    };
    report.ord_p = fit_order(column(&LevelRecord::err_p), h);
    report.ord_superclose = fit_order(column(&LevelRecord::err_superclose), h);
    report.ord_div = fit_order(column(&LevelRecord::err_div), h);
    report.ord_u = fit_order(column(&LevelRecord::err_u), h);
    report.ord_recovery = fit_order(column(&LevelRecord::err_recovery), h);
}

}  // namespace

ErrorReport run_experiment(const ExperimentConfig& config) {
    if (config.levels < 2)
        throw std::invalid_argument("run_experiment: need at least two levels to fit orders");
    if (config.quad_refine < 0 || config.quad_refine > 6)
        throw std::invalid_argument("run_experiment: quad_refine out of range");
    const Quadrature quad = Quadrature::standard().refined(config.quad_refine);

    ProblemSpec problem;
    switch (config.problem) {
        case ProblemKind::mixed: problem = sine_reaction_problem(); break;
        case ProblemKind::mixed_neumann: problem = sine_neumann_problem(); break;
        case ProblemKind::cr: problem = sine_poisson_problem(); break;
        case ProblemKind::convection: problem = sine_convection_problem(); break;
    }

    ErrorReport report;
    report.config = config;
    for (int level = 0; level < config.levels; ++level) {
        try {
            const Mesh mesh = family_mesh(config, level);
            report.level.push_back(config.problem == ProblemKind::cr
                                       ? run_cr_level(config, mesh, problem, quad, level)
                                       : run_mixed_level(config, mesh, problem, quad, level));
        } catch (const SolverError& err) {
            // abort, leaving the completed levels behind as a partial report
            if (!config.out_csv.empty() && !report.level.empty()) {
                finish_report(report);
                std::ofstream out(config.out_csv);
                if (out) write_report_csv(report, out);
            }
            throw;
        }
    }

    finish_report(report);

    if (!config.out_csv.empty()) {
        std::ofstream out(config.out_csv);
        if (!out) throw std::runtime_error("cannot open " + config.out_csv);
        write_report_csv(report, out);
    }
    if (!config.out_dat.empty()) {
        std::ofstream out(config.out_dat);
        if (!out) throw std::runtime_error("cannot open " + config.out_dat);
        write_report_dat(report, out);
    }
    return report;
}

namespace {

std::string fmt(double v, const char* spec) {
    if (std::isnan(v)) return "";
    char buf[48];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

double step_or_nan(const OrderFit& fit, size_t k) {
    return k < fit.step.size() ? fit.step[k] : kNaN;
}

}  // namespace

void write_report_csv(const ErrorReport& report, std::ostream& out) {
    out << "nu,h,err_p,ord_p,err_superclose,ord_superclose,err_div,ord_div,"
           "err_u,ord_u,err_recovery,ord_recovery,effectivity\n";
    for (size_t k = 0; k < report.level.size(); ++k) {
        const auto& lv = report.level[k];
        out << lv.nu << ',' << fmt(lv.h, "%.6e") << ',' << fmt(lv.err_p, "%.6e") << ','
            << fmt(step_or_nan(report.ord_p, k), "%.4f") << ',' << fmt(lv.err_superclose, "%.6e")
            << ',' << fmt(step_or_nan(report.ord_superclose, k), "%.4f") << ','
            << fmt(lv.err_div, "%.6e") << ',' << fmt(step_or_nan(report.ord_div, k), "%.4f")
            << ',' << fmt(lv.err_u, "%.6e") << ',' << fmt(step_or_nan(report.ord_u, k), "%.4f")
            << ',' << fmt(lv.err_recovery, "%.6e") << ','
            << fmt(step_or_nan(report.ord_recovery, k), "%.4f") << ','
            << fmt(lv.effectivity, "%.4f") << '\n';
    }
}

void write_report_dat(const ErrorReport& report, std::ostream& out) {
    out << "# log10(h) log10(err_p) log10(err_superclose) log10(err_div) "
           "log10(err_u) log10(err_recovery)\n";
    auto lg = [](double v) { return v > 0.0 ? std::log10(v) : kNaN; };
    for (const auto& lv : report.level) {
        char buf[200];
        std::snprintf(buf, sizeof(buf), "%.6f %.6f %.6f %.6f %.6f %.6f\n", lg(lv.h),
                      lg(lv.err_p), lg(lv.err_superclose), lg(lv.err_div), lg(lv.err_u),
                      lg(lv.err_recovery));
        out << buf;
    }
}

void print_report(const ErrorReport& report, std::ostream& out) {
    out << "  nu        h           err_p      ord    superclose  ord    err_u      ord    "
           "recovery   ord    effectivity\n";
    for (size_t k = 0; k < report.level.size(); ++k) {
        const auto& lv = report.level[k];
        char buf[240];
        std::snprintf(buf, sizeof(buf),
                      "%8d  %.4e  %.4e %6s  %.4e %6s  %.4e %6s  %.4e %6s  %8s\n", lv.nu, lv.h,
                      lv.err_p, fmt(step_or_nan(report.ord_p, k), "%.3f").c_str(),
                      lv.err_superclose,
                      fmt(step_or_nan(report.ord_superclose, k), "%.3f").c_str(), lv.err_u,
                      fmt(step_or_nan(report.ord_u, k), "%.3f").c_str(), lv.err_recovery,
                      fmt(step_or_nan(report.ord_recovery, k), "%.3f").c_str(),
                      fmt(lv.effectivity, "%.4f").c_str());
        out << buf;
    }
    char tail[160];
    std::snprintf(tail, sizeof(tail),
                  "least-squares orders: p %.3f, superclose %.3f, u %.3f, recovery %.3f\n",
                  report.ord_p.ls_slope, report.ord_superclose.ls_slope, report.ord_u.ls_slope,
                  report.ord_recovery.ls_slope);
    out << tail;
}

}  // namespace rtlab
