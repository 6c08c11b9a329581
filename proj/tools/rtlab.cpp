#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "rtlab/oracles.hpp"
#include "rtlab/structure.hpp"
#include "rtlab/study.hpp"
#include "rtlab/utils.hpp"

namespace {

using namespace rtlab;

struct RunOptions {
    std::string family = "uniform";
    int n0 = 8;
    int levels = 4;
    double alpha = 0.5;
    double amplitude = 0.25;
    std::uint64_t seed = 1;
    std::string problem = "mixed";
    std::string mesh_file;
    int quad_refine = 0;
    std::string out = "report.csv";
    std::string dat;
    std::string dump_dir;
};

Family parse_family(const std::string& name) {
    if (name == "uniform") return Family::uniform;
    if (name == "piecewise") return Family::piecewise;
    if (name == "perturbed") return Family::perturbed;
    if (name == "file") return Family::file;
    throw CLI::ValidationError("--family", "unknown family " + name);
}

int cmd_run(const RunOptions& opt) {
    ExperimentConfig config;
    config.family = parse_family(opt.family);
    config.n0 = opt.n0;
    config.levels = opt.levels;
    config.alpha = opt.alpha;
    config.amplitude = opt.amplitude;
    config.seed = opt.seed;
    config.mesh_file = opt.mesh_file;
    config.quad_refine = opt.quad_refine;
    config.out_csv = opt.out;
    config.out_dat = opt.dat;
    config.dump_dir = opt.dump_dir;
    if (opt.problem == "mixed")
        config.problem = ProblemKind::mixed;
    else if (opt.problem == "mixed-neumann")
        config.problem = ProblemKind::mixed_neumann;
    else if (opt.problem == "cr")
        config.problem = ProblemKind::cr;
    else
        throw CLI::ValidationError("--problem", "unknown problem " + opt.problem);

    std::cout << "config: family = " << opt.family << "\n"
              << "config: n0 = " << opt.n0 << "\n"
              << "config: levels = " << opt.levels << "\n"
              << "config: alpha = " << opt.alpha << "\n"
              << "config: amplitude = " << opt.amplitude << "\n"
              << "config: seed = " << opt.seed << "\n"
              << "config: problem = " << opt.problem << "\n"
              << "config: out = " << opt.out << "\n"
              << "config: threads = " << worker_count() << "\n";

    const ErrorReport report = run_experiment(config);
    print_report(report, std::cout);
    std::cout << "wrote " << opt.out;
    if (!opt.dat.empty()) std::cout << " and " << opt.dat;
    std::cout << "\n";
    return 0;
}

struct AnalyzeOptions {
    std::string mesh_file;
    std::string family;
    int n0 = 8;
    int levels = 1;
    double alpha = 1.0;
    double amplitude = 0.25;
    std::uint64_t seed = 1;
    double threshold_c = 1.0;
    std::string out;
    std::string write_mesh;
};

int cmd_analyze(const AnalyzeOptions& opt) {
    StructureOptions sopt;
    sopt.alpha = opt.alpha;
    sopt.threshold_c = opt.threshold_c;

    std::vector<Mesh> meshes;
    if (!opt.mesh_file.empty()) {
        meshes.push_back(read_mesh_file(opt.mesh_file));
        std::cout << "config: mesh = " << opt.mesh_file << "\n";
    } else if (!opt.family.empty()) {
        ExperimentConfig fc;
        fc.family = parse_family(opt.family);
        fc.n0 = opt.n0;
        fc.alpha = opt.alpha;
        fc.amplitude = opt.amplitude;
        fc.seed = opt.seed;
        for (int level = 0; level < opt.levels; ++level)
            meshes.push_back(family_mesh(fc, level));
        std::cout << "config: family = " << opt.family << ", n0 = " << opt.n0
                  << ", levels = " << opt.levels << "\n";
    } else {
        throw CLI::ValidationError("analyze-mesh", "need --mesh or --family");
    }
    std::cout << "config: alpha = " << opt.alpha << ", C = " << opt.threshold_c << "\n";
    if (!opt.write_mesh.empty()) {
        write_mesh_file(meshes.front(), opt.write_mesh);
        std::cout << "wrote " << opt.write_mesh << "\n";
    }

    const MeshStructureReport report = analyze_structure(meshes, sopt);
    write_structure_csv(report, std::cout);
    if (!opt.out.empty()) {
        std::ofstream out(opt.out);
        if (!out) throw std::runtime_error("cannot open " + opt.out);
        write_structure_csv(report, out);
        std::cout << "wrote " << opt.out << "\n";
    }
    return 0;
}

struct RecoverOptions {
    std::string mesh_file;
    std::string solution_file;
    std::string out_field = "recovered.csv";
    std::string out_indicators = "indicators.csv";
};

int cmd_recover(const RecoverOptions& opt) {
    const Mesh mesh = read_mesh_file(opt.mesh_file);
    std::ifstream in(opt.solution_file);
    if (!in) throw std::runtime_error("cannot open solution file: " + opt.solution_file);
    RTField p{read_scalar_csv(in)};
    if (static_cast<int>(p.dof.size()) != mesh.n_edges())
        throw std::runtime_error("solution has " + std::to_string(p.dof.size()) +
                                 " dofs, mesh has " + std::to_string(mesh.n_edges()) + " edges");
    std::cout << "config: mesh = " << opt.mesh_file << ", solution = " << opt.solution_file
              << "\n";

    const Quadrature quad = Quadrature::standard();
    const Recovered rec = apply_gh(mesh, p);
    const EstimatorResult est = estimator(mesh, quad, p);
    {
        std::ofstream out(opt.out_field);
        if (!out) throw std::runtime_error("cannot open " + opt.out_field);
        write_field_csv(rec.field.value, out);
    }
    {
        std::ofstream out(opt.out_indicators);
        if (!out) throw std::runtime_error("cannot open " + opt.out_indicators);
        write_indicator_csv(est, out);
    }
    std::cout << "eta = " << est.eta << "\n"
              << "wrote " << opt.out_field << " and " << opt.out_indicators << "\n";
    return 0;
}

int cmd_verify(int trials, std::uint64_t seed) {
    std::cout << "config: trials = " << trials << ", seed = " << seed << "\n";
    const OracleReport report = run_identity_oracles(trials, seed);
    print_oracles(report, std::cout);
    if (!report.pass()) {
        std::cerr << "identity oracle defect out of tolerance\n";
        return 1;
    }
    std::cout << "all identity oracles within tolerance\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Raviart-Thomas / Crouzeix-Raviart finite element laboratory"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "plain key = value file; qualify keys by subcommand, e.g. 'run.n0 = 8' "
                   "or a [run] section (flags override)");

    RunOptions run;
    CLI::App* run_cmd = app.add_subcommand("run", "run a convergence experiment");
    run_cmd->add_option("--family", run.family, "uniform | piecewise | perturbed | file")
        ->capture_default_str();
    run_cmd->add_option("--mesh", run.mesh_file, "level-0 mesh for --family file");
    run_cmd->add_option("--n0", run.n0, "initial subdivisions per side")->capture_default_str();
    run_cmd->add_option("--levels", run.levels, "refinement levels (>= 2)")
        ->capture_default_str();
    run_cmd->add_option("--alpha", run.alpha, "perturbation exponent")->capture_default_str();
    run_cmd->add_option("--amplitude", run.amplitude, "perturbation amplitude as a fraction of h^(1+alpha)")
        ->capture_default_str();
    run_cmd->add_option("--seed", run.seed, "perturbation seed")->capture_default_str();
    run_cmd->add_option("--problem", run.problem, "mixed | mixed-neumann | cr")
        ->capture_default_str();
    run_cmd->add_option("--quad-refine", run.quad_refine,
                        "composite refinement levels on the quadrature rules")
        ->capture_default_str();
    run_cmd->add_option("--out", run.out, "error table CSV path")->capture_default_str();
    run_cmd->add_option("--dat", run.dat, "gnuplot-compatible log-log output path");
    run_cmd->add_option("--dump-dir", run.dump_dir, "write per-level solution CSVs here");

    AnalyzeOptions ana;
    CLI::App* ana_cmd = app.add_subcommand("analyze-mesh", "classify mesh structure");
    ana_cmd->add_option("--mesh", ana.mesh_file, "mesh file (V E T header format)");
    ana_cmd->add_option("--family", ana.family, "generate instead: uniform | piecewise | perturbed");
    ana_cmd->add_option("--n0", ana.n0, "initial subdivisions per side")->capture_default_str();
    ana_cmd->add_option("--levels", ana.levels, "levels to generate")->capture_default_str();
    ana_cmd->add_option("--alpha", ana.alpha, "exponent hypothesis")->capture_default_str();
    ana_cmd->add_option("--amplitude", ana.amplitude, "perturbation amplitude")
        ->capture_default_str();
    ana_cmd->add_option("--seed", ana.seed, "perturbation seed")->capture_default_str();
    ana_cmd->add_option("--C", ana.threshold_c, "classification constant")->capture_default_str();
    ana_cmd->add_option("--out", ana.out, "report CSV path");
    ana_cmd->add_option("--write-mesh", ana.write_mesh, "dump the first generated mesh to a file");

    int trials = 100;
    std::uint64_t seed = 7;
    CLI::App* ver_cmd = app.add_subcommand("verify-identities", "run the exact-identity oracles");
    ver_cmd->add_option("--trials", trials, "randomized trials per oracle")->capture_default_str();
    ver_cmd->add_option("--seed", seed, "random seed")->capture_default_str();

    RecoverOptions rec;
    CLI::App* rec_cmd = app.add_subcommand("recover", "postprocess a flux field");
    rec_cmd->add_option("--mesh", rec.mesh_file, "mesh file")->required();
    rec_cmd->add_option("--solution", rec.solution_file, "edge dof CSV (index,value)")->required();
    rec_cmd->add_option("--out-field", rec.out_field, "recovered field CSV")
        ->capture_default_str();
    rec_cmd->add_option("--out-indicators", rec.out_indicators, "per-triangle indicator CSV")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
        if (run_cmd->parsed()) return cmd_run(run);
        if (ana_cmd->parsed()) return cmd_analyze(ana);
        if (ver_cmd->parsed()) return cmd_verify(trials, seed);
        if (rec_cmd->parsed()) return cmd_recover(rec);
    } catch (const CLI::ParseError& err) {
        if (err.get_exit_code() == 0) return app.exit(err);  // --help
        app.exit(err);
        return 1;
    } catch (const rtlab::SolverError& err) {
        std::cerr << "solver failure: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
