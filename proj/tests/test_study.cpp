#include <doctest.h>

#include <filesystem>
#include <cmath>
#include <sstream>

#include "rtlab/study.hpp"

using namespace rtlab;

namespace {
const Quadrature quad = Quadrature::standard();
}

TEST_CASE("fit_order") {
    SUBCASE("table row pair") {
        const OrderFit fit = fit_order({1.033e-1, 2.620e-2}, {1.0, 0.5});
        REQUIRE(fit.step.size() == 1);
        CHECK(fit.step[0] == doctest::Approx(1.979).epsilon(5e-4));
    }
    SUBCASE("exact halving is first order") {
        const OrderFit fit = fit_order({1.0, 0.5, 0.25}, {0.4, 0.2, 0.1});
        CHECK(fit.step[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(fit.step[1] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(fit.ls_slope == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("constant errors have zero order") {
        const OrderFit fit = fit_order({0.7, 0.7}, {1.0, 0.5});
        CHECK(fit.step[0] == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("zero errors leave the order undefined") {
        const OrderFit fit = fit_order({0.5, 0.0}, {1.0, 0.5});
        CHECK(std::isnan(fit.step[0]));
    }
    CHECK_THROWS_AS(fit_order({1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("error norms") {
    const Mesh m = generate_uniform(8);
    SUBCASE("identical fields have zero distance") {
        RTField q{std::vector<double>(m.n_edges(), 0.3)};
        CHECK(l2_error(m, quad, q, q) == 0.0);
        P0Field u{std::vector<double>(m.n_triangles(), 1.0)};
        CHECK(l2_error(m, u, u) == 0.0);
        CHECK(l2_div_error(m, q, q) == 0.0);
    }
    SUBCASE("interpolation error norm agrees with a refined quadrature") {
        const ProblemSpec prob = sine_reaction_problem();
        const Quadrature fine = quad.refined(2);
        // default-rule quadrature error decays like h^6: ~1e-5 relative on the
        // 8x8 grid, below 1e-6 from 16x16 on
        {
            const RTField pi_p = interpolate_rt(m, quad, prob.exact_p);
            const double coarse = l2_error(m, quad, pi_p, prob.exact_p);
            const double refined = l2_error(m, fine, pi_p, prob.exact_p);
            CHECK(std::abs(coarse - refined) <= 1e-5 * refined);
        }
        {
            const Mesh m16 = generate_uniform(16);
            const RTField pi_p = interpolate_rt(m16, quad, prob.exact_p);
            const double coarse = l2_error(m16, quad, pi_p, prob.exact_p);
            const double refined = l2_error(m16, fine, pi_p, prob.exact_p);
            CHECK(std::abs(coarse - refined) <= 1e-6 * refined);
        }
    }
    SUBCASE("interpolation error of the manufactured flux decays at first order") {
        const ProblemSpec prob = sine_reaction_problem();
        std::vector<double> err, h;
        for (int n : {8, 16, 32}) {
            const Mesh mesh = generate_uniform(n);
            const RTField pi_p = interpolate_rt(mesh, quad, prob.exact_p);
            err.push_back(l2_error(mesh, quad, pi_p, prob.exact_p));
            h.push_back(mesh.max_diameter());
        }
        CHECK(fit_order(err, h).ls_slope == doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("experiment harness") {
    ExperimentConfig config;
    config.family = Family::uniform;
    config.n0 = 4;
    config.levels = 3;
    config.problem = ProblemKind::mixed;
    const ErrorReport report = run_experiment(config);
    REQUIRE(report.level.size() == 3);
    CHECK(report.level[0].nu == 88);   // 5 n^2 + 2 n at n = 4
    CHECK(report.level[1].nu == 336);
    CHECK(report.level[2].nu == 1312);

    SUBCASE("triangle inequality between the tabulated norms") {
        const ProblemSpec prob = sine_reaction_problem();
        for (int level = 0; level < 3; ++level) {
            const Mesh mesh = family_mesh(config, level);
            const RTField pi_p = interpolate_rt(mesh, quad, prob.exact_p);
            const double interp = l2_error(mesh, quad, pi_p, prob.exact_p);
            const auto& lv = report.level[level];
            CHECK(lv.err_superclose <= lv.err_p + interp + 1e-12);
        }
    }
    SUBCASE("csv output is deterministic and carries the fixed header") {
        std::stringstream a, b;
        write_report_csv(report, a);
        write_report_csv(report, b);
        CHECK(a.str() == b.str());
        CHECK(a.str().substr(0, 5) == "nu,h,");
        CHECK(a.str().find("err_recovery,ord_recovery,effectivity") != std::string::npos);
        // last level carries no order entries
        const std::string text = a.str();
        const size_t last = text.find_last_of('\n', text.size() - 2);
        CHECK(text.substr(last).find(",,") != std::string::npos);
    }
    SUBCASE("gnuplot companion file") {
        std::stringstream dat;
        write_report_dat(report, dat);
        CHECK(dat.str().find("# log10(h)") == 0);
    }
}

TEST_CASE("norms are invariant under vertex renumbering") {
    ExperimentConfig config;
    config.n0 = 6;
    config.levels = 2;
    const ErrorReport report = run_experiment(config);

    // same mesh with reversed vertex numbering
    const Mesh m = family_mesh(config, 0);
    const int nv = m.n_vertices();
    std::vector<Vec2> v(nv);
    for (int i = 0; i < nv; ++i) v[nv - 1 - i] = m.vertex[i];
    std::vector<std::array<int, 3>> tris;
    for (const auto& t : m.tri) tris.push_back({nv - 1 - t[0], nv - 1 - t[1], nv - 1 - t[2]});
    const Mesh renumbered = Mesh::build(std::move(v), std::move(tris));

    const ProblemSpec prob = sine_reaction_problem();
    const MixedSolution sol = solve_mixed(renumbered, prob, quad);
    const double err_p = l2_error(renumbered, quad, sol.p, prob.exact_p);
    CHECK(err_p == doctest::Approx(report.level[0].err_p).epsilon(1e-9));
}

TEST_CASE("file-based mesh family refines the loaded mesh") {
    const std::string path =
        (std::filesystem::temp_directory_path() / "rtlab_family_mesh.txt").string();
    write_mesh_file(generate_perturbed(4, 0.5, 0.2, 6), path);
    ExperimentConfig config;
    config.family = Family::file;
    config.mesh_file = path;
    config.levels = 2;
    const ErrorReport report = run_experiment(config);
    std::filesystem::remove(path);
    REQUIRE(report.level.size() == 2);
    CHECK(report.level[0].nu == 5 * 16 + 2 * 4);
    CHECK(report.level[1].h == doctest::Approx(report.level[0].h / 2.0).epsilon(1e-12));
    CHECK(report.ord_u.ls_slope > 1.5);

    ExperimentConfig missing;
    missing.family = Family::file;
    CHECK_THROWS_AS(run_experiment(missing), std::invalid_argument);
}

TEST_CASE("field csv round trip") {
    std::vector<double> values{0.5, -1.25, 3e-7, 0.0};
    std::stringstream buffer;
    write_field_csv(values, buffer);
    const std::vector<double> back = read_scalar_csv(buffer);
    REQUIRE(back.size() == values.size());
    for (size_t i = 0; i < values.size(); ++i) CHECK(back[i] == values[i]);
    std::stringstream bad("0,1.0\n2,3.0\n");
    CHECK_THROWS(read_scalar_csv(bad));  // gap in the indices
}

TEST_CASE("cr experiment rows") {
    ExperimentConfig config;
    config.n0 = 4;
    config.levels = 2;
    config.problem = ProblemKind::cr;
    const ErrorReport report = run_experiment(config);
    REQUIRE(report.level.size() == 2);
    CHECK(report.level[0].nu == generate_uniform(4).n_interior_edges());
    CHECK(report.level[0].err_div == 0.0);
    CHECK(report.level[0].err_p > 0.0);
    CHECK(report.level[0].err_recovery > 0.0);
}
