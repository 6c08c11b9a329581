#include "rtlab/oracles.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "rtlab/problems.hpp"

namespace rtlab {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double u01(std::uint64_t& state) { return (splitmix64(state) >> 11) * 0x1.0p-53; }

/// Random polynomial vector field of total degree <= 3.
struct CubicField {
    double cx[10], cy[10];

    static CubicField random(std::uint64_t& state) {
        CubicField f;
        for (int i = 0; i < 10; ++i) {
            f.cx[i] = 2.0 * u01(state) - 1.0;
            f.cy[i] = 2.0 * u01(state) - 1.0;
        }
        return f;
    }
    Vec2 operator()(Vec2 p) const {
        const double m[10] = {1.0,         p.x,       p.y,       p.x * p.x, p.x * p.y,
                              p.y * p.y,   p.x * p.x * p.x,      p.x * p.x * p.y,
                              p.x * p.y * p.y,        p.y * p.y * p.y};
        Vec2 out{0.0, 0.0};
        for (int i = 0; i < 10; ++i) out += Vec2{cx[i] * m[i], cy[i] * m[i]};
        return out;
    }
};

}  // namespace

double random_unit(std::uint64_t& state) { return 2.0 * u01(state) - 1.0; }

TriangleGeometry random_triangle(std::uint64_t& state) {
    for (;;) {
        Vec2 a{u01(state), u01(state)};
        Vec2 b{u01(state), u01(state)};
        Vec2 c{u01(state), u01(state)};
        if (signed_area(a, b, c) < 0.0) std::swap(b, c);
        TriangleGeometry g;
        if (signed_area(a, b, c) < 0.05) continue;
        g = triangle_geometry(a, b, c);
        if (g.diameter() > 1.2) continue;
        if (2.0 * g.area / (g.diameter() * g.diameter()) < 0.2) continue;  // aspect guard
        return g;
    }
}

bool OracleReport::pass() const {
    const double tol = 1e-12;
    return rt_duality <= tol && local_expansion <= tol && variational_identity <= tol &&
           cr_rt_dofs <= tol && commuting <= tol && normal_trace <= tol && marini_gap <= 1e-8 &&
           helmholtz_orth <= 1e-10 && helmholtz_div_curl <= 1e-12;
}

OracleReport run_identity_oracles(int trials, std::uint64_t seed) {
    OracleReport rep;
    const Quadrature quad = Quadrature::standard();
    std::uint64_t state = seed;

    for (int trial = 0; trial < trials; ++trial) {
        const TriangleGeometry g = random_triangle(state);
        const double h = g.diameter();

        rep.rt_duality = std::max(rep.rt_duality, rt_duality_defect(g, quad.edge));

        LinearVectorField p;
        p.grad = {random_unit(state), random_unit(state), random_unit(state), random_unit(state)};
        p.value0 = {random_unit(state), random_unit(state)};
        const double gscale =
            std::sqrt(p.grad.a11 * p.grad.a11 + p.grad.a12 * p.grad.a12 +
                      p.grad.a21 * p.grad.a21 + p.grad.a22 * p.grad.a22);

        rep.local_expansion = std::max(
            rep.local_expansion, local_expansion_defect(g, p, quad) / (gscale * h));

        const Vec2 q{random_unit(state), random_unit(state)};
        rep.variational_identity =
            std::max(rep.variational_identity,
                     local_variational_identity_defect(g, p, q, quad) /
                         (h * h * norm(q) * gscale));
    }

    // mesh-level identities on an unstructured (perturbed) mesh
    const Mesh mesh = generate_perturbed(5, 0.6, 0.2, seed ^ 0x5eedull);
    for (int trial = 0; trial < trials; ++trial) {
        const CubicField q = CubicField::random(state);
        rep.cr_rt_dofs = std::max(rep.cr_rt_dofs, cr_rt_interpolation_defect(mesh, quad, q));
        rep.commuting = std::max(rep.commuting, commuting_diagram_defect(mesh, quad, q));
        RTField qh = interpolate_rt(mesh, quad, q);
        double scale = 0.0;
        for (double d : qh.dof) scale = std::max(scale, std::abs(d));
        rep.normal_trace =
            std::max(rep.normal_trace,
                     normal_trace_jump(mesh, qh) * mesh.max_diameter() / scale);
    }
    // transcendental field through the same checks
    const VectorFn wave = [](Vec2 x) {
        return Vec2{std::sin(M_PI * x.x) * std::sin(M_PI * x.y), std::cos(M_PI * x.x * x.y)};
    };
    rep.commuting = std::max(rep.commuting, commuting_diagram_defect(mesh, quad, wave));
    rep.cr_rt_dofs = std::max(rep.cr_rt_dofs, cr_rt_interpolation_defect(mesh, quad, wave));

    {
        const Mesh grid = generate_uniform(8);
        const ProblemSpec poisson = sine_poisson_problem();
        const MixedSolution mixed = solve_mixed(grid, poisson, quad);
        const CrSolution bar = solve_cr(grid, quad, poisson.f, CrRhs::projected);
        const RTField rebuilt = marini_reconstruct(grid, bar.u, bar.f_proj);
        for (int e = 0; e < grid.n_edges(); ++e)
            rep.marini_gap =
                std::max(rep.marini_gap, std::abs(rebuilt.dof[e] - mixed.p.dof[e]));

        RTField xi{std::vector<double>(grid.n_edges())};
        std::uint64_t s2 = seed ^ 0xabcdull;
        for (double& d : xi.dof) d = random_unit(s2);
        const HelmholtzSplit split = helmholtz_split(grid, quad, xi, BcKind::dirichlet);
        rep.helmholtz_orth = split.orthogonality;
        rep.helmholtz_div_curl = split.max_div_curl;
    }
    return rep;
}

void print_oracles(const OracleReport& report, std::ostream& out) {
    char buf[96];
    auto line = [&](const char* name, double v, double tol) {
        std::snprintf(buf, sizeof(buf), "  %-28s %.3e   (tol %.0e)\n", name, v, tol);
        out << buf;
    };
    line("RT dof duality", report.rt_duality, 1e-12);
    line("local expansion", report.local_expansion, 1e-12);
    line("local variational identity", report.variational_identity, 1e-12);
    line("CR/RT interpolation dofs", report.cr_rt_dofs, 1e-12);
    line("commuting diagram", report.commuting, 1e-12);
    line("normal-trace continuity", report.normal_trace, 1e-12);
    line("Marini reconstruction gap", report.marini_gap, 1e-8);
    line("Helmholtz orthogonality", report.helmholtz_orth, 1e-10);
    line("Helmholtz div of curl part", report.helmholtz_div_curl, 1e-12);
}

}  // namespace rtlab
