#include "rtlab/problems.hpp"

#include <cmath>

namespace rtlab {

namespace {

double sine_u(Vec2 p) { return std::sin(2.0 * M_PI * p.x) * std::sin(M_PI * p.y); }

Vec2 sine_grad(Vec2 p) {
    return {2.0 * M_PI * std::cos(2.0 * M_PI * p.x) * std::sin(M_PI * p.y),
            M_PI * std::sin(2.0 * M_PI * p.x) * std::cos(M_PI * p.y)};
}

constexpr double kLap = 5.0 * M_PI * M_PI;  // -Laplace of sine_u divided by sine_u

}  // namespace

ProblemSpec sine_reaction_problem() {
    ProblemSpec p;
    p.c = [](Vec2) { return 1.0; };
    p.f = [](Vec2 x) { return (kLap + 1.0) * sine_u(x); };
    p.g = [](Vec2) { return 0.0; };
    p.exact_u = sine_u;
    p.exact_grad_u = sine_grad;
    p.exact_p = sine_grad;
    return p;
}

ProblemSpec sine_poisson_problem() {
    ProblemSpec p;
    p.f = [](Vec2 x) { return kLap * sine_u(x); };
    p.g = [](Vec2) { return 0.0; };
    p.exact_u = sine_u;
    p.exact_grad_u = sine_grad;
    p.exact_p = sine_grad;
    return p;
}

ProblemSpec sine_convection_problem() {
    ProblemSpec p;
    const Vec2 b{1.0, 2.0};
    p.b = [b](Vec2) { return b; };
    p.c = [](Vec2) { return 1.0; };
    p.f = [b](Vec2 x) { return (kLap + 1.0) * sine_u(x) - dot(b, sine_grad(x)); };
    p.g = [](Vec2) { return 0.0; };
    p.exact_u = sine_u;
    p.exact_grad_u = sine_grad;
    p.exact_p = [b](Vec2 x) { return sine_grad(x) + sine_u(x) * b; };
    return p;
}

ProblemSpec sine_neumann_problem() {
    ProblemSpec p = sine_reaction_problem();
    p.bc = BcKind::neumann;
    p.g = [](Vec2 x) {
        // p . n on the unit square boundary
        const Vec2 grad = sine_grad(x);
        if (x.x <= 0.0) return -grad.x;
        if (x.x >= 1.0) return grad.x;
        if (x.y <= 0.0) return -grad.y;
        return grad.y;
    };
    return p;
}

ProblemSpec polynomial_poisson_problem() {
    ProblemSpec p;
    p.f = [](Vec2 x) { return 2.0 * (x.x * (1.0 - x.x) + x.y * (1.0 - x.y)); };
    p.g = [](Vec2) { return 0.0; };
    p.exact_u = [](Vec2 x) { return x.x * x.y * (1.0 - x.x) * (1.0 - x.y); };
    p.exact_grad_u = [](Vec2 x) {
        return Vec2{(1.0 - 2.0 * x.x) * x.y * (1.0 - x.y), x.x * (1.0 - x.x) * (1.0 - 2.0 * x.y)};
    };
    p.exact_p = p.exact_grad_u;
    return p;
}

ProblemSpec quadratic_dirichlet_problem() {
    ProblemSpec p;
    p.f = [](Vec2) { return -4.0; };
    p.g = [](Vec2 x) { return x.x * x.x + x.y * x.y; };
    p.exact_u = [](Vec2 x) { return x.x * x.x + x.y * x.y; };
    p.exact_grad_u = [](Vec2 x) { return Vec2{2.0 * x.x, 2.0 * x.y}; };
    p.exact_p = p.exact_grad_u;
    return p;
}

ProblemSpec quadratic_neumann_problem() {
    ProblemSpec p = quadratic_dirichlet_problem();
    p.bc = BcKind::neumann;
    p.g = [](Vec2 x) {
        if (x.x <= 0.0) return -2.0 * x.x;
        if (x.x >= 1.0) return 2.0 * x.x;
        if (x.y <= 0.0) return -2.0 * x.y;
        return 2.0 * x.y;
    };
    return p;
}

}  // namespace rtlab
