#pragma once

#include "rtlab/solver.hpp"

namespace rtlab {

/// -Laplace u + u = f with u = sin(2 pi x) sin(pi y), homogeneous Dirichlet.
ProblemSpec sine_reaction_problem();

/// -Laplace u = f, same u, homogeneous Dirichlet.
ProblemSpec sine_poisson_problem();

/// Same u with A = I, b = (1,2), c = 1; f derived analytically, g = 0.
ProblemSpec sine_convection_problem();

/// -Laplace u + u = f, same u, Neumann data g = grad u . n.
ProblemSpec sine_neumann_problem();

/// -Laplace u = f with the polynomial u = x y (1-x)(1-y); all default
/// quadrature rules are exact for this data.
ProblemSpec polynomial_poisson_problem();

/// -Laplace u = f with u = x^2 + y^2 (f = -4, nonzero Dirichlet trace);
/// p = (2x, 2y) lies in the RT space, so the discrete solution is exact.
ProblemSpec quadratic_dirichlet_problem();

/// Pure Neumann variant of the same quadratic problem (compatible data).
ProblemSpec quadratic_neumann_problem();

}  // namespace rtlab
