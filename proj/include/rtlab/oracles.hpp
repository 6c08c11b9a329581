#pragma once

#include <cstdint>
#include <iosfwd>

#include "rtlab/solver.hpp"

namespace rtlab {

/// Max relative defects of the exact-algebra checks over randomized trials.
struct OracleReport {
    double rt_duality = 0.0;
    double local_expansion = 0.0;
    double variational_identity = 0.0;
    double cr_rt_dofs = 0.0;
    double commuting = 0.0;
    double normal_trace = 0.0;
    double marini_gap = 0.0;        // dof-wise vs the mixed Poisson solve, n = 8
    double helmholtz_orth = 0.0;
    double helmholtz_div_curl = 0.0;

    bool pass() const;
};

OracleReport run_identity_oracles(int trials, std::uint64_t seed);
void print_oracles(const OracleReport& report, std::ostream& out);

/// Random strictly-CCW triangle with bounded aspect ratio.
TriangleGeometry random_triangle(std::uint64_t& state);

/// Uniform double in [-1, 1) from a splitmix64 state.
double random_unit(std::uint64_t& state);

}  // namespace rtlab
