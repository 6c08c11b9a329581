#pragma once

#include <functional>

#include "rtlab/fields.hpp"
#include "rtlab/quadrature.hpp"

namespace rtlab {

/// Evaluates a per-triangle vector field at a point of that triangle.
using TriVectorEval = std::function<Vec2(int tri, Vec2 x)>;

struct Recovered {
    VectorCRField field;
    int fallbacks = 0;  // boundary midpoints where the extrapolation patch left the mesh
};

/// Edge-midpoint recovery: interior midpoints average the two one-sided values;
/// a boundary midpoint m extrapolates 2 G(m') - G(m'') along a patch (e', e''),
/// where e' is an interior edge of m's triangle and e'' the edge of the
/// neighbor across e' sharing no vertex with e. Among the complete patches the
/// most inward-pointing one is used, so the result depends only on the
/// geometry, not on edge numbering. Without a complete patch the value falls
/// back to the one-sided trace (warned once, with a count).
Recovered apply_gh(const Mesh& mesh, const TriVectorEval& field);
Recovered apply_gh(const Mesh& mesh, const RTField& q);
/// Piecewise-constant input (e.g. a broken gradient).
Recovered apply_gh(const Mesh& mesh, const std::vector<Vec2>& per_triangle);

struct EstimatorResult {
    double eta = 0.0;
    std::vector<double> eta_tau;
};

/// eta_tau = ||G_h p_h - p_h|| over each triangle; eta is the l2 total.
EstimatorResult estimator(const Mesh& mesh, const Quadrature& quad, const RTField& p_h);

/// Per-triangle indicator CSV: "triangle,eta" rows.
void write_indicator_csv(const EstimatorResult& result, std::ostream& out);

}  // namespace rtlab
