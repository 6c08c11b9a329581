#pragma once

#include <functional>

#include "rtlab/fields.hpp"
#include "rtlab/quadrature.hpp"

namespace rtlab {

using ScalarFn = std::function<double(Vec2)>;
using VectorFn = std::function<Vec2(Vec2)>;

/// Affine vector field value0 + grad * x.
struct LinearVectorField {
    Mat2 grad;
    Vec2 value0;
    Vec2 operator()(Vec2 x) const { return value0 + grad * x; }
};

/// RT interpolant: dof per edge = integral of q . n_e (global normal).
RTField interpolate_rt(const Mesh& mesh, const Quadrature& quad, const VectorFn& q);

/// RT interpolant with the edge-midpoint rule for the dofs. Classic low-order
/// variant; its O(h^2)-relative dof perturbation matters for superclose
/// comparisons, so reference tables built with it need this exact object.
RTField interpolate_rt_midpoint(const Mesh& mesh, const VectorFn& q);

/// L2 projection onto piecewise constants.
P0Field project_p0(const Mesh& mesh, const Quadrature& quad, const ScalarFn& v);

/// CR interpolant: edge midpoint value = edge mean.
CRField interpolate_cr(const Mesh& mesh, const Quadrature& quad, const ScalarFn& v);
VectorCRField interpolate_cr(const Mesh& mesh, const Quadrature& quad, const VectorFn& q);

/// Exact RT dofs of a (vector) CR field: the edge mean equals the midpoint value.
RTField rt_dofs_of(const Mesh& mesh, const VectorCRField& v);

/// Exact RT dofs of a field that is affine on each triangle, from per-triangle
/// midpoint evaluation (single-valued traces assumed).
RTField rt_dofs_of_piecewise_affine(const Mesh& mesh,
                                    const std::function<Vec2(int, Vec2)>& field);

/// Max over triangles of |div(Pi_h q) - mean boundary flux| / scale, with the
/// boundary flux integrated by the same edge rule but with outward normals taken
/// directly from the geometry. Exercises the edge orientation bookkeeping.
double commuting_diagram_defect(const Mesh& mesh, const Quadrature& quad, const VectorFn& q);

/// Max norm over quadrature nodes of p_L - Pi p_L - curl r for the local
/// expansion r = -sum_k (l_k^2/2)(n_k . dp/dt_k) lambda_{k-1} lambda_{k+1}.
double local_expansion_defect(const TriangleGeometry& g, const LinearVectorField& p,
                              const Quadrature& quad);

/// |LHS - RHS| of the local variational identity relating
/// int_tau (p_L - Pi p_L) . q to weighted edge moments of p_L's derivatives.
double local_variational_identity_defect(const TriangleGeometry& g, const LinearVectorField& p,
                                         Vec2 q, const Quadrature& quad);

/// Max |N_j(phi_k) - delta_jk| over the 9 pairs, by edge quadrature.
double rt_duality_defect(const TriangleGeometry& g, const EdgeRule& rule);

/// Dof-wise relative gap between Pi_h(I_CR q) and Pi_h q.
double cr_rt_interpolation_defect(const Mesh& mesh, const Quadrature& quad, const VectorFn& q);

/// Max over interior edges of the two-sided normal-trace mismatch at midpoints.
double normal_trace_jump(const Mesh& mesh, const RTField& q);

}  // namespace rtlab
