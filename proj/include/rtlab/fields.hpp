#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "rtlab/mesh.hpp"

namespace rtlab {

/// Lowest-order Raviart-Thomas field: one flux coefficient per global edge,
/// taken with respect to the global edge normal.
struct RTField {
    std::vector<double> dof;
};

/// One value per triangle.
struct P0Field {
    std::vector<double> value;
};

/// Crouzeix-Raviart field: one value per global edge (the edge midpoint value).
struct CRField {
    std::vector<double> value;
};

struct VectorCRField {
    std::vector<Vec2> value;
};

/// Continuous piecewise-linear field: one value per vertex.
struct P1Field {
    std::vector<double> value;
};

/// phi_k(x) = (x - a_k) / (2|tau|); orientation signs live in the mesh incidence.
inline Vec2 rt_basis(const TriangleGeometry& g, int k, Vec2 x) {
    return (x - g.vertex[k]) / (2.0 * g.area);
}

/// CR basis on edge k: 1 - 2 lambda_k.
inline double cr_basis(const TriangleGeometry& g, int k, Vec2 x) {
    return 1.0 - 2.0 * g.lambda(x)[k];
}

/// Local dofs of an RT field on triangle t, oriented with outward normals.
std::array<double, 3> rt_local_dofs(const Mesh& mesh, const RTField& q, int t);

Vec2 eval(const Mesh& mesh, const TriangleGeometry& g, const RTField& q, int t, Vec2 x);
Vec2 eval(const Mesh& mesh, const RTField& q, int t, Vec2 x);

/// Per-triangle constant divergence: (sum of signed local dofs) / |tau|.
double div_value(const Mesh& mesh, const RTField& q, int t);
double div_value(const Mesh& mesh, const TriangleGeometry& g, const RTField& q, int t);

double eval(const Mesh& mesh, const TriangleGeometry& g, const CRField& v, int t, Vec2 x);
Vec2 eval(const Mesh& mesh, const TriangleGeometry& g, const VectorCRField& v, int t, Vec2 x);
double eval(const Mesh& mesh, const TriangleGeometry& g, const P1Field& v, int t, Vec2 x);
inline double eval(const Mesh&, const P0Field& v, int t) { return v.value[t]; }

/// Piecewise gradient of a scalar CR field (constant per triangle).
Vec2 cr_gradient(const Mesh& mesh, const TriangleGeometry& g, const CRField& v, int t);

/// Vector curl (dw/dy, -dw/dx) of a P1 field, constant per triangle.
Vec2 p1_curl(const Mesh& mesh, const TriangleGeometry& g, const P1Field& w, int t);

/// Debug serialization: "index,value" (or "index,x,y") rows.
void write_field_csv(const std::vector<double>& values, std::ostream& out);
void write_field_csv(const std::vector<Vec2>& values, std::ostream& out);
std::vector<double> read_scalar_csv(std::istream& in);

}  // namespace rtlab
