#include "rtlab/fields.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace rtlab {

std::array<double, 3> rt_local_dofs(const Mesh& mesh, const RTField& q, int t) {
    std::array<double, 3> d;
    for (int k = 0; k < 3; ++k)
        d[k] = mesh.tri_edge_sign[t][k] * q.dof[mesh.tri_edge[t][k]];
    return d;
}

Vec2 eval(const Mesh& mesh, const TriangleGeometry& g, const RTField& q, int t, Vec2 x) {
    const auto d = rt_local_dofs(mesh, q, t);
    Vec2 out{0.0, 0.0};
    for (int k = 0; k < 3; ++k) out += d[k] * rt_basis(g, k, x);
    return out;
}

Vec2 eval(const Mesh& mesh, const RTField& q, int t, Vec2 x) {
    return eval(mesh, mesh.geometry(t), q, t, x);
}

double div_value(const Mesh& mesh, const TriangleGeometry& g, const RTField& q, int t) {
    const auto d = rt_local_dofs(mesh, q, t);
    return (d[0] + d[1] + d[2]) / g.area;
}

double div_value(const Mesh& mesh, const RTField& q, int t) {
    return div_value(mesh, mesh.geometry(t), q, t);
}

double eval(const Mesh& mesh, const TriangleGeometry& g, const CRField& v, int t, Vec2 x) {
    const auto l = g.lambda(x);
    double out = 0.0;
    for (int k = 0; k < 3; ++k) out += v.value[mesh.tri_edge[t][k]] * (1.0 - 2.0 * l[k]);
    return out;
}

Vec2 eval(const Mesh& mesh, const TriangleGeometry& g, const VectorCRField& v, int t, Vec2 x) {
    const auto l = g.lambda(x);
    Vec2 out{0.0, 0.0};
    for (int k = 0; k < 3; ++k) out += (1.0 - 2.0 * l[k]) * v.value[mesh.tri_edge[t][k]];
    return out;
}

double eval(const Mesh& mesh, const TriangleGeometry& g, const P1Field& v, int t, Vec2 x) {
    const auto l = g.lambda(x);
    double out = 0.0;
    for (int k = 0; k < 3; ++k) out += v.value[mesh.tri[t][k]] * l[k];
    return out;
}

Vec2 cr_gradient(const Mesh& mesh, const TriangleGeometry& g, const CRField& v, int t) {
    Vec2 out{0.0, 0.0};
    for (int k = 0; k < 3; ++k)
        out += (-2.0 * v.value[mesh.tri_edge[t][k]]) * g.grad_lambda[k];
    return out;
}

Vec2 p1_curl(const Mesh& mesh, const TriangleGeometry& g, const P1Field& w, int t) {
    Vec2 grad{0.0, 0.0};
    for (int k = 0; k < 3; ++k) grad += w.value[mesh.tri[t][k]] * g.grad_lambda[k];
    return rot90cw(grad);
}

void write_field_csv(const std::vector<double>& values, std::ostream& out) {
    char buf[64];
    for (size_t i = 0; i < values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i, values[i]);
        out << buf;
    }
}

void write_field_csv(const std::vector<Vec2>& values, std::ostream& out) {
    char buf[96];
    for (size_t i = 0; i < values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", i, values[i].x, values[i].y);
        out << buf;
    }
}

std::vector<double> read_scalar_csv(std::istream& in) {
    std::vector<double> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string idx, val;
        if (!std::getline(ls, idx, ',') || !std::getline(ls, val))
            throw std::runtime_error("field csv: expected 'index,value' rows");
        const size_t i = std::stoul(idx);
        if (i != out.size()) throw std::runtime_error("field csv: indices must be consecutive");
        out.push_back(std::stod(val));
    }
    return out;
}

}  // namespace rtlab
