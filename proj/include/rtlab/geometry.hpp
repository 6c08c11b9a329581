#pragma once

#include <array>
#include <cmath>

namespace rtlab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
inline Vec2& operator+=(Vec2& a, Vec2 b) { a.x += b.x; a.y += b.y; return a; }
inline Vec2& operator-=(Vec2& a, Vec2 b) { a.x -= b.x; a.y -= b.y; return a; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Quarter turn counterclockwise (the `rot` matrix).
inline Vec2 rot90(Vec2 v) { return {-v.y, v.x}; }
/// Quarter turn clockwise (rot^{-1}).
inline Vec2 rot90cw(Vec2 v) { return {v.y, -v.x}; }

struct Mat2 {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    double det() const { return a11 * a22 - a12 * a21; }
    Mat2 inverse() const {
        const double d = det();
        return {a22 / d, -a12 / d, -a21 / d, a11 / d};
    }
};

inline Vec2 operator*(const Mat2& m, Vec2 v) {
    return {m.a11 * v.x + m.a12 * v.y, m.a21 * v.x + m.a22 * v.y};
}

/// Per-triangle geometric quantities. Vertices are counterclockwise; edge k is
/// opposite vertex k and runs from vertex k+1 to vertex k+2 (indices mod 3),
/// so the tangents follow the counterclockwise boundary traversal.
struct TriangleGeometry {
    std::array<Vec2, 3> vertex;
    double area = 0.0;
    std::array<double, 3> edge_length{};  // l_k
    std::array<double, 3> angle{};        // theta_k, at vertex k
    std::array<double, 3> height{};       // d_k, vertex k to edge k
    std::array<Vec2, 3> tangent{};        // t_k, counterclockwise
    std::array<Vec2, 3> normal{};         // n_k, outward unit
    std::array<Vec2, 3> grad_lambda{};    // -n_k / d_k
    Vec2 barycenter;

    Vec2 edge_midpoint(int k) const {
        return 0.5 * (vertex[(k + 1) % 3] + vertex[(k + 2) % 3]);
    }
    double diameter() const {
        return std::max(edge_length[0], std::max(edge_length[1], edge_length[2]));
    }
    /// Barycentric coordinates of x.
    std::array<double, 3> lambda(Vec2 x) const {
        std::array<double, 3> l;
        for (int k = 0; k < 3; ++k)
            l[k] = 1.0 - dot(x - vertex[k], normal[k]) / height[k];
        return l;
    }
    Vec2 point(const std::array<double, 3>& l) const {
        return l[0] * vertex[0] + l[1] * vertex[1] + l[2] * vertex[2];
    }
};

TriangleGeometry triangle_geometry(Vec2 a0, Vec2 a1, Vec2 a2);

inline double signed_area(Vec2 a0, Vec2 a1, Vec2 a2) {
    return 0.5 * cross(a1 - a0, a2 - a0);
}

}  // namespace rtlab
