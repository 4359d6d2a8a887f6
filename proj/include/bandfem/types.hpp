#ifndef BANDFEM_TYPES_HPP
#define BANDFEM_TYPES_HPP

#include <array>
#include <cmath>
#include <cstddef>

namespace bandfem {

// Points and vectors live in R^2 or R^3; the third component is zero-padded
// in the planar case so that most loops can be written once.
using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Symmetric 3x3 (or padded 2x2) matrix, row-major.
using Mat3 = std::array<std::array<double, 3>, 3>;

inline Mat3 identity_mat3() {
    return {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
}

inline Vec3 matvec(const Mat3& m, const Vec3& v) {
    return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
}

// Axis-aligned box in R^dim.
struct Box {
    int dim = 0;
    Vec3 lo{0.0, 0.0, 0.0};
    Vec3 hi{0.0, 0.0, 0.0};

    double extent(int axis) const { return hi[axis] - lo[axis]; }
    bool contains(const Vec3& x, double tol = 0.0) const {
        for (int k = 0; k < dim; ++k)
            if (x[k] < lo[k] - tol || x[k] > hi[k] + tol) return false;
        return true;
    }
};

// x^n for small non-negative integer n by repeated squaring.
inline double ipow(double x, int n) {
    double r = 1.0;
    double b = x;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

} // namespace bandfem

#endif
