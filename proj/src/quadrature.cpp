#include "bandfem/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bandfem {

namespace {

using Bary = std::array<double, 4>;

void push(QuadratureRule& r, const Bary& b, double w) {
    r.points.push_back(b);
    r.weights.push_back(w);
}

// 3 permutations of (a, a, 1-2a).
void orbit_s21(QuadratureRule& r, double a, double w) {
    const double c = 1.0 - 2.0 * a;
    push(r, {a, a, c, 0.0}, w);
    push(r, {a, c, a, 0.0}, w);
    push(r, {c, a, a, 0.0}, w);
}

// 6 permutations of (a, b, 1-a-b).
void orbit_s111(QuadratureRule& r, double a, double b, double w) {
    const double c = 1.0 - a - b;
    push(r, {a, b, c, 0.0}, w);
    push(r, {a, c, b, 0.0}, w);
    push(r, {b, a, c, 0.0}, w);
    push(r, {b, c, a, 0.0}, w);
    push(r, {c, a, b, 0.0}, w);
    push(r, {c, b, a, 0.0}, w);
}

// 4 permutations of (a, a, a, 1-3a).
void orbit_s31(QuadratureRule& r, double a, double w) {
    const double c = 1.0 - 3.0 * a;
    push(r, {a, a, a, c}, w);
    push(r, {a, a, c, a}, w);
    push(r, {a, c, a, a}, w);
    push(r, {c, a, a, a}, w);
}

// 12 permutations of (a, a, b, 1-2a-b).
void orbit_s211(QuadratureRule& r, double a, double b, double w) {
    const double c = 1.0 - 2.0 * a - b;
    push(r, {a, a, b, c}, w);
    push(r, {a, a, c, b}, w);
    push(r, {a, b, a, c}, w);
    push(r, {a, b, c, a}, w);
    push(r, {a, c, a, b}, w);
    push(r, {a, c, b, a}, w);
    push(r, {b, a, a, c}, w);
    push(r, {b, a, c, a}, w);
    push(r, {b, c, a, a}, w);
    push(r, {c, a, a, b}, w);
    push(r, {c, a, b, a}, w);
    push(r, {c, b, a, a}, w);
}

QuadratureRule make_tri_centroid() {
    QuadratureRule r{2, 1, {}, {}};
    push(r, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0}, 1.0);
    return r;
}

// Edge-midpoint rule, exact to degree 2 on the triangle.
QuadratureRule make_tri_deg2() {
    QuadratureRule r{2, 2, {}, {}};
    orbit_s21(r, 0.5, 1.0 / 3.0);
    return r;
}

// 12-point symmetric triangle rule of degree 6 (Dunavant family); orbit
// parameters refined to full double precision against the moment equations.
QuadratureRule make_tri_deg6() {
    QuadratureRule r{2, 6, {}, {}};
    orbit_s21(r, 0.06308901449150222834, 0.050844906370206816921);
    orbit_s21(r, 0.24928674517091042129, 0.11678627572637936603);
    orbit_s111(r, 0.053145049844816947353, 0.31035245103378440542, 0.082851075618373575194);
    return r;
}

QuadratureRule make_tet_centroid() {
    QuadratureRule r{3, 1, {}, {}};
    push(r, {0.25, 0.25, 0.25, 0.25}, 1.0);
    return r;
}

// Classical 4-point tetrahedron rule of degree 2:
// a = (5 + 3*sqrt(5))/20, b = (5 - sqrt(5))/20.
QuadratureRule make_tet_deg2() {
    QuadratureRule r{3, 2, {}, {}};
    const double b = 0.13819660112501051518;
    orbit_s31(r, b, 0.25);
    return r;
}

// 24-point symmetric tetrahedron rule of degree 6 (Keast family); constants
// refined to full double precision against the moment equations. The S211
// weight is exactly 27/560.
QuadratureRule make_tet_deg6() {
    QuadratureRule r{3, 6, {}, {}};
    orbit_s31(r, 0.21460287125915202929, 0.039922750258167492100);
    orbit_s31(r, 0.040673958534611353116, 0.010077211055320642948);
    orbit_s31(r, 0.32233789014227551034, 0.055357181543654722095);
    orbit_s211(r, 0.063661001875017525299, 0.26967233145831580803, 27.0 / 560.0);
    return r;
}

} // namespace

const QuadratureRule& rule_for(int dimension, int degree_q) {
    static const QuadratureRule tri1 = make_tri_centroid();
    static const QuadratureRule tri2 = make_tri_deg2();
    static const QuadratureRule tri6 = make_tri_deg6();
    static const QuadratureRule tet1 = make_tet_centroid();
    static const QuadratureRule tet2 = make_tet_deg2();
    static const QuadratureRule tet6 = make_tet_deg6();

    if (dimension == 2) {
        if (degree_q == 1) return tri1;
        if (degree_q == 2) return tri2;
        if (degree_q == 6) return tri6;
    } else if (dimension == 3) {
        if (degree_q == 1) return tet1;
        if (degree_q == 2) return tet2;
        if (degree_q == 6) return tet6;
    }
    throw std::invalid_argument("no tabulated rule for dimension " + std::to_string(dimension) +
                                ", degree " + std::to_string(degree_q));
}

double simplex_measure(const Vec3* v, int dim) {
    if (dim == 2) {
        const Vec3 e1 = v[1] - v[0];
        const Vec3 e2 = v[2] - v[0];
        return 0.5 * (e1[0] * e2[1] - e1[1] * e2[0]);
    }
    const Vec3 e1 = v[1] - v[0];
    const Vec3 e2 = v[2] - v[0];
    const Vec3 e3 = v[3] - v[0];
    return dot(e1, cross(e2, e3)) / 6.0;
}

std::vector<MappedPoint> map_to_element(const QuadratureRule& rule, const Vec3* v, int dim) {
    if (rule.dimension != dim)
        throw std::invalid_argument("rule dimension does not match simplex dimension");

    double scale = 0.0;
    for (int i = 0; i <= dim; ++i)
        for (int j = i + 1; j <= dim; ++j) scale = std::max(scale, norm(v[j] - v[i]));
    const double vol = std::abs(simplex_measure(v, dim));
    if (vol <= 1e-14 * ipow(scale, dim))
        throw std::invalid_argument("degenerate simplex in map_to_element");

    std::vector<MappedPoint> out;
    out.reserve(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const auto& b = rule.points[i];
        Vec3 p{0.0, 0.0, 0.0};
        for (int j = 0; j <= dim; ++j) p = p + b[j] * v[j];
        out.push_back({p, rule.weights[i] * vol});
    }
    return out;
}

} // namespace bandfem
