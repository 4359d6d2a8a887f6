#include "bandfem/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace bandfem {

namespace {

Mat3 unit_diffusion(const Vec3&) { return identity_mat3(); }
double unit_scalar(const Vec3&) { return 1.0; }

} // namespace

SurfaceProblem constant_problem() {
    SurfaceProblem p;
    p.diffusion = unit_diffusion;
    p.reaction = unit_scalar;
    p.source = unit_scalar;
    p.exact_u = unit_scalar;
    p.exact_surface_gradient = [](const Vec3&) { return Vec3{0.0, 0.0, 0.0}; };
    return p;
}

SurfaceProblem manufactured_problem(SurfaceKind kind) {
    SurfaceProblem p;
    p.diffusion = unit_diffusion;
    p.reaction = unit_scalar;
    p.source = manufactured_source(kind);
    p.exact_u = [](const Vec3& x) { return (x[0] * x[0] - x[1] * x[1]) / dot(x, x); };
    // On |p| = 1: grad of p1^2 - p2^2 minus its radial part, which is
    // already tangential since (grad u . p) = 2u and the correction -2up
    // removes exactly that component.
    p.exact_surface_gradient = [](const Vec3& x) {
        const double u = x[0] * x[0] - x[1] * x[1];
        return Vec3{2.0 * x[0], -2.0 * x[1], 0.0} - (2.0 * u) * x;
    };
    return p;
}

std::function<double(const Vec3&)> manufactured_source(SurfaceKind kind) {
    // u = p1^2 - p2^2 restricted to the unit circle/sphere satisfies
    // -lap_Gamma u = 4u (circle) resp. 6u (sphere), so f = u - lap_Gamma u.
    if (kind == SurfaceKind::circle)
        return [](const Vec3& x) { return 5.0 * (x[0] * x[0] - x[1] * x[1]); };
    if (kind == SurfaceKind::sphere)
        return [](const Vec3& x) { return 7.0 * (x[0] * x[0] - x[1] * x[1]); };
    throw std::invalid_argument("manufactured_source: only circle and sphere have one");
}

SurfaceProblem pretzel_problem() {
    SurfaceProblem p;
    p.diffusion = unit_diffusion;
    p.reaction = unit_scalar;
    p.source = [](const Vec3& x) {
        return 10000.0 * std::sin(5.0 * (x[0] + x[1] + x[2]) + 2.5);
    };
    return p;
}

} // namespace bandfem
