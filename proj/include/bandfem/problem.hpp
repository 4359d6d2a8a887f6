#ifndef BANDFEM_PROBLEM_HPP
#define BANDFEM_PROBLEM_HPP

#include <functional>

#include "bandfem/geometry.hpp"
#include "bandfem/types.hpp"

namespace bandfem {

// Data of the surface PDE  -div_Gamma(A grad_Gamma u) + a0 u = f  on Gamma.
// All fields are functions of points on Gamma; the assembly extends them into
// the band through the closest-point map. exact_u / exact_surface_gradient are
// null when no reference solution is known.
struct SurfaceProblem {
    std::function<Mat3(const Vec3&)> diffusion;             // A, symmetric
    std::function<double(const Vec3&)> reaction;            // a0 >= alpha0 > 0
    std::function<double(const Vec3&)> source;              // f
    std::function<double(const Vec3&)> exact_u;             // u on Gamma
    std::function<Vec3(const Vec3&)> exact_surface_gradient;  // grad_Gamma u on Gamma

    bool has_exact() const { return static_cast<bool>(exact_u); }
};

// A = I, a0 = 1, f = 1: the exact solution is u = 1, reproduced exactly by
// the discrete scheme (up to solver tolerance).
SurfaceProblem constant_problem();

// Unit-coefficient problem whose exact solution on the unit circle/sphere is
// u(p) = p1^2 - p2^2. The source is 5u on the circle and 7u on the sphere
// (eigenfunction of the surface Laplacian with eigenvalue -4 resp. -6).
SurfaceProblem manufactured_problem(SurfaceKind kind);

// Just the source field of the manufactured problem.
std::function<double(const Vec3&)> manufactured_source(SurfaceKind kind);

// A = I, a0 = 1 and the oscillatory source of the pretzel showcase,
// f(x) = 10000 sin(5(x1+x2+x3) + 2.5). No exact solution.
SurfaceProblem pretzel_problem();

} // namespace bandfem

#endif
