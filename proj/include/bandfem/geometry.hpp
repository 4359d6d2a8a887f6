#ifndef BANDFEM_GEOMETRY_HPP
#define BANDFEM_GEOMETRY_HPP

#include <functional>
#include <string>

#include "bandfem/types.hpp"

namespace bandfem {

enum class SurfaceKind { circle, sphere, pretzel, custom };

// Closed hypersurface Gamma given implicitly as the zero set of a level-set
// function phi on an axis-aligned box. c0/c1 bound |grad phi| from below/above
// on the band around Gamma that the solver works in.
struct LevelSetGeometry {
    SurfaceKind kind = SurfaceKind::custom;
    int dimension = 0;  // ambient dimension, 2 or 3
    Box domain;
    double c0 = 0.0;
    double c1 = 0.0;
    std::function<double(const Vec3&)> phi;
    std::function<Vec3(const Vec3&)> grad_phi;
    // Optional analytic Hessian; when absent the Newton projection falls back
    // to central differences of grad_phi.
    std::function<Mat3(const Vec3&)> hess_phi;
};

LevelSetGeometry make_circle();
LevelSetGeometry make_sphere();
LevelSetGeometry make_pretzel();

// Lookup by the names accepted in config files: "circle", "sphere", "pretzel".
// Throws std::invalid_argument for anything else.
LevelSetGeometry geometry_by_name(const std::string& name);

// Upper bound for |grad phi| near {phi = 0}, estimated by sampling a dense
// grid of the region {|phi| <= band_value} and adding a 10% safety margin.
double estimate_c1(const LevelSetGeometry& geometry, double band_value, int samples_per_axis = 64);

// Compactly supported bump profile: cos^{2(q+1)}(r) on [-pi/2, pi/2], exactly
// zero outside. Even, nonincreasing in |r|, values in [0, 1].
double sigma(int degree_q, double r);

// Integral of the profile over its support, pi * binom(2q+2, q+1) / 4^(q+1).
double profile_mass(int degree_q);

// Weight function rho(x) = sigma(phi(x)/epsilon) concentrating volume
// integrals onto a band of width ~epsilon around Gamma.
struct PhaseFieldProfile {
    int degree_q = 1;
    double epsilon = 0.0;
    double gamma = 0.0;  // epsilon = gamma * h

    double rho_of_phi(double phi_value) const { return sigma(degree_q, phi_value / epsilon); }
    double rho(const LevelSetGeometry& geometry, const Vec3& x) const {
        return rho_of_phi(geometry.phi(x));
    }
};

// Derived band constants for a given mesh size / band width / gradient bound.
struct BandParameters {
    double h = 0.0;
    double epsilon = 0.0;
    double half_width = 0.0;   // epsilon * arccos(h/epsilon), element selection threshold
    double hat_epsilon = 0.0;  // half_width - c1*h; positive iff gamma > 1/r0
    double c2 = 0.0;           // pi/2 + c1
    double r0 = 0.0;           // unique zero of arccos(r) - c1*r in (0,1)
};

// Unique zero of r -> arccos(r) - c1*r, found by bisection on (0,1).
double compute_r0(double c1);

// Throws std::invalid_argument unless 0 < h < epsilon. hat_epsilon may come
// out negative; callers decide whether that is acceptable.
BandParameters band_parameters(double h, double epsilon, double c1);

// Closest point on Gamma. Analytic x/|x| for circle and sphere; otherwise a
// damped Newton iteration on {phi(p) = 0, (x - p) - lambda*grad phi(p) = 0}.
// Throws std::runtime_error with the residuals if Newton fails to converge.
Vec3 closest_point(const LevelSetGeometry& geometry, const Vec3& x);

} // namespace bandfem

#endif
