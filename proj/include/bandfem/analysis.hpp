#ifndef BANDFEM_ANALYSIS_HPP
#define BANDFEM_ANALYSIS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bandfem/assembly.hpp"
#include "bandfem/mesh.hpp"
#include "bandfem/problem.hpp"

namespace bandfem {

// Parameters of one convergence study; also the schema of config files.
struct StudyConfig {
    std::string example;     // circle | sphere | pretzel
    int q = 1;               // quadrature exactness degree / profile exponent
    double gamma = 5.333;    // band width epsilon = gamma * h
    int levels = 1;
    double h0 = 0.0;         // coarsest grid spacing (required)
    int element_order = 1;   // 1 = linear, 2 = quadratic
    double cg_tol = 1e-12;
    std::string csv_path;    // empty = no CSV output
    std::string vtk_path;    // empty = no VTK output
    int surface_samples = 200;  // L, surface-quadrature resolution for E3/E4
};

struct StudyRow {
    double h = 0.0;
    double epsilon = 0.0;
    double E1 = 0.0, E2 = 0.0, E3 = 0.0, E4 = 0.0;
    // Orders of convergence relative to the previous row; absent on the first.
    std::optional<double> eoc1, eoc2, eoc3, eoc4;
};

struct ConvergenceTable {
    std::string example;
    int q = 0;
    int element_order = 1;
    double gamma = 0.0;
    std::vector<StudyRow> rows;
};

// Band error functionals
//   E1 = eps^-1 sum_T Q_T[ rho |I_h u_exact - u_h|^2 ],
//   E2 = eps^-1 sum_T Q_T[ rho |grad(I_h u_exact - u_h)|^2 ],
// where I_h interpolates the closest-point extension of the exact solution at
// the nodes of the element order implied by the coefficient vector length.
// Throws std::invalid_argument when the problem has no exact solution.
std::pair<double, double> error_E1_E2(const SimplicialBandMesh& mesh, const QuadratureRule& rule,
                                      const PhaseFieldProfile& profile,
                                      const std::vector<double>& u_h,
                                      const SurfaceProblem& problem);

// Surface errors sampled at L equispaced circle points x_l,
//   E3 = sum_l (2 pi / L) |u - u_h|^2(x_l),
//   E4 = the same with tangential gradients, where grad_Gamma u_h is the bulk
//   gradient of u_h projected with the analytic normal grad phi / |grad phi|.
std::pair<double, double> error_E3_E4_circle(const SimplicialBandMesh& mesh,
                                             const std::vector<double>& u_h,
                                             const SurfaceProblem& problem, int L = 200);

// Latitude-longitude sampling of the unit sphere with 2L x L points and
// weights (pi/L)^2 sin(l pi / L).
std::pair<double, double> error_E3_E4_sphere(const SimplicialBandMesh& mesh,
                                             const std::vector<double>& u_h,
                                             const SurfaceProblem& problem, int L = 200);

// eoc_k = log(E_{k-1}/E_k) / log(h_{k-1}/h_k) for k = 1..size-1.
// Requires equal lengths >= 2, strictly decreasing hs, positive errors.
std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& hs);

// Value and gradient of the finite element function at a band point.
std::pair<double, Vec3> evaluate_fe(const SimplicialBandMesh& mesh,
                                    const std::vector<double>& coefficients, const Vec3& x);

// Full refinement study of a manufactured example (circle or sphere): solve
// on levels h0, h0/2, ..., compute E1..E4 and the orders. Throws
// std::invalid_argument for examples without an exact solution (pretzel).
ConvergenceTable run_convergence_study(const StudyConfig& config);

} // namespace bandfem

#endif
