#include "bandfem/analysis.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bandfem/solver.hpp"

namespace bandfem {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> interpolated_exact(const SimplicialBandMesh& mesh,
                                       const SurfaceProblem& problem, int element_order) {
    if (!problem.has_exact())
        throw std::invalid_argument("error functionals need a problem with an exact solution");
    return nodal_pullback(mesh, mesh.geometry, problem.exact_u, element_order);
}

std::pair<double, double> surface_errors(const SimplicialBandMesh& mesh,
                                         const std::vector<double>& u_h,
                                         const SurfaceProblem& problem,
                                         const std::vector<Vec3>& points,
                                         const std::vector<double>& weights) {
    if (!problem.has_exact() || !problem.exact_surface_gradient)
        throw std::invalid_argument("surface errors need the exact solution and its gradient");
    double e3 = 0.0, e4 = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec3& x = points[i];
        double value;
        Vec3 gradient;
        try {
            std::tie(value, gradient) = evaluate_fe(mesh, u_h, x);
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << "surface sample " << i << " at (" << x[0] << ", " << x[1] << ", " << x[2]
                << ") is outside the band: " << e.what();
            throw std::runtime_error(msg.str());
        }
        const Vec3 nu_dir = mesh.geometry.grad_phi(x);
        const Vec3 nu = (1.0 / norm(nu_dir)) * nu_dir;
        const Vec3 tangential = gradient - dot(gradient, nu) * nu;

        const double du = problem.exact_u(x) - value;
        const Vec3 dg = problem.exact_surface_gradient(x) - tangential;
        e3 += weights[i] * du * du;
        e4 += weights[i] * dot(dg, dg);
    }
    return {e3, e4};
}

} // namespace

std::pair<double, Vec3> evaluate_fe(const SimplicialBandMesh& mesh,
                                    const std::vector<double>& coefficients, const Vec3& x) {
    const auto [t, bc] = locate_point(mesh, x);
    const int dim = mesh.dimension;
    const int nv_loc = dim + 1;
    std::array<Vec3, 4> bary_grads{};
    simplex_gradients(mesh, t, bary_grads.data());

    double value = 0.0;
    Vec3 gradient{0.0, 0.0, 0.0};
    if (coefficients.size() == mesh.vertices.size()) {
        for (int a = 0; a < nv_loc; ++a) {
            const double c = coefficients[mesh.simplices[t][a]];
            value += bc[a] * c;
            gradient = gradient + c * bary_grads[a];
        }
        return {value, gradient};
    }
    if (coefficients.size() != mesh.vertices.size() + mesh.edges.size() || mesh.edges.empty())
        throw std::invalid_argument("evaluate_fe: coefficient vector does not match the mesh");

    const int nv = mesh.num_vertices();
    const auto& pairs = local_edge_pairs(dim);
    for (int a = 0; a < nv_loc; ++a) {
        const double c = coefficients[mesh.simplices[t][a]];
        value += bc[a] * (2.0 * bc[a] - 1.0) * c;
        gradient = gradient + ((4.0 * bc[a] - 1.0) * c) * bary_grads[a];
    }
    for (int e = 0; e < mesh.edges_per_simplex(); ++e) {
        const int a = pairs[e][0], b = pairs[e][1];
        const double c = coefficients[nv + mesh.simplex_edges[t][e]];
        value += 4.0 * bc[a] * bc[b] * c;
        gradient = gradient + (4.0 * c) * (bc[b] * bary_grads[a] + bc[a] * bary_grads[b]);
    }
    return {value, gradient};
}

std::pair<double, double> error_E1_E2(const SimplicialBandMesh& mesh, const QuadratureRule& rule,
                                      const PhaseFieldProfile& profile,
                                      const std::vector<double>& u_h,
                                      const SurfaceProblem& problem) {
    const int order = (u_h.size() == mesh.vertices.size()) ? 1 : 2;
    const std::vector<double> exact = interpolated_exact(mesh, problem, order);
    if (exact.size() != u_h.size())
        throw std::invalid_argument("error_E1_E2: coefficient vector does not match the mesh");

    const int dim = mesh.dimension;
    const int nv_loc = dim + 1;
    const int nv = mesh.num_vertices();
    const auto& pairs = local_edge_pairs(dim);

    double e1 = 0.0, e2 = 0.0;
    std::array<Vec3, 4> bary_grads{};
    for (int t = 0; t < mesh.num_simplices(); ++t) {
        const double measure = simplex_gradients(mesh, t, bary_grads.data());
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const auto& bc = rule.points[i];
            const double w = rule.weights[i] * measure;
            Vec3 x{0.0, 0.0, 0.0};
            for (int a = 0; a < nv_loc; ++a) x = x + bc[a] * mesh.vertices[mesh.simplices[t][a]];
            const double rho = profile.rho_of_phi(mesh.geometry.phi(x));
            if (rho == 0.0) continue;

            double diff = 0.0;
            Vec3 grad_diff{0.0, 0.0, 0.0};
            if (order == 1) {
                for (int a = 0; a < nv_loc; ++a) {
                    const int v = mesh.simplices[t][a];
                    const double c = exact[v] - u_h[v];
                    diff += bc[a] * c;
                    grad_diff = grad_diff + c * bary_grads[a];
                }
            } else {
                for (int a = 0; a < nv_loc; ++a) {
                    const int v = mesh.simplices[t][a];
                    const double c = exact[v] - u_h[v];
                    diff += bc[a] * (2.0 * bc[a] - 1.0) * c;
                    grad_diff = grad_diff + ((4.0 * bc[a] - 1.0) * c) * bary_grads[a];
                }
                for (int e = 0; e < mesh.edges_per_simplex(); ++e) {
                    const int a = pairs[e][0], b = pairs[e][1];
                    const int d = nv + mesh.simplex_edges[t][e];
                    const double c = exact[d] - u_h[d];
                    diff += 4.0 * bc[a] * bc[b] * c;
                    grad_diff =
                        grad_diff + (4.0 * c) * (bc[b] * bary_grads[a] + bc[a] * bary_grads[b]);
                }
            }
            e1 += w * rho * diff * diff;
            e2 += w * rho * dot(grad_diff, grad_diff);
        }
    }
    return {e1 / profile.epsilon, e2 / profile.epsilon};
}

std::pair<double, double> error_E3_E4_circle(const SimplicialBandMesh& mesh,
                                             const std::vector<double>& u_h,
                                             const SurfaceProblem& problem, int L) {
    std::vector<Vec3> points(L);
    std::vector<double> weights(L, 2.0 * kPi / L);
    for (int l = 0; l < L; ++l) {
        const double theta = 2.0 * kPi * l / L;
        points[l] = {std::cos(theta), std::sin(theta), 0.0};
    }
    return surface_errors(mesh, u_h, problem, points, weights);
}

std::pair<double, double> error_E3_E4_sphere(const SimplicialBandMesh& mesh,
                                             const std::vector<double>& u_h,
                                             const SurfaceProblem& problem, int L) {
    std::vector<Vec3> points;
    std::vector<double> weights;
    points.reserve(static_cast<std::size_t>(2 * L) * L);
    weights.reserve(points.capacity());
    const double w0 = (kPi / L) * (kPi / L);
    for (int k = 0; k < 2 * L; ++k) {
        const double phi_angle = kPi * k / L;
        for (int l = 0; l < L; ++l) {
            const double theta = kPi * l / L;
            points.push_back({std::cos(phi_angle) * std::sin(theta),
                              std::sin(phi_angle) * std::sin(theta), std::cos(theta)});
            weights.push_back(w0 * std::sin(theta));
        }
    }
    return surface_errors(mesh, u_h, problem, points, weights);
}

std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& hs) {
    if (errors.size() != hs.size() || errors.size() < 2)
        throw std::invalid_argument("eoc needs equally many errors and mesh sizes (>= 2)");
    std::vector<double> out;
    for (std::size_t k = 1; k < errors.size(); ++k) {
        if (!(errors[k - 1] > 0.0) || !(errors[k] > 0.0))
            throw std::invalid_argument("eoc requires positive error values");
        if (!(hs[k] < hs[k - 1]))
            throw std::invalid_argument("eoc requires strictly decreasing mesh sizes");
        out.push_back(std::log(errors[k - 1] / errors[k]) / std::log(hs[k - 1] / hs[k]));
    }
    return out;
}

ConvergenceTable run_convergence_study(const StudyConfig& config) {
    const LevelSetGeometry geometry = geometry_by_name(config.example);
    if (geometry.kind == SurfaceKind::pretzel)
        throw std::invalid_argument(
            "run_convergence_study: the pretzel example has no exact solution");
    if (config.element_order != 1 && config.element_order != 2)
        throw std::invalid_argument("element_order must be 1 or 2");
    if (!(config.h0 > 0.0)) throw std::invalid_argument("h0 must be positive");
    if (config.levels < 1) throw std::invalid_argument("levels must be >= 1");

    const QuadratureRule& rule = rule_for(geometry.dimension, config.q);
    const SurfaceProblem problem = manufactured_problem(geometry.kind);

    ConvergenceTable table;
    table.example = config.example;
    table.q = config.q;
    table.element_order = config.element_order;
    table.gamma = config.gamma;

    for (int level = 0; level < config.levels; ++level) {
        const double target_h = config.h0 / ipow(2.0, level);
        try {
            const BackgroundGrid grid = make_grid(geometry.domain, target_h);
            PhaseFieldProfile profile{config.q, config.gamma * grid.h, config.gamma};
            SimplicialBandMesh mesh = build_band_mesh(grid, geometry, profile, rule);

            AssembledSystem system =
                config.element_order == 1
                    ? assemble_p1(mesh, rule, profile, geometry, problem)
                    : assemble_p2(mesh, rule, profile, geometry, problem);
            SolveOptions opts;
            opts.rel_tol = config.cg_tol;
            auto [u_h, report] = solve_cg(system, opts);
            if (!report.converged) {
                std::ostringstream msg;
                msg << "CG did not converge (relative residual "
                    << report.final_relative_residual << " after " << report.iterations
                    << " iterations)";
                throw std::runtime_error(msg.str());
            }

            StudyRow row;
            row.h = grid.h;
            row.epsilon = profile.epsilon;
            std::tie(row.E1, row.E2) = error_E1_E2(mesh, rule, profile, u_h, problem);
            std::tie(row.E3, row.E4) =
                geometry.dimension == 2
                    ? error_E3_E4_circle(mesh, u_h, problem, config.surface_samples)
                    : error_E3_E4_sphere(mesh, u_h, problem, config.surface_samples);
            table.rows.push_back(row);
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << "level " << level << " (h = " << target_h << "): " << e.what();
            throw std::runtime_error(msg.str());
        }
    }

    for (std::size_t k = 1; k < table.rows.size(); ++k) {
        StudyRow& row = table.rows[k];
        const StudyRow& prev = table.rows[k - 1];
        const double rh = std::log(prev.h / row.h);
        row.eoc1 = std::log(prev.E1 / row.E1) / rh;
        row.eoc2 = std::log(prev.E2 / row.E2) / rh;
        row.eoc3 = std::log(prev.E3 / row.E3) / rh;
        row.eoc4 = std::log(prev.E4 / row.E4) / rh;
    }
    return table;
}

} // namespace bandfem
