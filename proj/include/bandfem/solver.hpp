#ifndef BANDFEM_SOLVER_HPP
#define BANDFEM_SOLVER_HPP

#include <functional>
#include <utility>
#include <vector>

#include "bandfem/assembly.hpp"

namespace bandfem {

struct SolveReport {
    int iterations = 0;
    double final_relative_residual = 0.0;  // true residual, |b - Mx| / |b|
    bool converged = false;
};

struct SolveOptions {
    double rel_tol = 1e-12;
    int max_iter = -1;        // default 10 x DOFs
    bool jacobi = true;       // diagonal preconditioning
    // Observer called after every iteration with the current iterate; used by
    // tests to track error norms. Leave empty in production runs.
    std::function<void(int, const std::vector<double>&)> observer;
};

// Preconditioned conjugate gradients for the SPD band system. Returns the
// solution (or the best iterate when not converged) together with the report.
// The recurrence residual is refreshed against the true residual every 50
// iterations; the reported value is always the true one.
std::pair<std::vector<double>, SolveReport> solve_cg(const AssembledSystem& system,
                                                     const SolveOptions& options = {});

} // namespace bandfem

#endif
