#include "bandfem/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace bandfem {

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot_vec(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

std::pair<std::vector<double>, SolveReport> solve_cg(const AssembledSystem& system,
                                                     const SolveOptions& options) {
    const SparseMatrix& M = system.matrix;
    const std::vector<double>& b = system.rhs;
    const int n = M.n;
    const int max_iter = options.max_iter > 0 ? options.max_iter : 10 * n;

    std::vector<double> x(n, 0.0);
    SolveReport report;

    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        report.converged = true;
        return {x, report};
    }

    std::vector<double> inv_diag(n, 1.0);
    if (options.jacobi) {
        for (int r = 0; r < n; ++r) {
            const double d = M.get(r, r);
            if (!(d > 0.0)) throw std::invalid_argument("solve_cg: non-positive diagonal entry");
            inv_diag[r] = 1.0 / d;
        }
    }

    std::vector<double> r = b;  // residual of x = 0
    std::vector<double> z(n), p(n), Mp(n);
    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    p = z;
    double rz = dot_vec(r, z);

    const double abs_tol = options.rel_tol * bnorm;
    int iter = 0;
    while (iter < max_iter && norm2(r) > abs_tol) {
        M.multiply(p, Mp);
        const double pMp = dot_vec(p, Mp);
        if (!(pMp > 0.0)) throw std::runtime_error("solve_cg: matrix is not positive definite");
        const double alpha = rz / pMp;
        for (int i = 0; i < n; ++i) x[i] += alpha * p[i];
        ++iter;

        if (iter % 50 == 0) {
            // Refresh against the true residual to stop recurrence drift.
            M.multiply(x, r);
            for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
        } else {
            for (int i = 0; i < n; ++i) r[i] -= alpha * Mp[i];
        }

        for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
        const double rz_next = dot_vec(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];

        if (options.observer) options.observer(iter, x);
    }

    M.multiply(x, Mp);
    for (int i = 0; i < n; ++i) Mp[i] = b[i] - Mp[i];
    report.iterations = iter;
    report.final_relative_residual = norm2(Mp) / bnorm;
    report.converged = report.final_relative_residual <= options.rel_tol;
    return {x, report};
}

} // namespace bandfem
