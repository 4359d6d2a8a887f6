#include "bandfem/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bandfem {

namespace {

constexpr double kPi = std::numbers::pi;

// Solve the n x n system A x = b in place by Gaussian elimination with
// partial pivoting (n <= 4; used by the Newton projection).
void solve_dense(int n, double A[4][4], double b[4]) {
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(A[i][k]) > std::abs(A[piv][k])) piv = i;
        if (std::abs(A[piv][k]) < 1e-300) throw std::runtime_error("singular Newton system");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(A[k][j], A[piv][j]);
            std::swap(b[k], b[piv]);
        }
        for (int i = k + 1; i < n; ++i) {
            const double m = A[i][k] / A[k][k];
            for (int j = k; j < n; ++j) A[i][j] -= m * A[k][j];
            b[i] -= m * b[k];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= A[i][j] * b[j];
        b[i] = s / A[i][i];
    }
}

Mat3 fd_hessian(const LevelSetGeometry& g, const Vec3& x) {
    const double step = 1e-6 * (1.0 + norm(x));
    Mat3 h{};
    for (int k = 0; k < g.dimension; ++k) {
        Vec3 xp = x, xm = x;
        xp[k] += step;
        xm[k] -= step;
        const Vec3 gp = g.grad_phi(xp);
        const Vec3 gm = g.grad_phi(xm);
        for (int j = 0; j < g.dimension; ++j) h[j][k] = (gp[j] - gm[j]) / (2.0 * step);
    }
    // Symmetrize to wash out the finite-difference asymmetry.
    for (int j = 0; j < 3; ++j)
        for (int k = j + 1; k < 3; ++k) {
            const double s = 0.5 * (h[j][k] + h[k][j]);
            h[j][k] = h[k][j] = s;
        }
    return h;
}

// Damped Newton for the stationarity system of min |x-p|^2 s.t. phi(p)=0:
//   F(p, lambda) = [ (x - p) - lambda * grad phi(p) ; phi(p) ] = 0.
Vec3 newton_project(const LevelSetGeometry& g, const Vec3& x) {
    const int d = g.dimension;
    const Vec3 g0 = g.grad_phi(x);
    const double g0sq = std::max(dot(g0, g0), 1e-300);
    Vec3 p = x - (g.phi(x) / g0sq) * g0;
    double lambda = g.phi(x) / g0sq;

    auto residual = [&](const Vec3& pp, double ll, double F[4]) {
        const Vec3 gp = g.grad_phi(pp);
        for (int k = 0; k < d; ++k) F[k] = (x[k] - pp[k]) - ll * gp[k];
        F[d] = g.phi(pp);
        double s = 0.0;
        for (int k = 0; k <= d; ++k) s += F[k] * F[k];
        return std::sqrt(s);
    };

    double F[4];
    double fnorm = residual(p, lambda, F);
    const double tol = 1e-12 * (1.0 + norm(x)) * std::max(1.0, g.c1);

    for (int iter = 0; iter < 50; ++iter) {
        if (fnorm <= tol) return p;

        const Vec3 gp = g.grad_phi(p);
        const Mat3 hp = g.hess_phi ? g.hess_phi(p) : fd_hessian(g, p);

        double J[4][4] = {};
        double rhs[4] = {};
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) J[i][j] = -((i == j) ? 1.0 : 0.0) - lambda * hp[i][j];
            J[i][d] = -gp[i];
        }
        for (int j = 0; j < d; ++j) J[d][j] = gp[j];
        J[d][d] = 0.0;
        for (int k = 0; k <= d; ++k) rhs[k] = -F[k];
        solve_dense(d + 1, J, rhs);

        // Backtracking line search on the residual norm.
        double step = 1.0;
        for (int bt = 0; bt < 32; ++bt) {
            Vec3 pt = p;
            for (int k = 0; k < d; ++k) pt[k] += step * rhs[k];
            const double lt = lambda + step * rhs[d];
            double Ft[4];
            const double ft = residual(pt, lt, Ft);
            if (ft < fnorm) {
                p = pt;
                lambda = lt;
                fnorm = ft;
                for (int k = 0; k <= d; ++k) F[k] = Ft[k];
                break;
            }
            step *= 0.5;
            if (bt == 31) {
                std::ostringstream msg;
                msg << "closest-point Newton stalled at residual " << fnorm << " for x = (" << x[0]
                    << ", " << x[1] << ", " << x[2] << ")";
                throw std::runtime_error(msg.str());
            }
        }
    }
    if (fnorm <= tol) return p;
    std::ostringstream msg;
    msg << "closest-point Newton did not converge: residual " << fnorm << ", |phi(p)| = "
        << std::abs(g.phi(p)) << " for x = (" << x[0] << ", " << x[1] << ", " << x[2] << ")";
    throw std::runtime_error(msg.str());
}

} // namespace

LevelSetGeometry make_circle() {
    LevelSetGeometry g;
    g.kind = SurfaceKind::circle;
    g.dimension = 2;
    g.domain = Box{2, {-1.2, -1.2, 0.0}, {1.2, 1.2, 0.0}};
    g.c0 = 1.0;  // |grad phi| = 2|x| >= 1 on the band around |x| = 1
    g.c1 = 2.0 * std::sqrt(2.0) * 1.2;
    g.phi = [](const Vec3& x) { return x[0] * x[0] + x[1] * x[1] - 1.0; };
    g.grad_phi = [](const Vec3& x) { return Vec3{2.0 * x[0], 2.0 * x[1], 0.0}; };
    g.hess_phi = [](const Vec3&) {
        return Mat3{{{2.0, 0.0, 0.0}, {0.0, 2.0, 0.0}, {0.0, 0.0, 0.0}}};
    };
    return g;
}

LevelSetGeometry make_sphere() {
    LevelSetGeometry g;
    g.kind = SurfaceKind::sphere;
    g.dimension = 3;
    g.domain = Box{3, {-1.8, -1.8, -1.8}, {1.8, 1.8, 1.8}};
    g.c0 = 1.0;
    g.c1 = 2.0 * std::sqrt(3.0) * 1.8;
    g.phi = [](const Vec3& x) { return dot(x, x) - 1.0; };
    g.grad_phi = [](const Vec3& x) { return 2.0 * x; };
    g.hess_phi = [](const Vec3&) {
        return Mat3{{{2.0, 0.0, 0.0}, {0.0, 2.0, 0.0}, {0.0, 0.0, 2.0}}};
    };
    return g;
}

LevelSetGeometry make_pretzel() {
    LevelSetGeometry g;
    g.kind = SurfaceKind::pretzel;
    g.dimension = 3;
    g.domain = Box{3, {-2.0, -2.0, -2.0}, {2.0, 2.0, 2.0}};
    g.phi = [](const Vec3& x) {
        const double x1 = x[0] * x[0], x2 = x[1] * x[1], x3 = x[2] * x[2];
        const double a = x1 - 1.0, b = x2 - 1.0, c = x3 - 1.0;
        const double d = x1 + x2 - 3.0, e = x1 + x3 - 3.0, f = x2 + x3 - 3.0;
        return a * a + b * b + c * c + d * d + e * e + f * f - 10.0;
    };
    // d phi / d x_k = 4 x_k (3 x_k^2 + sum of the other two squares - 7)
    g.grad_phi = [](const Vec3& x) {
        const double s = dot(x, x);
        return Vec3{4.0 * x[0] * (2.0 * x[0] * x[0] + s - 7.0),
                    4.0 * x[1] * (2.0 * x[1] * x[1] + s - 7.0),
                    4.0 * x[2] * (2.0 * x[2] * x[2] + s - 7.0)};
    };
    g.hess_phi = [](const Vec3& x) {
        const double s = dot(x, x);
        Mat3 h{};
        for (int k = 0; k < 3; ++k) h[k][k] = 4.0 * (s + 8.0 * x[k] * x[k] - 7.0);
        h[0][1] = h[1][0] = 8.0 * x[0] * x[1];
        h[0][2] = h[2][0] = 8.0 * x[0] * x[2];
        h[1][2] = h[2][1] = 8.0 * x[1] * x[2];
        return h;
    };
    g.c1 = estimate_c1(g, 2.0);
    // Sampled minimum of |grad phi| on {|phi| <= 2} is ~7.3; keep a margin.
    g.c0 = 5.0;
    return g;
}

LevelSetGeometry geometry_by_name(const std::string& name) {
    if (name == "circle") return make_circle();
    if (name == "sphere") return make_sphere();
    if (name == "pretzel") return make_pretzel();
    throw std::invalid_argument("unknown geometry '" + name +
                                "' (expected circle, sphere or pretzel)");
}

double estimate_c1(const LevelSetGeometry& g, double band_value, int samples_per_axis) {
    const int n = samples_per_axis;
    double maxg = 0.0;
    Vec3 x{0.0, 0.0, 0.0};
    const int nz = (g.dimension == 3) ? n : 0;
    for (int i = 0; i <= n; ++i) {
        x[0] = g.domain.lo[0] + g.domain.extent(0) * i / n;
        for (int j = 0; j <= n; ++j) {
            x[1] = g.domain.lo[1] + g.domain.extent(1) * j / n;
            for (int k = 0; k <= nz; ++k) {
                if (g.dimension == 3) x[2] = g.domain.lo[2] + g.domain.extent(2) * k / n;
                if (std::abs(g.phi(x)) <= band_value) maxg = std::max(maxg, norm(g.grad_phi(x)));
            }
        }
    }
    if (maxg == 0.0) throw std::runtime_error("estimate_c1: no sample point inside the band");
    return 1.1 * maxg;
}

double sigma(int degree_q, double r) {
    if (std::abs(r) >= kPi / 2.0) return 0.0;
    return ipow(std::cos(r), 2 * (degree_q + 1));
}

double profile_mass(int degree_q) {
    // Wallis: integral of cos^(2m) over one period is pi * binom(2m, m) / 4^m.
    const int m = degree_q + 1;
    double binom = 1.0;
    for (int i = 1; i <= m; ++i) binom = binom * (m + i) / i;
    return kPi * binom / ipow(4.0, m);
}

double compute_r0(double c1) {
    if (!(c1 > 0.0)) throw std::invalid_argument("compute_r0 requires c1 > 0");
    auto f = [c1](double r) { return std::acos(r) - c1 * r; };
    double lo = 0.0, hi = 1.0;  // f(0) = pi/2 > 0, f(1) = -c1 < 0
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

BandParameters band_parameters(double h, double epsilon, double c1) {
    if (!(h > 0.0) || !(h < epsilon))
        throw std::invalid_argument("band_parameters requires 0 < h < epsilon");
    BandParameters b;
    b.h = h;
    b.epsilon = epsilon;
    b.half_width = epsilon * std::acos(h / epsilon);
    b.hat_epsilon = b.half_width - c1 * h;
    b.c2 = kPi / 2.0 + c1;
    b.r0 = compute_r0(c1);
    return b;
}

Vec3 closest_point(const LevelSetGeometry& g, const Vec3& x) {
    if (g.kind == SurfaceKind::circle || g.kind == SurfaceKind::sphere) {
        const double r = norm(x);
        if (r < 1e-14) throw std::runtime_error("closest_point undefined at the origin");
        return (1.0 / r) * x;
    }
    return newton_project(g, x);
}

} // namespace bandfem
