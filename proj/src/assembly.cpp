#include "bandfem/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bandfem {

namespace {

int lower_bound_index(const std::vector<int>& col, int lo, int hi, int c) {
    while (lo < hi) {
        const int mid = (lo + hi) / 2;
        if (col[mid] < c)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

// CSR pattern from the element-to-DOF incidence: row k holds the union of the
// DOFs of all elements containing k.
SparseMatrix build_pattern(int n, const std::vector<int>& elem_dofs, int dofs_per_elem) {
    const int n_elems = static_cast<int>(elem_dofs.size()) / dofs_per_elem;

    std::vector<int> counts(n + 1, 0);
    for (int d : elem_dofs) ++counts[d + 1];
    for (int k = 0; k < n; ++k) counts[k + 1] += counts[k];
    std::vector<int> dof_elems(elem_dofs.size());
    std::vector<int> cursor(counts.begin(), counts.end() - 1);
    for (int e = 0; e < n_elems; ++e)
        for (int a = 0; a < dofs_per_elem; ++a)
            dof_elems[cursor[elem_dofs[e * dofs_per_elem + a]]++] = e;

    SparseMatrix m;
    m.n = n;
    m.row_ptr.assign(n + 1, 0);
    std::vector<int> neighbors;
    for (int k = 0; k < n; ++k) {
        neighbors.clear();
        for (int i = counts[k]; i < counts[k + 1]; ++i) {
            const int e = dof_elems[i];
            for (int a = 0; a < dofs_per_elem; ++a)
                neighbors.push_back(elem_dofs[e * dofs_per_elem + a]);
        }
        std::sort(neighbors.begin(), neighbors.end());
        neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());
        m.col.insert(m.col.end(), neighbors.begin(), neighbors.end());
        m.row_ptr[k + 1] = static_cast<int>(m.col.size());
    }
    m.val.assign(m.col.size(), 0.0);
    return m;
}

Vec3 closest_point_checked(const LevelSetGeometry& geometry, const Vec3& x, int node) {
    try {
        return closest_point(geometry, x);
    } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "projection failed at mesh node " << node << " (" << x[0] << ", " << x[1] << ", "
            << x[2] << "): " << e.what();
        throw std::runtime_error(msg.str());
    }
}

// Values and gradients of the quadratic Lagrange basis at barycentric bc.
// Layout: vertex functions first, then one per local edge.
void p2_basis(int dim, const std::array<double, 4>& bc, const Vec3* bary_grads, double* values,
              Vec3* gradients) {
    const int nv = dim + 1;
    const auto& pairs = local_edge_pairs(dim);
    const int ne = (dim == 2) ? 3 : 6;
    for (int a = 0; a < nv; ++a) {
        values[a] = bc[a] * (2.0 * bc[a] - 1.0);
        gradients[a] = (4.0 * bc[a] - 1.0) * bary_grads[a];
    }
    for (int e = 0; e < ne; ++e) {
        const int a = pairs[e][0], b = pairs[e][1];
        values[nv + e] = 4.0 * bc[a] * bc[b];
        gradients[nv + e] = 4.0 * (bc[b] * bary_grads[a] + bc[a] * bary_grads[b]);
    }
}

} // namespace

double& SparseMatrix::entry(int r, int c) {
    const int i = lower_bound_index(col, row_ptr[r], row_ptr[r + 1], c);
    if (i == row_ptr[r + 1] || col[i] != c)
        throw std::out_of_range("SparseMatrix::entry outside the sparsity pattern");
    return val[i];
}

double SparseMatrix::get(int r, int c) const {
    const int i = lower_bound_index(col, row_ptr[r], row_ptr[r + 1], c);
    return (i < row_ptr[r + 1] && col[i] == c) ? val[i] : 0.0;
}

void SparseMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(n, 0.0);
    for (int r = 0; r < n; ++r) {
        double s = 0.0;
        for (int i = row_ptr[r]; i < row_ptr[r + 1]; ++i) s += val[i] * x[col[i]];
        y[r] = s;
    }
}

std::vector<double> nodal_pullback(const SimplicialBandMesh& mesh, const LevelSetGeometry& geometry,
                                   const std::function<double(const Vec3&)>& g, int element_order) {
    const int nv = mesh.num_vertices();
    const int ne = (element_order == 2) ? static_cast<int>(mesh.edges.size()) : 0;
    std::vector<double> out(nv + ne);
    for (int v = 0; v < nv; ++v)
        out[v] = g(closest_point_checked(geometry, mesh.vertices[v], v));
    for (int e = 0; e < ne; ++e)
        out[nv + e] = g(closest_point_checked(geometry, mesh.edge_midpoint(e), nv + e));
    return out;
}

AssembledSystem assemble_p1(const SimplicialBandMesh& mesh, const QuadratureRule& rule,
                            const PhaseFieldProfile& profile, const LevelSetGeometry& geometry,
                            const SurfaceProblem& problem) {
    const int dim = mesh.dimension;
    const int nloc = dim + 1;
    const int n = mesh.num_vertices();
    const double inv_eps = 1.0 / profile.epsilon;

    // Closest-point pullback of the data, one evaluation per vertex.
    std::vector<Mat3> A_hat(n);
    std::vector<double> a0_hat(n), f_hat(n);
    for (int v = 0; v < n; ++v) {
        const Vec3 p = closest_point_checked(geometry, mesh.vertices[v], v);
        A_hat[v] = problem.diffusion(p);
        a0_hat[v] = problem.reaction(p);
        f_hat[v] = problem.source(p);
    }

    std::vector<int> elem_dofs;
    elem_dofs.reserve(static_cast<std::size_t>(mesh.num_simplices()) * nloc);
    for (const auto& s : mesh.simplices)
        for (int a = 0; a < nloc; ++a) elem_dofs.push_back(s[a]);

    AssembledSystem sys;
    sys.element_order = 1;
    sys.epsilon = profile.epsilon;
    sys.matrix = build_pattern(n, elem_dofs, nloc);
    sys.rhs.assign(n, 0.0);

    std::array<Vec3, 4> grads{};
    double K[4][4];
    double F[4];
    for (int t = 0; t < mesh.num_simplices(); ++t) {
        const auto& s = mesh.simplices[t];
        const double measure = simplex_gradients(mesh, t, grads.data());
        const double scale = inv_eps * mesh.grad_interp_phi[t];

        for (int a = 0; a < nloc; ++a) {
            F[a] = 0.0;
            for (int b = a; b < nloc; ++b) K[a][b] = 0.0;
        }

        for (std::size_t i = 0; i < rule.size(); ++i) {
            const auto& bc = rule.points[i];
            const double w = rule.weights[i] * measure;
            Vec3 x{0.0, 0.0, 0.0};
            for (int a = 0; a < nloc; ++a) x = x + bc[a] * mesh.vertices[s[a]];
            const double rho = profile.rho_of_phi(geometry.phi(x));
            if (rho == 0.0) continue;

            Mat3 A{};
            double a0 = 0.0, f = 0.0;
            for (int a = 0; a < nloc; ++a) {
                const int v = s[a];
                a0 += bc[a] * a0_hat[v];
                f += bc[a] * f_hat[v];
                for (int r = 0; r < dim; ++r)
                    for (int c = 0; c < dim; ++c) A[r][c] += bc[a] * A_hat[v][r][c];
            }

            const double wr = w * rho;
            for (int a = 0; a < nloc; ++a) {
                const Vec3 Ag = matvec(A, grads[a]);
                for (int b = a; b < nloc; ++b)
                    K[a][b] += wr * (dot(Ag, grads[b]) + a0 * bc[a] * bc[b]);
                F[a] += wr * f * bc[a];
            }
        }

        for (int a = 0; a < nloc; ++a) {
            sys.rhs[s[a]] += scale * F[a];
            for (int b = a; b < nloc; ++b) {
                const double v = scale * K[a][b];
                sys.matrix.entry(s[a], s[b]) += v;
                if (a != b) sys.matrix.entry(s[b], s[a]) += v;
            }
        }
    }
    return sys;
}

AssembledSystem assemble_p2(SimplicialBandMesh& mesh, const QuadratureRule& rule,
                            const PhaseFieldProfile& profile, const LevelSetGeometry& geometry,
                            const SurfaceProblem& problem) {
    build_edges(mesh);
    const int dim = mesh.dimension;
    const int nv_loc = dim + 1;
    const int ne_loc = mesh.edges_per_simplex();
    const int nloc = nv_loc + ne_loc;
    const int nv = mesh.num_vertices();
    const int n = nv + static_cast<int>(mesh.edges.size());
    const double inv_eps = 1.0 / profile.epsilon;

    std::vector<double> f_hat = nodal_pullback(mesh, geometry, problem.source, 2);
    // Quadratic interpolant of phi: exact nodal values at edge midpoints too.
    std::vector<double> phi_edge(mesh.edges.size());
    for (std::size_t e = 0; e < mesh.edges.size(); ++e)
        phi_edge[e] = geometry.phi(mesh.edge_midpoint(static_cast<int>(e)));

    std::vector<int> elem_dofs;
    elem_dofs.reserve(static_cast<std::size_t>(mesh.num_simplices()) * nloc);
    std::vector<int> dofs(nloc);
    for (int t = 0; t < mesh.num_simplices(); ++t) {
        for (int a = 0; a < nv_loc; ++a) elem_dofs.push_back(mesh.simplices[t][a]);
        for (int e = 0; e < ne_loc; ++e) elem_dofs.push_back(nv + mesh.simplex_edges[t][e]);
    }

    AssembledSystem sys;
    sys.element_order = 2;
    sys.epsilon = profile.epsilon;
    sys.matrix = build_pattern(n, elem_dofs, nloc);
    sys.rhs.assign(n, 0.0);

    std::array<Vec3, 4> bary_grads{};
    std::array<double, 10> N{};
    std::array<Vec3, 10> dN{};
    double K[10][10];
    double F[10];
    for (int t = 0; t < mesh.num_simplices(); ++t) {
        const double measure = simplex_gradients(mesh, t, bary_grads.data());
        for (int a = 0; a < nloc; ++a) {
            dofs[a] = elem_dofs[static_cast<std::size_t>(t) * nloc + a];
            F[a] = 0.0;
            for (int b = a; b < nloc; ++b) K[a][b] = 0.0;
        }

        for (std::size_t i = 0; i < rule.size(); ++i) {
            const auto& bc = rule.points[i];
            const double w = rule.weights[i] * measure;
            Vec3 x{0.0, 0.0, 0.0};
            for (int a = 0; a < nv_loc; ++a) x = x + bc[a] * mesh.vertices[mesh.simplices[t][a]];
            const double rho = profile.rho_of_phi(geometry.phi(x));
            if (rho == 0.0) continue;

            p2_basis(dim, bc, bary_grads.data(), N.data(), dN.data());

            Vec3 grad_phi_h{0.0, 0.0, 0.0};
            double f = 0.0;
            for (int a = 0; a < nv_loc; ++a) {
                grad_phi_h = grad_phi_h + mesh.phi_vertex[mesh.simplices[t][a]] * dN[a];
                f += f_hat[mesh.simplices[t][a]] * N[a];
            }
            for (int e = 0; e < ne_loc; ++e) {
                const int ge = mesh.simplex_edges[t][e];
                grad_phi_h = grad_phi_h + phi_edge[ge] * dN[nv_loc + e];
                f += f_hat[nv + ge] * N[nv_loc + e];
            }

            const double wr = w * rho * norm(grad_phi_h);
            for (int a = 0; a < nloc; ++a) {
                for (int b = a; b < nloc; ++b) K[a][b] += wr * (dot(dN[a], dN[b]) + N[a] * N[b]);
                F[a] += wr * f * N[a];
            }
        }

        for (int a = 0; a < nloc; ++a) {
            sys.rhs[dofs[a]] += inv_eps * F[a];
            for (int b = a; b < nloc; ++b) {
                const double v = inv_eps * K[a][b];
                sys.matrix.entry(dofs[a], dofs[b]) += v;
                if (a != b) sys.matrix.entry(dofs[b], dofs[a]) += v;
            }
        }
    }
    return sys;
}

double discrete_norm_h(const SimplicialBandMesh& mesh, const QuadratureRule& rule,
                       const PhaseFieldProfile& profile, const std::vector<double>& coefficients) {
    const int dim = mesh.dimension;
    const int nv_loc = dim + 1;
    const int nv = mesh.num_vertices();
    int order;
    if (static_cast<int>(coefficients.size()) == nv)
        order = 1;
    else if (coefficients.size() == mesh.vertices.size() + mesh.edges.size() && !mesh.edges.empty())
        order = 2;
    else
        throw std::invalid_argument("discrete_norm_h: coefficient vector does not match the mesh");

    const int ne_loc = (order == 2) ? mesh.edges_per_simplex() : 0;
    const int nloc = nv_loc + ne_loc;

    double sum = 0.0;
    std::array<Vec3, 4> bary_grads{};
    std::array<double, 10> N{};
    std::array<Vec3, 10> dN{};
    for (int t = 0; t < mesh.num_simplices(); ++t) {
        const double measure = simplex_gradients(mesh, t, bary_grads.data());
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const auto& bc = rule.points[i];
            const double w = rule.weights[i] * measure;
            Vec3 x{0.0, 0.0, 0.0};
            for (int a = 0; a < nv_loc; ++a) x = x + bc[a] * mesh.vertices[mesh.simplices[t][a]];
            const double rho = profile.rho_of_phi(mesh.geometry.phi(x));
            if (rho == 0.0) continue;

            double value = 0.0;
            Vec3 gradient{0.0, 0.0, 0.0};
            if (order == 1) {
                for (int a = 0; a < nv_loc; ++a) {
                    const double c = coefficients[mesh.simplices[t][a]];
                    value += bc[a] * c;
                    gradient = gradient + c * bary_grads[a];
                }
            } else {
                p2_basis(dim, bc, bary_grads.data(), N.data(), dN.data());
                for (int a = 0; a < nv_loc; ++a) {
                    const double c = coefficients[mesh.simplices[t][a]];
                    value += N[a] * c;
                    gradient = gradient + c * dN[a];
                }
                for (int e = 0; e < ne_loc; ++e) {
                    const double c = coefficients[nv + mesh.simplex_edges[t][e]];
                    value += N[nv_loc + e] * c;
                    gradient = gradient + c * dN[nv_loc + e];
                }
            }
            sum += w * rho * (value * value + dot(gradient, gradient));
        }
    }
    return std::sqrt(sum / profile.epsilon);
}

} // namespace bandfem
