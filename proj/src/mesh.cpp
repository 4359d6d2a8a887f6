#include "bandfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bandfem {

namespace {

constexpr double kPi = std::numbers::pi;

// Parity of a 3-permutation given as an index array.
int permutation_sign(const std::array<int, 3>& p) {
    int inversions = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (p[i] > p[j]) ++inversions;
    return (inversions % 2 == 0) ? 1 : -1;
}

std::vector<std::array<int, 4>> make_kuhn_2d() {
    // Both triangles share the main diagonal (0,0)-(1,1); counter-clockwise.
    return {{0, 1, 3, -1}, {0, 3, 2, -1}};
}

std::vector<std::array<int, 4>> make_kuhn_3d() {
    // One tetrahedron per monotone lattice path from corner 0 to corner 7.
    std::vector<std::array<int, 4>> simplices;
    std::array<int, 3> perm{0, 1, 2};
    std::sort(perm.begin(), perm.end());
    do {
        std::array<int, 4> s{};
        s[0] = 0;
        s[1] = s[0] | (1 << perm[0]);
        s[2] = s[1] | (1 << perm[1]);
        s[3] = 7;
        if (permutation_sign(perm) < 0) std::swap(s[2], s[3]);
        simplices.push_back(s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return simplices;
}

Vec3 corner_offset(int corner) {
    return {static_cast<double>(corner & 1), static_cast<double>((corner >> 1) & 1),
            static_cast<double>((corner >> 2) & 1)};
}

} // namespace

const std::vector<std::array<int, 4>>& kuhn_corner_simplices(int dim) {
    static const std::vector<std::array<int, 4>> k2 = make_kuhn_2d();
    static const std::vector<std::array<int, 4>> k3 = make_kuhn_3d();
    if (dim == 2) return k2;
    if (dim == 3) return k3;
    throw std::invalid_argument("kuhn_corner_simplices: dimension must be 2 or 3");
}

std::vector<std::array<Vec3, 4>> kuhn_subdivide(const Vec3& lo, double size, int dim) {
    std::vector<std::array<Vec3, 4>> out;
    for (const auto& s : kuhn_corner_simplices(dim)) {
        std::array<Vec3, 4> verts{};
        for (int a = 0; a <= dim; ++a) verts[a] = lo + size * corner_offset(s[a]);
        out.push_back(verts);
    }
    return out;
}

BackgroundGrid make_grid(const Box& domain, double target_h) {
    if (!(target_h > 0.0)) throw std::invalid_argument("make_grid requires target_h > 0");
    BackgroundGrid grid;
    grid.dimension = domain.dim;
    grid.origin = domain.lo;
    for (int k = 0; k < domain.dim; ++k) {
        const int n = std::max(1, static_cast<int>(std::lround(domain.extent(k) / target_h)));
        grid.cells[k] = n;
        const double hk = domain.extent(k) / n;
        if (k == 0)
            grid.h = hk;
        else if (std::abs(hk - grid.h) > 1e-12 * grid.h)
            throw std::invalid_argument("make_grid: box extents do not admit a uniform spacing");
    }
    return grid;
}

const std::array<std::array<int, 2>, 6>& local_edge_pairs(int dim) {
    static const std::array<std::array<int, 2>, 6> pairs2{
        {{0, 1}, {0, 2}, {1, 2}, {-1, -1}, {-1, -1}, {-1, -1}}};
    static const std::array<std::array<int, 2>, 6> pairs3{
        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    return dim == 2 ? pairs2 : pairs3;
}

SimplicialBandMesh build_band_mesh(const BackgroundGrid& grid, const LevelSetGeometry& geometry,
                                   const PhaseFieldProfile& profile, const QuadratureRule& rule) {
    const int dim = grid.dimension;
    if (rule.dimension != dim)
        throw std::invalid_argument("build_band_mesh: rule dimension does not match grid");
    const double h = grid.h;
    const double eps = profile.epsilon;
    if (!(h > 0.0) || !(h < eps))
        throw std::invalid_argument("build_band_mesh requires 0 < h < epsilon");

    const double half_width = eps * std::acos(h / eps);
    const double prefilter = eps * kPi / 2.0 + geometry.c1 * h * std::sqrt(double(dim));
    const auto& kuhn = kuhn_corner_simplices(dim);

    SimplicialBandMesh mesh;
    mesh.dimension = dim;
    mesh.h = h;
    mesh.grid = grid;
    mesh.geometry = geometry;

    std::unordered_map<long long, int> vertex_of_lattice;
    const long long vy = grid.cells[1] + 1;
    const long long vz = grid.cells[2] + 1;
    auto lattice_key = [&](int ix, int iy, int iz) {
        return (static_cast<long long>(ix) * vy + iy) * vz + iz;
    };
    auto vertex_index = [&](int ix, int iy, int iz) {
        const long long key = lattice_key(ix, iy, iz);
        auto [it, inserted] = vertex_of_lattice.try_emplace(key, mesh.num_vertices());
        if (inserted) {
            const Vec3 pos = grid.origin + h * Vec3{double(ix), double(iy), double(iz)};
            mesh.vertices.push_back(pos);
            mesh.phi_vertex.push_back(geometry.phi(pos));
        }
        return it->second;
    };

    const int nz = (dim == 3) ? grid.cells[2] : 1;
    std::array<Vec3, 4> verts{};
    for (int ix = 0; ix < grid.cells[0]; ++ix) {
        for (int iy = 0; iy < grid.cells[1]; ++iy) {
            for (int iz = 0; iz < nz; ++iz) {
                const Vec3 lo = grid.origin + h * Vec3{double(ix), double(iy), double(iz)};
                const Vec3 center = lo + (0.5 * h) * Vec3{1.0, 1.0, dim == 3 ? 1.0 : 0.0};
                if (std::abs(geometry.phi(center)) > prefilter) continue;

                const int first = mesh.num_simplices();
                for (const auto& s : kuhn) {
                    for (int a = 0; a <= dim; ++a) verts[a] = lo + h * corner_offset(s[a]);
                    bool inside = true;
                    for (const auto& mp : map_to_element(rule, verts.data(), dim)) {
                        if (std::abs(geometry.phi(mp.point)) > half_width) {
                            inside = false;
                            break;
                        }
                    }
                    if (!inside) continue;

                    std::array<int, 4> simplex{-1, -1, -1, -1};
                    for (int a = 0; a <= dim; ++a) {
                        const int c = s[a];
                        simplex[a] =
                            vertex_index(ix + (c & 1), iy + ((c >> 1) & 1), iz + ((c >> 2) & 1));
                    }
                    mesh.simplices.push_back(simplex);
                }
                const int count = mesh.num_simplices() - first;
                if (count > 0)
                    mesh.cell_simplices.emplace(mesh.cell_key({ix, iy, iz}),
                                                std::make_pair(first, count));
            }
        }
    }

    if (mesh.simplices.empty())
        throw std::runtime_error(
            "build_band_mesh: empty band (surface outside the box or epsilon too small)");

    mesh.grad_interp_phi.resize(mesh.simplices.size());
    std::array<Vec3, 4> grads{};
    for (int t = 0; t < mesh.num_simplices(); ++t) {
        simplex_gradients(mesh, t, grads.data());
        Vec3 g{0.0, 0.0, 0.0};
        for (int a = 0; a <= dim; ++a) g = g + mesh.phi_vertex[mesh.simplices[t][a]] * grads[a];
        mesh.grad_interp_phi[t] = norm(g);
    }
    return mesh;
}

void build_edges(SimplicialBandMesh& mesh) {
    if (!mesh.edges.empty()) return;
    const int ne = mesh.edges_per_simplex();
    const auto& pairs = local_edge_pairs(mesh.dimension);
    const long long nv = mesh.num_vertices();
    std::unordered_map<long long, int> edge_of_pair;
    mesh.simplex_edges.resize(mesh.simplices.size(), {-1, -1, -1, -1, -1, -1});
    for (int t = 0; t < mesh.num_simplices(); ++t) {
        for (int e = 0; e < ne; ++e) {
            int a = mesh.simplices[t][pairs[e][0]];
            int b = mesh.simplices[t][pairs[e][1]];
            if (a > b) std::swap(a, b);
            const long long key = a * nv + b;
            auto [it, inserted] = edge_of_pair.try_emplace(key, static_cast<int>(mesh.edges.size()));
            if (inserted) mesh.edges.push_back({a, b});
            mesh.simplex_edges[t][e] = it->second;
        }
    }
}

double simplex_gradients(const SimplicialBandMesh& mesh, int t, Vec3* grads) {
    const int dim = mesh.dimension;
    const auto& s = mesh.simplices[t];
    const Vec3& v0 = mesh.vertices[s[0]];
    if (dim == 2) {
        const Vec3 e1 = mesh.vertices[s[1]] - v0;
        const Vec3 e2 = mesh.vertices[s[2]] - v0;
        const double det = e1[0] * e2[1] - e1[1] * e2[0];
        // Rows of the inverse Jacobian transpose are the barycentric gradients.
        grads[1] = Vec3{e2[1] / det, -e2[0] / det, 0.0};
        grads[2] = Vec3{-e1[1] / det, e1[0] / det, 0.0};
        grads[0] = Vec3{0.0, 0.0, 0.0} - grads[1] - grads[2];
        return 0.5 * std::abs(det);
    }
    const Vec3 e1 = mesh.vertices[s[1]] - v0;
    const Vec3 e2 = mesh.vertices[s[2]] - v0;
    const Vec3 e3 = mesh.vertices[s[3]] - v0;
    const double det = dot(e1, cross(e2, e3));
    grads[1] = (1.0 / det) * cross(e2, e3);
    grads[2] = (1.0 / det) * cross(e3, e1);
    grads[3] = (1.0 / det) * cross(e1, e2);
    grads[0] = Vec3{0.0, 0.0, 0.0} - grads[1] - grads[2] - grads[3];
    return std::abs(det) / 6.0;
}

namespace {

// Barycentric coordinates of x in simplex t; true if all >= -tol.
bool barycentric_in(const SimplicialBandMesh& mesh, int t, const Vec3& x,
                    std::array<double, 4>& lambda, double tol) {
    const int dim = mesh.dimension;
    const auto& s = mesh.simplices[t];
    const Vec3 r = x - mesh.vertices[s[0]];
    if (dim == 2) {
        const Vec3 e1 = mesh.vertices[s[1]] - mesh.vertices[s[0]];
        const Vec3 e2 = mesh.vertices[s[2]] - mesh.vertices[s[0]];
        const double det = e1[0] * e2[1] - e1[1] * e2[0];
        lambda[1] = (r[0] * e2[1] - r[1] * e2[0]) / det;
        lambda[2] = (e1[0] * r[1] - e1[1] * r[0]) / det;
        lambda[0] = 1.0 - lambda[1] - lambda[2];
        lambda[3] = 0.0;
        return lambda[0] >= -tol && lambda[1] >= -tol && lambda[2] >= -tol;
    }
    const Vec3 e1 = mesh.vertices[s[1]] - mesh.vertices[s[0]];
    const Vec3 e2 = mesh.vertices[s[2]] - mesh.vertices[s[0]];
    const Vec3 e3 = mesh.vertices[s[3]] - mesh.vertices[s[0]];
    const double det = dot(e1, cross(e2, e3));
    lambda[1] = dot(r, cross(e2, e3)) / det;
    lambda[2] = dot(e1, cross(r, e3)) / det;
    lambda[3] = dot(e1, cross(e2, r)) / det;
    lambda[0] = 1.0 - lambda[1] - lambda[2] - lambda[3];
    return lambda[0] >= -tol && lambda[1] >= -tol && lambda[2] >= -tol && lambda[3] >= -tol;
}

} // namespace

std::pair<int, std::array<double, 4>> locate_point(const SimplicialBandMesh& mesh, const Vec3& x) {
    const auto& grid = mesh.grid;
    const int dim = mesh.dimension;
    std::array<int, 3> cell{0, 0, 0};
    for (int k = 0; k < dim; ++k) {
        const int n = grid.cells[k];
        int c = static_cast<int>(std::floor((x[k] - grid.origin[k]) / grid.h));
        cell[k] = std::clamp(c, 0, n - 1);
    }

    std::array<double, 4> lambda{};
    // The owning cell first, then the 3^dim neighborhood for points that sit
    // on cell boundaries within rounding distance.
    const int dz = (dim == 3) ? 1 : 0;
    for (int pass = 0; pass < 2; ++pass) {
        for (int ox = -pass; ox <= pass; ++ox) {
            for (int oy = -pass; oy <= pass; ++oy) {
                for (int oz = -pass * dz; oz <= pass * dz; ++oz) {
                    if (pass == 1 && ox == 0 && oy == 0 && oz == 0) continue;
                    std::array<int, 3> c{cell[0] + ox, cell[1] + oy, cell[2] + oz};
                    if (c[0] < 0 || c[1] < 0 || c[2] < 0 || c[0] >= grid.cells[0] ||
                        c[1] >= grid.cells[1] || (dim == 3 && c[2] >= grid.cells[2]))
                        continue;
                    const auto it = mesh.cell_simplices.find(mesh.cell_key(c));
                    if (it == mesh.cell_simplices.end()) continue;
                    const auto [first, count] = it->second;
                    for (int t = first; t < first + count; ++t)
                        if (barycentric_in(mesh, t, x, lambda, 1e-12)) return {t, lambda};
                }
            }
        }
    }
    throw std::runtime_error("locate_point: point outside the band mesh");
}

} // namespace bandfem
