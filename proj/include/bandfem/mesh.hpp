#ifndef BANDFEM_MESH_HPP
#define BANDFEM_MESH_HPP

#include <array>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bandfem/geometry.hpp"
#include "bandfem/quadrature.hpp"
#include "bandfem/types.hpp"

namespace bandfem {

// Uniform background grid covering the geometry's box exactly.
struct BackgroundGrid {
    int dimension = 0;
    Vec3 origin{0.0, 0.0, 0.0};
    double h = 0.0;                 // grid spacing, identical on every axis
    std::array<int, 3> cells{0, 0, 0};  // cells[2] = 0 in 2D
};

// Grid with spacing as close as possible to target_h: cells = round(extent/h)
// per axis. Throws std::invalid_argument if the box does not admit a common
// spacing (non-square/cube boxes with incompatible extents).
BackgroundGrid make_grid(const Box& domain, double target_h);

// Corner-index simplices of the Kuhn subdivision of the unit cell: 2 triangles
// in 2D, 6 positively oriented tetrahedra in 3D. Corner index c encodes the
// lattice offset (bit k set = +1 along axis k). The subdivision is
// translation-invariant, so meshes built from it are conforming across cells.
const std::vector<std::array<int, 4>>& kuhn_corner_simplices(int dim);

// Convenience form: vertex coordinates of the subdivision of the axis-aligned
// cell with lower corner lo and edge length size.
std::vector<std::array<Vec3, 4>> kuhn_subdivide(const Vec3& lo, double size, int dim);

// Simplicial mesh of the narrow band: exactly those Kuhn simplices T of the
// background grid with |phi(b)| <= epsilon*arccos(h/epsilon) at every
// quadrature point b of T.
struct SimplicialBandMesh {
    int dimension = 0;
    double h = 0.0;
    BackgroundGrid grid;
    LevelSetGeometry geometry;  // the geometry the band was selected against
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 4>> simplices;  // vertex indices, [3] = -1 in 2D
    std::vector<double> phi_vertex;             // nodal values of phi
    std::vector<double> grad_interp_phi;        // per-simplex |grad I_h phi| (P1)
    // Simplices of one cell are contiguous: cell key -> (first simplex, count).
    std::unordered_map<long long, std::pair<int, int>> cell_simplices;

    // Edge layer for quadratic elements; empty until build_edges() is called.
    std::vector<std::array<int, 2>> edges;          // sorted vertex pairs
    std::vector<std::array<int, 6>> simplex_edges;  // per-simplex edge indices

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_simplices() const { return static_cast<int>(simplices.size()); }
    int vertices_per_simplex() const { return dimension + 1; }
    int edges_per_simplex() const { return dimension == 2 ? 3 : 6; }

    long long cell_key(const std::array<int, 3>& c) const {
        return (static_cast<long long>(c[0]) * (grid.cells[1] + 1) + c[1]) *
                   (grid.cells[2] + 1) +
               c[2];
    }

    Vec3 edge_midpoint(int e) const {
        return 0.5 * (vertices[edges[e][0]] + vertices[edges[e][1]]);
    }
};

// Local vertex pairs of the edges of a reference simplex, in the order used
// by simplex_edges: 2D (0,1),(0,2),(1,2); 3D (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
const std::array<std::array<int, 2>, 6>& local_edge_pairs(int dim);

// Throws std::invalid_argument if h >= epsilon and std::runtime_error if the
// band comes out empty (surface outside the box or epsilon too small).
SimplicialBandMesh build_band_mesh(const BackgroundGrid& grid, const LevelSetGeometry& geometry,
                                   const PhaseFieldProfile& profile, const QuadratureRule& rule);

// Populates mesh.edges and mesh.simplex_edges (idempotent).
void build_edges(SimplicialBandMesh& mesh);

// Barycentric gradients of the vertex basis on simplex t; also returns the
// simplex measure. grads must hold dim+1 entries.
double simplex_gradients(const SimplicialBandMesh& mesh, int t, Vec3* grads);

// Simplex containing x together with the barycentric coordinates of x in it
// (all >= -1e-12, summing to 1). Searches the owning grid cell first, then its
// neighbors; simplices are tried in index order, so ties on shared faces
// resolve deterministically. Throws std::runtime_error when x is not in the band.
std::pair<int, std::array<double, 4>> locate_point(const SimplicialBandMesh& mesh, const Vec3& x);

} // namespace bandfem

#endif
