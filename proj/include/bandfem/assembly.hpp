#ifndef BANDFEM_ASSEMBLY_HPP
#define BANDFEM_ASSEMBLY_HPP

#include <vector>

#include "bandfem/mesh.hpp"
#include "bandfem/problem.hpp"

namespace bandfem {

// Symmetric sparse matrix in compressed-row form with sorted column indices.
struct SparseMatrix {
    int n = 0;
    std::vector<int> row_ptr;
    std::vector<int> col;
    std::vector<double> val;

    std::size_t nnz() const { return val.size(); }
    // Reference to the stored entry (r, c); throws std::out_of_range when the
    // position is not part of the sparsity pattern.
    double& entry(int r, int c);
    double get(int r, int c) const;
    void multiply(const std::vector<double>& x, std::vector<double>& y) const;
};

struct AssembledSystem {
    SparseMatrix matrix;
    std::vector<double> rhs;
    int element_order = 1;
    double epsilon = 0.0;

    int num_dofs() const { return matrix.n; }
};

// Piecewise linear scheme: one DOF per mesh vertex,
//   M(k,l) = eps^-1 sum_T Q_T[ rho (I_h A^ grad chi_l . grad chi_k
//                                   + I_h a0^ chi_l chi_k) ] |grad I_h phi|_T,
//   b(k)   = eps^-1 sum_T Q_T[ rho I_h f^ chi_k ] |grad I_h phi|_T,
// where A^, a0^, f^ are the problem data pulled back through the closest-point
// map and interpolated from their vertex values, and rho is evaluated exactly
// at the quadrature points.
AssembledSystem assemble_p1(const SimplicialBandMesh& mesh, const QuadratureRule& rule,
                            const PhaseFieldProfile& profile, const LevelSetGeometry& geometry,
                            const SurfaceProblem& problem);

// Piecewise quadratic scheme (unit coefficients A = I, a0 = 1): DOFs at
// vertices and edge midpoints, quadratic interpolation of f^ and of phi, and
// |grad I_h phi| evaluated pointwise inside the quadrature sum. Builds the
// mesh edge layer if not present.
AssembledSystem assemble_p2(SimplicialBandMesh& mesh, const QuadratureRule& rule,
                            const PhaseFieldProfile& profile, const LevelSetGeometry& geometry,
                            const SurfaceProblem& problem);

// Weighted band norm sqrt( eps^-1 sum_T Q_T[ rho (|v|^2 + |grad v|^2) ] ).
// The coefficient vector length selects the element order: #vertices for
// linear, #vertices + #edges for quadratic (edge layer must be built).
double discrete_norm_h(const SimplicialBandMesh& mesh, const QuadratureRule& rule,
                       const PhaseFieldProfile& profile, const std::vector<double>& coefficients);

// Nodal values of the closest-point pullback g(p^(x)) at all P1 or P2 nodes
// (vertices, then edge midpoints for order 2).
std::vector<double> nodal_pullback(const SimplicialBandMesh& mesh, const LevelSetGeometry& geometry,
                                   const std::function<double(const Vec3&)>& g, int element_order);

} // namespace bandfem

#endif
