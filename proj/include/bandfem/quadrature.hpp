#ifndef BANDFEM_QUADRATURE_HPP
#define BANDFEM_QUADRATURE_HPP

#include <array>
#include <vector>

#include "bandfem/types.hpp"

namespace bandfem {

// Positive-weight quadrature rule on the reference simplex, stored in
// barycentric coordinates. Weights are normalized against the reference
// simplex measure, so they sum to one and
//
//   Q_T(g) = |T| * sum_i w_i * g(b_{i,T})
//
// on a physical simplex T with mapped points b_{i,T}.
struct QuadratureRule {
    int dimension = 0;  // 2 = triangle, 3 = tetrahedron
    int degree = 0;     // every polynomial of total degree <= degree integrates exactly
    std::vector<std::array<double, 4>> points;  // barycentric tuples, [dim+1..3] zero
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
};

// Tabulated rule lookup. Supported: dimension in {2,3}, degree in {1,2,6}.
// Throws std::invalid_argument when no table exists for the pair.
const QuadratureRule& rule_for(int dimension, int degree_q);

// One mapped quadrature point: physical location and weight scaled by the
// simplex measure (so the weights of a rule sum to |T|).
struct MappedPoint {
    Vec3 point;
    double weight;
};

// Measure of the simplex spanned by dim+1 vertices (dim = 2 or 3).
double simplex_measure(const Vec3* vertices, int dim);

// Affine push-forward of a reference rule to the physical simplex given by
// dim+1 vertices. Throws std::invalid_argument for (near-)degenerate input.
std::vector<MappedPoint> map_to_element(const QuadratureRule& rule, const Vec3* vertices, int dim);

} // namespace bandfem

#endif
