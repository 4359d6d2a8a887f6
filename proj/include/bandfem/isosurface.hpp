#ifndef BANDFEM_ISOSURFACE_HPP
#define BANDFEM_ISOSURFACE_HPP

#include <array>
#include <vector>

#include "bandfem/mesh.hpp"

namespace bandfem {

// Triangulated level surface with one scalar per vertex.
struct TriangleSurface {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<double> scalars;  // sampled field, one value per vertex

    double area() const;
};

// Marching-simplices extraction of {I_h phi = 0} from a 3D band mesh. Each
// output vertex lies on a mesh edge at the exact zero of the linearly
// interpolated phi; the scalar is u_h interpolated the same way. Vertices on
// shared edges are merged, so the surface is watertight. An empty surface is
// returned when no element is crossed.
TriangleSurface extract_zero_isosurface(const SimplicialBandMesh& mesh,
                                        const std::vector<double>& u_h);

} // namespace bandfem

#endif
