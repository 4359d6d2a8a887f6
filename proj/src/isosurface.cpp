#include "bandfem/isosurface.hpp"

#include <stdexcept>
#include <unordered_map>

namespace bandfem {

double TriangleSurface::area() const {
    double a = 0.0;
    for (const auto& t : triangles) {
        const Vec3 e1 = vertices[t[1]] - vertices[t[0]];
        const Vec3 e2 = vertices[t[2]] - vertices[t[0]];
        a += 0.5 * norm(cross(e1, e2));
    }
    return a;
}

TriangleSurface extract_zero_isosurface(const SimplicialBandMesh& mesh,
                                        const std::vector<double>& u_h) {
    if (mesh.dimension != 3)
        throw std::invalid_argument("extract_zero_isosurface needs a 3D band mesh");
    if (u_h.size() < mesh.vertices.size())
        throw std::invalid_argument("extract_zero_isosurface: coefficient vector too short");

    TriangleSurface surface;
    std::unordered_map<long long, int> vertex_of_edge;
    const long long nv = mesh.num_vertices();

    // Cut point on the mesh edge (a, b); the endpoints are ordered by global
    // index so shared edges produce bit-identical vertices.
    auto cut_vertex = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        const long long key = a * nv + b;
        const auto it = vertex_of_edge.find(key);
        if (it != vertex_of_edge.end()) return it->second;
        const double pa = mesh.phi_vertex[a], pb = mesh.phi_vertex[b];
        const double t = pa / (pa - pb);
        const int idx = static_cast<int>(surface.vertices.size());
        surface.vertices.push_back(mesh.vertices[a] + t * (mesh.vertices[b] - mesh.vertices[a]));
        surface.scalars.push_back(u_h[a] + t * (u_h[b] - u_h[a]));
        vertex_of_edge.emplace(key, idx);
        return idx;
    };

    for (const auto& s : mesh.simplices) {
        int neg[4], pos[4];
        int nn = 0, np = 0;
        for (int a = 0; a < 4; ++a) {
            if (mesh.phi_vertex[s[a]] < 0.0)
                neg[nn++] = s[a];
            else
                pos[np++] = s[a];
        }
        if (nn == 0 || nn == 4) continue;

        if (nn == 1 || nn == 3) {
            const int apex = (nn == 1) ? neg[0] : pos[0];
            const int* base = (nn == 1) ? pos : neg;
            const int v0 = cut_vertex(apex, base[0]);
            const int v1 = cut_vertex(apex, base[1]);
            const int v2 = cut_vertex(apex, base[2]);
            surface.triangles.push_back({v0, v1, v2});
        } else {
            // Two vertices on each side: the cut is a quad, split into two
            // triangles along one diagonal.
            const int v00 = cut_vertex(neg[0], pos[0]);
            const int v01 = cut_vertex(neg[0], pos[1]);
            const int v10 = cut_vertex(neg[1], pos[0]);
            const int v11 = cut_vertex(neg[1], pos[1]);
            surface.triangles.push_back({v00, v01, v11});
            surface.triangles.push_back({v00, v11, v10});
        }
    }
    return surface;
}

} // namespace bandfem
