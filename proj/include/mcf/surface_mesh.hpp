#ifndef MCF_SURFACE_MESH_HPP
#define MCF_SURFACE_MESH_HPP

#include <optional>
#include <string>
#include <vector>

#include "mcf/types.hpp"

namespace mcf {

/// Closed oriented triangle mesh. `closed` is the intent flag; validate()
/// checks it against the actual edge incidence.
struct SurfaceMesh {
    VertexMatrix V;  // n x 3
    FaceMatrix F;    // m x 3, CCW seen from outside
    bool closed = true;
    // Axial period along e_z for periodic strips (cylinder barrel tests).
    // Neighbor gathers unwrap across the seam; empty for ordinary meshes.
    std::optional<Real> period_z;

    Index num_vertices() const { return V.rows(); }
    Index num_faces() const { return F.rows(); }

    Vec3 vertex(Index i) const { return V.row(i).transpose(); }

    // Neighbor position as seen from a point with axial coordinate z_ref:
    // unwraps the periodic seam when period_z is set.
    Vec3 position_near(Real z_ref, Index q) const {
        Vec3 p = V.row(q).transpose();
        if (period_z) {
            const Real P = *period_z;
            Real d = p.z() - z_ref;
            if (d > 0.5 * P) p.z() -= P;
            else if (d < -0.5 * P) p.z() += P;
        }
        return p;
    }
};

struct MeshAdjacency {
    std::vector<std::vector<Index>> vertex_to_vertex;
    std::vector<std::vector<Index>> vertex_to_face;
};

MeshAdjacency build_adjacency(const SurfaceMesh& mesh);

/// k-ring neighborhood (graph distance <= k), excluding the center.
std::vector<Index> k_ring(const MeshAdjacency& adj, Index center, int k);

ValidationReport validate_mesh(const SurfaceMesh& mesh);

Real mesh_area(const SurfaceMesh& mesh);
/// Signed volume via the divergence theorem; positive for outward orientation.
Real mesh_volume(const SurfaceMesh& mesh);
Index euler_characteristic(const SurfaceMesh& mesh);
Real bounding_box_diagonal(const SurfaceMesh& mesh);

/// Area-weighted vertex normals (normalized). Requires consistent orientation.
VertexMatrix vertex_normals(const SurfaceMesh& mesh);

/// Connected components by face adjacency; returns per-vertex component id
/// and the component count.
std::pair<std::vector<int>, int> connected_components(const SurfaceMesh& mesh);

SurfaceMesh read_obj(const std::string& path);
void write_obj(const SurfaceMesh& mesh, const std::string& path);

}  // namespace mcf

#endif
