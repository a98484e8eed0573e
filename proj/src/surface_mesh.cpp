#include "mcf/surface_mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mcf {

MeshAdjacency build_adjacency(const SurfaceMesh& mesh) {
    MeshAdjacency adj;
    const Index n = mesh.num_vertices();
    adj.vertex_to_vertex.assign(n, {});
    adj.vertex_to_face.assign(n, {});
    std::vector<std::set<Index>> nbr(n);
    for (Index f = 0; f < mesh.num_faces(); ++f) {
        for (int c = 0; c < 3; ++c) {
            Index a = mesh.F(f, c), b = mesh.F(f, (c + 1) % 3);
            nbr[a].insert(b);
            nbr[b].insert(a);
            adj.vertex_to_face[a].push_back(f);
        }
    }
    for (Index i = 0; i < n; ++i)
        adj.vertex_to_vertex[i].assign(nbr[i].begin(), nbr[i].end());
    return adj;
}

std::vector<Index> k_ring(const MeshAdjacency& adj, Index center, int k) {
    std::vector<Index> out;
    std::map<Index, int> dist;
    dist[center] = 0;
    std::deque<Index> queue{center};
    while (!queue.empty()) {
        Index v = queue.front();
        queue.pop_front();
        int d = dist[v];
        if (d >= k) continue;
        for (Index w : adj.vertex_to_vertex[v]) {
            if (dist.count(w)) continue;
            dist[w] = d + 1;
            out.push_back(w);
            queue.push_back(w);
        }
    }
    return out;
}

ValidationReport validate_mesh(const SurfaceMesh& mesh) {
    ValidationReport rep;
    const Index n = mesh.num_vertices();
    if (n < 3 || mesh.num_faces() < 1) {
        rep.fail("mesh has too few vertices or faces");
        return rep;
    }
    for (Index f = 0; f < mesh.num_faces(); ++f)
        for (int c = 0; c < 3; ++c)
            if (mesh.F(f, c) < 0 || mesh.F(f, c) >= n)
                rep.fail("face references out-of-range vertex", f);
    if (!rep.ok) return rep;

    const Real scale = bounding_box_diagonal(mesh);
    for (Index f = 0; f < mesh.num_faces(); ++f) {
        Vec3 a = mesh.vertex(mesh.F(f, 0));
        Vec3 b = mesh.position_near(a.z(), mesh.F(f, 1));
        Vec3 c = mesh.position_near(a.z(), mesh.F(f, 2));
        Real area = 0.5 * ((b - a).cross(c - a)).norm();
        if (!(area > 1e-14 * scale)) rep.fail("degenerate triangle", f);
    }

    // Edge incidence: closed 2-manifold needs every edge in exactly two
    // faces, traversed once per direction (consistent orientation).
    std::map<std::pair<Index, Index>, int> directed;
    for (Index f = 0; f < mesh.num_faces(); ++f) {
        for (int c = 0; c < 3; ++c) {
            Index a = mesh.F(f, c), b = mesh.F(f, (c + 1) % 3);
            if (a == b) {
                rep.fail("face repeats a vertex", f);
                continue;
            }
            directed[{a, b}]++;
        }
    }
    for (auto& [e, cnt] : directed) {
        if (cnt > 1) rep.fail("edge traversed twice in the same direction (orientation)", e.first);
        int opposite = 0;
        auto it = directed.find({e.second, e.first});
        if (it != directed.end()) opposite = it->second;
        if (mesh.closed && opposite != 1)
            rep.fail("edge not shared by exactly two faces on a closed mesh", e.first);
    }
    return rep;
}

Real mesh_area(const SurfaceMesh& mesh) {
    Real area = 0;
    for (Index f = 0; f < mesh.num_faces(); ++f) {
        Vec3 a = mesh.vertex(mesh.F(f, 0));
        Vec3 b = mesh.position_near(a.z(), mesh.F(f, 1));
        Vec3 c = mesh.position_near(a.z(), mesh.F(f, 2));
        area += 0.5 * ((b - a).cross(c - a)).norm();
    }
    return area;
}

Real mesh_volume(const SurfaceMesh& mesh) {
    Real vol = 0;
    for (Index f = 0; f < mesh.num_faces(); ++f) {
        Vec3 a = mesh.vertex(mesh.F(f, 0));
        Vec3 b = mesh.vertex(mesh.F(f, 1));
        Vec3 c = mesh.vertex(mesh.F(f, 2));
        vol += a.dot(b.cross(c)) / 6.0;
    }
    return vol;
}

Index euler_characteristic(const SurfaceMesh& mesh) {
    std::set<std::pair<Index, Index>> edges;
    for (Index f = 0; f < mesh.num_faces(); ++f)
        for (int c = 0; c < 3; ++c) {
            Index a = mesh.F(f, c), b = mesh.F(f, (c + 1) % 3);
            edges.insert({std::min(a, b), std::max(a, b)});
        }
    return mesh.num_vertices() - static_cast<Index>(edges.size()) + mesh.num_faces();
}

Real bounding_box_diagonal(const SurfaceMesh& mesh) {
    Vec3 lo = mesh.V.colwise().minCoeff().transpose();
    Vec3 hi = mesh.V.colwise().maxCoeff().transpose();
    return (hi - lo).norm();
}

VertexMatrix vertex_normals(const SurfaceMesh& mesh) {
    VertexMatrix N = VertexMatrix::Zero(mesh.num_vertices(), 3);
    for (Index f = 0; f < mesh.num_faces(); ++f) {
        Index i = mesh.F(f, 0), j = mesh.F(f, 1), k = mesh.F(f, 2);
        Vec3 a = mesh.vertex(i);
        Vec3 b = mesh.position_near(a.z(), j);
        Vec3 c = mesh.position_near(a.z(), k);
        Vec3 fn = (b - a).cross(c - a);  // magnitude = 2 * area
        N.row(i) += fn.transpose();
        N.row(j) += fn.transpose();
        N.row(k) += fn.transpose();
    }
    for (Index i = 0; i < mesh.num_vertices(); ++i) {
        Real len = N.row(i).norm();
        if (len > 0) N.row(i) /= len;
    }
    return N;
}

std::pair<std::vector<int>, int> connected_components(const SurfaceMesh& mesh) {
    const Index n = mesh.num_vertices();
    std::vector<int> comp(n, -1);
    MeshAdjacency adj = build_adjacency(mesh);
    int count = 0;
    for (Index s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = count;
        std::deque<Index> queue{s};
        while (!queue.empty()) {
            Index v = queue.front();
            queue.pop_front();
            for (Index w : adj.vertex_to_vertex[v])
                if (comp[w] < 0) {
                    comp[w] = count;
                    queue.push_back(w);
                }
        }
        ++count;
    }
    return {comp, count};
}

SurfaceMesh read_obj(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open OBJ file: " + path);
    std::vector<Vec3> verts;
    std::vector<Eigen::Vector3i> faces;
    std::string line;
    Index lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag)) continue;
        if (tag == "v") {
            Real x, y, z;
            if (!(ss >> x >> y >> z))
                throw std::runtime_error("bad vertex line " + std::to_string(lineno) + " in " + path);
            verts.emplace_back(x, y, z);
        } else if (tag == "f") {
            std::vector<long> idx;
            std::string tok;
            while (ss >> tok) {
                // accept "i", "i/..", "i//.."
                idx.push_back(std::stol(tok.substr(0, tok.find('/'))));
            }
            if (idx.size() != 3)
                throw std::runtime_error("non-triangle face at line " + std::to_string(lineno) +
                                         " in " + path + " (triangles only)");
            faces.emplace_back(static_cast<int>(idx[0] - 1), static_cast<int>(idx[1] - 1),
                               static_cast<int>(idx[2] - 1));
        }
    }
    SurfaceMesh mesh;
    mesh.V.resize(static_cast<Index>(verts.size()), 3);
    for (size_t i = 0; i < verts.size(); ++i) mesh.V.row(static_cast<Index>(i)) = verts[i].transpose();
    mesh.F.resize(static_cast<Index>(faces.size()), 3);
    for (size_t i = 0; i < faces.size(); ++i) mesh.F.row(static_cast<Index>(i)) = faces[i].transpose();
    return mesh;
}

void write_obj(const SurfaceMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write OBJ file: " + path);
    char buf[128];
    for (Index i = 0; i < mesh.num_vertices(); ++i) {
        std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", mesh.V(i, 0), mesh.V(i, 1),
                      mesh.V(i, 2));
        out << buf;
    }
    for (Index f = 0; f < mesh.num_faces(); ++f)
        out << "f " << mesh.F(f, 0) + 1 << ' ' << mesh.F(f, 1) + 1 << ' ' << mesh.F(f, 2) + 1
            << '\n';
}

}  // namespace mcf
