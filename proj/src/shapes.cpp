#include "mcf/shapes.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "mcf/cap_model.hpp"

namespace mcf {

ValidationReport ShapeSpec::validate() const {
    ValidationReport rep;
    switch (kind) {
        case ShapeKind::Sphere:
            if (!(radius > 0)) rep.fail("sphere radius must be positive");
            break;
        case ShapeKind::Cylinder:
            if (!(radius > 0) || !(length > 0)) rep.fail("cylinder radius/length must be positive");
            break;
        case ShapeKind::Ellipsoid:
            if (!(a > 0 && b > 0 && c > 0)) rep.fail("ellipsoid semi-axes must be positive");
            break;
        case ShapeKind::Dumbbell:
            if (!(bulb_radius > 0 && radius > 0 && separation > 0))
                rep.fail("dumbbell parameters must be positive");
            if (!(radius < bulb_radius)) rep.fail("dumbbell waist must be thinner than the bulbs");
            if (!(separation > 0.2 * bulb_radius)) rep.fail("dumbbell bulbs overlap completely");
            break;
        case ShapeKind::Torus:
            if (!(radius > 0 && separation > radius))
                rep.fail("torus needs 0 < tube radius < ring radius");
            break;
        case ShapeKind::ModelCap:
            if (!(cap_extent > 0)) rep.fail("model cap extent must be positive");
            break;
        case ShapeKind::Obj:
            if (obj_path.empty()) rep.fail("obj path missing");
            break;
    }
    return rep;
}

SurfaceMesh icosphere(Real R, int subdivisions) {
    const Real phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> verts = {
        {-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0}, {0, -1, phi},  {0, 1, phi},
        {0, -1, -phi}, {0, 1, -phi}, {phi, 0, -1},  {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
    for (auto& v : verts) v.normalize();
    std::vector<Eigen::Vector3i> faces = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},  {5, 11, 4},
        {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6},  {3, 6, 8},
        {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
    for (int s = 0; s < subdivisions; ++s) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int i, int j) {
            auto key = std::minmax(i, j);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            Vec3 m = (verts[i] + verts[j]).normalized();
            verts.push_back(m);
            int id = static_cast<int>(verts.size()) - 1;
            midpoint[key] = id;
            return id;
        };
        std::vector<Eigen::Vector3i> next;
        next.reserve(faces.size() * 4);
        for (auto& f : faces) {
            int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces.swap(next);
    }
    SurfaceMesh mesh;
    mesh.V.resize(static_cast<Index>(verts.size()), 3);
    for (size_t i = 0; i < verts.size(); ++i) mesh.V.row(static_cast<Index>(i)) = (R * verts[i]).transpose();
    mesh.F.resize(static_cast<Index>(faces.size()), 3);
    for (size_t i = 0; i < faces.size(); ++i) mesh.F.row(static_cast<Index>(i)) = faces[i].transpose();
    mesh.closed = true;
    return mesh;
}

Real DumbbellProfile::radius(Real z) const {
    const Real R = bulb_radius, rw = waist_radius, c = 0.5 * separation;
    const Real az = std::abs(z);
    auto sphere = [&](Real x) {
        Real d = x - c;
        Real v = R * R - d * d;
        return v > 0 ? std::sqrt(v) : 0.0;
    };
    // junction at the slope-1 point of the bulb profile; the even sextic
    // waist matches value, slope and second derivative there, so the
    // profile is C^2 with no blend window
    const Real zj = c - R / std::sqrt(2.0);
    if (az >= zj) return sphere(az);
    const Real rs = R / std::sqrt(2.0);
    const Real rsp = 1.0;
    const Real rspp = -2.0 / rs;  // (-r - (c-z) r')/r^2 at the slope-1 point
    Mat3 M;
    Vec3 rhs;
    const Real u = zj * zj;
    M << u, u * u, u * u * u,
        2 * zj, 4 * zj * u, 6 * zj * u * u,
        2, 12 * u, 30 * u * u;
    rhs << rs - rw, rsp, rspp;
    Vec3 a = M.fullPivLu().solve(rhs);
    const Real x = az * az;
    return rw + a(0) * x + a(1) * x * x + a(2) * x * x * x;
}

namespace {

AxiProfile sampled_profile(Real z_lo, Real z_hi, int n, const std::function<Real(Real)>& f,
                           AxiBoundary bc) {
    AxiProfile p;
    p.boundary = bc;
    p.z.resize(n);
    p.r.resize(n);
    const Real h = (z_hi - z_lo) / (bc == AxiBoundary::Periodic ? n : n - 1);
    for (int i = 0; i < n; ++i) {
        p.z(i) = z_lo + h * i;
        p.r(i) = f(p.z(i));
    }
    return p;
}

SurfaceMesh torus_mesh(Real R, Real r, int nu, int nv) {
    SurfaceMesh mesh;
    mesh.V.resize(static_cast<Index>(nu) * nv, 3);
    std::vector<Eigen::Vector3i> faces;
    for (int i = 0; i < nu; ++i) {
        Real u = 2 * M_PI * i / nu;
        for (int j = 0; j < nv; ++j) {
            Real v = 2 * M_PI * j / nv;
            Real rho = R + r * std::cos(v);
            mesh.V.row(static_cast<Index>(i) * nv + j) << rho * std::cos(u), rho * std::sin(u),
                r * std::sin(v);
        }
    }
    auto at = [&](int i, int j) { return ((i % nu) * nv + (j % nv)); };
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j) {
            faces.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
            faces.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
        }
    mesh.F.resize(static_cast<Index>(faces.size()), 3);
    for (size_t f = 0; f < faces.size(); ++f) mesh.F.row(static_cast<Index>(f)) = faces[f].transpose();
    mesh.closed = true;
    if (mesh_volume(mesh) < 0)
        for (Index f = 0; f < mesh.num_faces(); ++f) std::swap(mesh.F(f, 1), mesh.F(f, 2));
    return mesh;
}

}  // namespace

SurfaceMesh generate_mesh(const ShapeSpec& spec, int resolution) {
    ValidationReport rep = spec.validate();
    if (!rep.ok) throw std::invalid_argument("invalid shape: " + rep.issues.front().what);
    const int res = std::max(1, resolution);
    switch (spec.kind) {
        case ShapeKind::Sphere:
            return icosphere(spec.radius, std::min(res, 7));
        case ShapeKind::Ellipsoid: {
            SurfaceMesh m = icosphere(1.0, std::min(res, 7));
            m.V.col(0) *= spec.a;
            m.V.col(1) *= spec.b;
            m.V.col(2) *= spec.c;
            return m;
        }
        case ShapeKind::Cylinder: {
            const int nt = 8 << std::min(res, 6);
            const Real h_target = 2 * M_PI * spec.radius / nt;
            if (spec.periodic) {
                int n = std::max(8, static_cast<int>(std::lround(spec.length / h_target)));
                AxiProfile p = sampled_profile(0.0, spec.length, n,
                                               [&](Real) { return spec.radius; },
                                               AxiBoundary::Periodic);
                return axi_to_mesh(p, nt);
            }
            // capsule: hemispherical caps keep the shape mean-convex
            const Real half = 0.5 * spec.length, R = spec.radius;
            auto f = [&](Real z) {
                Real az = std::abs(z);
                if (az <= half) return R;
                Real d = az - half;
                return std::sqrt(std::max(R * R - d * d, Real(0)));
            };
            Real ext = half + R;
            int n = std::max(16, static_cast<int>(std::lround(2 * (ext - 0.75 * h_target) / h_target)));
            AxiProfile p = sampled_profile(-(ext - 0.75 * h_target), ext - 0.75 * h_target, n, f,
                                           AxiBoundary::ClosedByAxis);
            return axi_to_mesh(p, nt);
        }
        case ShapeKind::Dumbbell: {
            DumbbellProfile dp{spec.bulb_radius, spec.radius, spec.separation};
            const int nt = 8 << std::min(res, 6);
            const Real h_target = 2 * M_PI * spec.radius / nt;
            Real ext = dp.z_extent();
            int n = std::max(32, static_cast<int>(std::lround(2 * ext / h_target)));
            AxiProfile p = sampled_profile(-(ext - 0.75 * h_target * 2), ext - 0.75 * h_target * 2,
                                           n, [&](Real z) { return dp.radius(z); },
                                           AxiBoundary::ClosedByAxis);
            return axi_to_mesh(p, nt);
        }
        case ShapeKind::Torus:
            return torus_mesh(spec.separation, spec.radius, 24 << std::min(res, 5),
                              8 << std::min(res, 5));
        case ShapeKind::ModelCap:
            return model_cap_mesh(spec.cap_extent, 32 << std::min(res, 4));
        case ShapeKind::Obj:
            return read_obj(spec.obj_path);
    }
    throw std::logic_error("unreachable");
}

AxiProfile generate_profile(const ShapeSpec& spec, int grid_points) {
    ValidationReport rep = spec.validate();
    if (!rep.ok) throw std::invalid_argument("invalid shape: " + rep.issues.front().what);
    const int n = std::max(8, grid_points);
    switch (spec.kind) {
        case ShapeKind::Sphere: {
            const Real R = spec.radius;
            const Real h = 2 * R / (n + 1);
            return sampled_profile(-R + 0.75 * h, R - 0.75 * h, n,
                                   [&](Real z) { return std::sqrt(std::max(R * R - z * z, Real(0))); },
                                   AxiBoundary::ClosedByAxis);
        }
        case ShapeKind::Cylinder: {
            if (spec.periodic)
                return sampled_profile(0.0, spec.length, n, [&](Real) { return spec.radius; },
                                       AxiBoundary::Periodic);
            const Real half = 0.5 * spec.length, R = spec.radius;
            auto f = [&](Real z) {
                Real az = std::abs(z);
                if (az <= half) return R;
                Real d = az - half;
                return std::sqrt(std::max(R * R - d * d, Real(0)));
            };
            const Real ext = half + R;
            const Real h = 2 * ext / (n + 1);
            return sampled_profile(-(ext - 0.75 * h), ext - 0.75 * h, n, f,
                                   AxiBoundary::ClosedByAxis);
        }
        case ShapeKind::Ellipsoid: {
            if (std::abs(spec.a - spec.b) > 1e-12 * std::max(spec.a, spec.b))
                throw std::invalid_argument("only ellipsoids of revolution (a == b) have a profile");
            const Real A = spec.a, C = spec.c;
            const Real h = 2 * C / (n + 1);
            return sampled_profile(-C + 0.75 * h, C - 0.75 * h, n,
                                   [&](Real z) {
                                       return A * std::sqrt(std::max(1 - z * z / (C * C), Real(0)));
                                   },
                                   AxiBoundary::ClosedByAxis);
        }
        case ShapeKind::Dumbbell: {
            DumbbellProfile dp{spec.bulb_radius, spec.radius, spec.separation};
            const Real ext = dp.z_extent();
            const Real h = 2 * ext / (n + 1);
            return sampled_profile(-(ext - 0.75 * h), ext - 0.75 * h, n,
                                   [&](Real z) { return dp.radius(z); }, AxiBoundary::ClosedByAxis);
        }
        default:
            throw std::invalid_argument("shape has no axisymmetric r(z) profile");
    }
}

}  // namespace mcf
