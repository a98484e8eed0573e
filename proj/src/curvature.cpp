#include "mcf/curvature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace mcf {

namespace {

struct QuadricFit {
    bool ok = false;
    Real a = 0, b = 0, c = 0;  // Hessian entries fxx, fxy, fyy
    Real d = 0, e = 0;         // gradient at the vertex
};

// Height-function fit over the tangent frame: the quadratic part carries the
// curvature, cubic nuisance terms absorb the third-order bias when the ring
// is rich enough. Offsets are pre-scaled to unit ring radius by the caller.
QuadricFit fit_quadric(const std::vector<Vec3>& offsets, const Vec3& e1, const Vec3& e2,
                       const Vec3& n) {
    QuadricFit fit;
    const int m = static_cast<int>(offsets.size());
    if (m < 5) return fit;
    const bool cubic = m >= 12;
    const int cols = cubic ? 9 : 5;
    Eigen::MatrixXd A(m, cols);
    Eigen::VectorXd rhs(m);
    for (int i = 0; i < m; ++i) {
        const Vec3& d = offsets[i];
        Real x = d.dot(e1), y = d.dot(e2), z = d.dot(n);
        A(i, 0) = 0.5 * x * x;
        A(i, 1) = x * y;
        A(i, 2) = 0.5 * y * y;
        A(i, 3) = x;
        A(i, 4) = y;
        if (cubic) {
            A(i, 5) = x * x * x;
            A(i, 6) = x * x * y;
            A(i, 7) = x * y * y;
            A(i, 8) = y * y * y;
        }
        rhs(i) = z;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues()(cols - 1) < 1e-10 * svd.singularValues()(0)) return fit;
    Eigen::VectorXd sol = svd.solve(rhs);
    fit.ok = true;
    fit.a = sol(0);
    fit.b = sol(1);
    fit.c = sol(2);
    fit.d = sol(3);
    fit.e = sol(4);
    return fit;
}

}  // namespace

CurvatureField compute_curvature(const SurfaceMesh& mesh) {
    const Index n = mesh.num_vertices();
    CurvatureField field;
    field.normal = vertex_normals(mesh);
    field.lambda1.setZero(n);
    field.lambda2.setZero(n);
    field.H.setZero(n);
    field.dir1.setZero(n, 3);
    field.grad_A.setZero(n);
    field.grad2_A.setZero(n);

    MeshAdjacency adj = build_adjacency(mesh);
    std::vector<Mat3> world_shape(n, Mat3::Zero());

    for (Index v = 0; v < n; ++v) {
        Vec3 p = mesh.vertex(v);
        Vec3 nrm = field.normal.row(v).transpose();
        // tangent frame
        Vec3 any = std::abs(nrm.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
        Vec3 e1 = nrm.cross(any).normalized();
        Vec3 e2 = nrm.cross(e1);

        std::vector<Index> ring = k_ring(adj, v, 2);
        std::vector<Vec3> offsets;
        offsets.reserve(ring.size());
        Real ring_radius = 0;
        for (Index q : ring) {
            offsets.push_back(mesh.position_near(p.z(), q) - p);
            ring_radius = std::max(ring_radius, offsets.back().norm());
        }
        if (ring_radius > 0)
            for (Vec3& d : offsets) d /= ring_radius;

        QuadricFit fit = fit_quadric(offsets, e1, e2, nrm);
        fit.a /= ring_radius;
        fit.b /= ring_radius;
        fit.c /= ring_radius;
        if (!fit.ok) {
            field.flagged.push_back(v);
            field.normal.row(v) = nrm.transpose();
            field.dir1.row(v) = e1.transpose();
            continue;
        }

        // shape operator with slope correction; curvature of the graph
        // w.r.t. the upward (= outward) normal is -G^{-1/2} Hess G^{-1/2} / w
        const Real w = std::sqrt(1 + fit.d * fit.d + fit.e * fit.e);
        Mat2 G;
        G << 1 + fit.d * fit.d, fit.d * fit.e, fit.d * fit.e, 1 + fit.e * fit.e;
        Mat2 Hess;
        Hess << fit.a, fit.b, fit.b, fit.c;
        Eigen::SelfAdjointEigenSolver<Mat2> gsolve(G);
        Mat2 Ginvsqrt = gsolve.operatorInverseSqrt();
        Mat2 W = -(Ginvsqrt * Hess * Ginvsqrt) / w;
        Eigen::SelfAdjointEigenSolver<Mat2> wsolve(W);
        Real l1 = wsolve.eigenvalues()(0), l2 = wsolve.eigenvalues()(1);
        Eigen::Vector2d v1 = Ginvsqrt * wsolve.eigenvectors().col(0);

        field.lambda1(v) = l1;
        field.lambda2(v) = l2;
        field.H(v) = l1 + l2;
        Vec3 nu = (e1 * (-fit.d) + e2 * (-fit.e) + nrm) / w;
        field.normal.row(v) = nu.normalized().transpose();
        field.dir1.row(v) = (e1 * v1(0) + e2 * v1(1)).normalized().transpose();

        Mat3 Tan;  // world 3x2 tangent basis packed into 3x3 with zero last col
        Tan.col(0) = e1;
        Tan.col(1) = e2;
        Tan.col(2).setZero();
        Mat2 Sw = -(G.inverse() * Hess) / w;
        world_shape[v] = Tan.leftCols<2>() * Sw * Tan.leftCols<2>().transpose();
    }

    for (Index v = 0; v < n; ++v) {
        Real worst = 0;
        Vec3 p = mesh.vertex(v);
        for (Index q : adj.vertex_to_vertex[v]) {
            Real len = (mesh.position_near(p.z(), q) - p).norm();
            if (len > 0)
                worst = std::max(worst, (world_shape[q] - world_shape[v]).norm() / len);
        }
        field.grad_A(v) = worst;
    }
    for (Index v = 0; v < n; ++v) {
        Real worst = 0;
        Vec3 p = mesh.vertex(v);
        for (Index q : adj.vertex_to_vertex[v]) {
            Real len = (mesh.position_near(p.z(), q) - p).norm();
            if (len > 0) worst = std::max(worst, std::abs(field.grad_A(q) - field.grad_A(v)) / len);
        }
        field.grad2_A(v) = worst;
    }
    return field;
}

namespace {

Real touching_ratio_scan(const SurfaceMesh& mesh, Index p, const Vec3& nu) {
    const Vec3 pp = mesh.vertex(p);
    Real best = -kInf;
    const bool periodic = mesh.period_z.has_value();
    const Real P = periodic ? *mesh.period_z : 0.0;
    for (Index q = 0; q < mesh.num_vertices(); ++q) {
        if (q == p) continue;
        Vec3 qq = mesh.vertex(q);
        for (int shift = periodic ? -1 : 0; shift <= (periodic ? 1 : 0); ++shift) {
            Vec3 qs = qq + Vec3(0, 0, shift * P);
            Vec3 d = pp - qs;
            Real d2 = d.squaredNorm();
            if (d2 < 1e-30) continue;
            best = std::max(best, 2 * d.dot(nu) / d2);
        }
    }
    return best;
}

}  // namespace

Real inscribed_radius_mu(const SurfaceMesh& mesh, const CurvatureField& field, Index p) {
    if (!mesh.closed)
        throw std::invalid_argument("inscribed radius undefined on an open mesh");
    Vec3 nu = field.normal.row(p).transpose();
    return std::max(field.lambda2(p), touching_ratio_scan(mesh, p, nu));
}

Real outer_radius(const SurfaceMesh& mesh, const CurvatureField& field, Index p) {
    if (!mesh.closed)
        throw std::invalid_argument("outer radius undefined on an open mesh");
    const Real cap = 10.0 * bounding_box_diagonal(mesh);
    Vec3 nu = -field.normal.row(p).transpose();
    Real ratio = touching_ratio_scan(mesh, p, nu);
    if (ratio <= 1.0 / cap) return cap;
    return 1.0 / ratio;
}

RadiusField compute_radii(const SurfaceMesh& mesh, const CurvatureField& field) {
    const Index n = mesh.num_vertices();
    RadiusField rad;
    rad.mu.resize(n);
    rad.rho_out.resize(n);
    for (Index p = 0; p < n; ++p) {
        rad.mu(p) = inscribed_radius_mu(mesh, field, p);
        rad.rho_out(p) = outer_radius(mesh, field, p);
    }
    return rad;
}

NoncollapsingReport noncollapsing_report(const SurfaceMesh& mesh, const CurvatureField& field,
                                         const RadiusField& radii) {
    NoncollapsingReport rep;
    const Index n = mesh.num_vertices();
    for (Index v = 0; v < n; ++v)
        if (!(field.H(v) > 0)) {
            rep.mean_convex = false;
            rep.non_convex_vertices.push_back(v);
        }
    if (!rep.mean_convex) return rep;
    rep.alpha_in = kInf;
    rep.alpha_out = kInf;
    for (Index v = 0; v < n; ++v) {
        if (radii.mu(v) > 0 && field.H(v) / radii.mu(v) < rep.alpha_in) {
            rep.alpha_in = field.H(v) / radii.mu(v);
            rep.argmin_in = v;
        }
        if (field.H(v) * radii.rho_out(v) < rep.alpha_out) {
            rep.alpha_out = field.H(v) * radii.rho_out(v);
            rep.argmin_out = v;
        }
    }
    return rep;
}

NoncollapsingReport noncollapsing_report(const SurfaceMesh& mesh) {
    CurvatureField field = compute_curvature(mesh);
    RadiusField radii = compute_radii(mesh, field);
    return noncollapsing_report(mesh, field, radii);
}

}  // namespace mcf
