#include "mcf/cap_model.hpp"

#include <cmath>
#include <stdexcept>

#include "mcf/curvature.hpp"

namespace mcf {

Vec3 model_point(Real s, Real t) {
    if (s < 0) throw std::invalid_argument("model cap parameter s must be nonnegative");
    Real rho = std::sqrt(s / (1 + s));
    return {rho * std::cos(2 * M_PI * t), rho * std::sin(2 * M_PI * t), s};
}

ModelCurvatures model_curvatures(Real s) {
    if (s < 0) throw std::invalid_argument("model cap parameter s must be nonnegative");
    const Real A = 1 + 4 * s * cube(1 + s);
    const Real p2 = sq(1 + s);
    ModelCurvatures mc;
    mc.lambda1 = 2 * std::pow(A, -1.5) * p2 * (1 + 4 * s);
    mc.lambda2 = 2 * std::pow(A, -0.5) * p2;
    mc.mu = mc.lambda2;  // inscribed radius = A^{1/2} (1+s)^{-2} / 2
    return mc;
}

TouchingBall model_touching_ball(Real s) {
    TouchingBall ball;
    ball.center = Vec3(0, 0, s + 0.5 / sq(1 + s));
    ball.radius = 0.5 * std::sqrt(1 + 4 * s * cube(1 + s)) / sq(1 + s);
    return ball;
}

namespace {

Real profile_slope(Real s) {  // d/ds sqrt(s/(1+s)) = s^{-1/2} (1+s)^{-3/2} / 2
    return 0.5 / (std::sqrt(s) * std::pow(1 + s, 1.5));
}

}  // namespace

ModelCapMesh model_cap_mesh_graded(Real S, int nt) {
    if (!(S > 0) || nt < 8) throw std::invalid_argument("model cap mesh needs S > 0 and >= 8 angular samples");
    const Real edge = 2 * M_PI / nt;  // target edge length at unit radius

    // march stations by equal arclength along the profile
    std::vector<Real> stations;
    Real s = 0;
    // first ring: place at profile arclength `edge` from the tip;
    // near 0 arclength(s) ~ sqrt(s) (slope dominates), invert that
    s = sq(edge) * 0.9;
    while (s < S) {
        stations.push_back(s);
        Real sl = profile_slope(s);
        s += edge / std::sqrt(1 + sl * sl);
    }
    stations.push_back(S);

    const Index nrings = static_cast<Index>(stations.size());
    ModelCapMesh out;
    out.mesh.V.resize(nrings * nt + 1, 3);
    out.vertex_s.resize(nrings * nt + 1);
    for (Index i = 0; i < nrings; ++i)
        for (int k = 0; k < nt; ++k) {
            out.mesh.V.row(i * nt + k) = model_point(stations[i], Real(k) / nt).transpose();
            out.vertex_s(i * nt + k) = stations[i];
        }
    const Index apex = nrings * nt;
    out.mesh.V.row(apex).setZero();
    out.vertex_s(apex) = -1;

    std::vector<Eigen::Vector3i> faces;
    auto ring = [&](Index i, int k) { return static_cast<int>(i * nt + (k % nt)); };
    for (Index i = 0; i + 1 < nrings; ++i)
        for (int k = 0; k < nt; ++k) {
            faces.push_back({ring(i, k), ring(i + 1, k + 1), ring(i + 1, k)});
            faces.push_back({ring(i, k), ring(i, k + 1), ring(i + 1, k + 1)});
        }
    for (int k = 0; k < nt; ++k)
        faces.push_back({static_cast<int>(apex), ring(0, k + 1), ring(0, k)});
    out.mesh.F.resize(static_cast<Index>(faces.size()), 3);
    for (size_t f = 0; f < faces.size(); ++f)
        out.mesh.F.row(static_cast<Index>(f)) = faces[f].transpose();
    out.mesh.closed = false;  // open at s = S by construction
    return out;
}

SurfaceMesh model_cap_mesh(Real S, int angular) { return model_cap_mesh_graded(S, angular).mesh; }

ModelValidationReport validate_model(Real S, const std::vector<int>& angular_resolutions) {
    if (angular_resolutions.size() < 2)
        throw std::invalid_argument("validate_model needs at least two resolutions");
    ModelValidationReport report;
    for (int nt : angular_resolutions) {
        ModelCapMesh cap = model_cap_mesh_graded(S, nt);
        // close the open rim with a disk fan so the mu scan is legitimate;
        // rim vertices themselves are excluded from comparisons anyway.
        SurfaceMesh closed = cap.mesh;
        {
            const Index nv = closed.num_vertices();
            Real s_max = cap.vertex_s.maxCoeff();
            VertexMatrix V2(nv + 1, 3);
            V2.topRows(nv) = closed.V;
            V2.row(nv) << 0, 0, s_max;
            Index rim_start = -1;
            std::vector<int> rim;
            for (Index i = 0; i < nv; ++i)
                if (cap.vertex_s(i) == s_max) rim.push_back(static_cast<int>(i));
            (void)rim_start;
            FaceMatrix F2(closed.F.rows() + static_cast<Index>(rim.size()), 3);
            F2.topRows(closed.F.rows()) = closed.F;
            for (size_t k = 0; k < rim.size(); ++k) {
                F2.row(closed.F.rows() + static_cast<Index>(k)) << static_cast<int>(nv),
                    rim[k], rim[(k + 1) % rim.size()];
            }
            closed.V = V2;
            closed.F = F2;
            closed.closed = true;
        }
        CurvatureField field = compute_curvature(closed);

        ModelValidationLevel lvl;
        lvl.angular = nt;
        lvl.max_err_lambda1_scaled = lvl.max_rel_err_lambda1_bulk = 0;
        lvl.max_rel_err_lambda2 = lvl.max_rel_err_mu = 0;
        lvl.tip_band_max_err = 0;
        const Real s_hi_cmp = std::min(S - 1.0, Real(10.0));
        for (Index v = 0; v < cap.mesh.num_vertices(); ++v) {
            Real s = cap.vertex_s(v);
            if (s < 0) continue;  // apex excluded: quadric fit ill-posed there
            ModelCurvatures ref = model_curvatures(s);
            const Real H = ref.lambda1 + ref.lambda2;
            Real e1 = std::abs(field.lambda1(v) - ref.lambda1);
            Real e2 = std::abs(field.lambda2(v) - ref.lambda2) / ref.lambda2;
            if (s < 0.1) {
                lvl.tip_band_max_err = std::max(lvl.tip_band_max_err, std::max(e1 / H, e2));
                continue;
            }
            if (s > s_hi_cmp) continue;  // rim boundary influence
            lvl.max_err_lambda1_scaled = std::max(lvl.max_err_lambda1_scaled, e1 / H);
            if (ref.lambda1 >= 0.05 * H)
                lvl.max_rel_err_lambda1_bulk =
                    std::max(lvl.max_rel_err_lambda1_bulk, e1 / ref.lambda1);
            lvl.max_rel_err_lambda2 = std::max(lvl.max_rel_err_lambda2, e2);
            Real mu = inscribed_radius_mu(closed, field, v);
            lvl.max_rel_err_mu =
                std::max(lvl.max_rel_err_mu, std::abs(mu - ref.mu) / ref.mu);
        }
        report.levels.push_back(lvl);
    }
    Real prev = kInf;
    report.errors_decrease = true;
    for (auto& lvl : report.levels) {
        Real worst = std::max({lvl.max_err_lambda1_scaled, lvl.max_rel_err_lambda2,
                               lvl.max_rel_err_mu});
        if (worst > prev) report.errors_decrease = false;
        prev = worst;
    }
    if (report.levels.size() >= 2) {
        Real e0 = std::max({report.levels.front().max_err_lambda1_scaled,
                            report.levels.front().max_rel_err_lambda2});
        Real e1 = std::max({report.levels.back().max_err_lambda1_scaled,
                            report.levels.back().max_rel_err_lambda2});
        Real ratio = Real(report.levels.back().angular) / report.levels.front().angular;
        if (e1 > 0 && e0 > 0 && ratio > 1)
            report.observed_order = std::log(e0 / e1) / std::log(ratio);
    }
    return report;
}

}  // namespace mcf
