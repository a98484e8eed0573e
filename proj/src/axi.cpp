#include "mcf/axi.hpp"

#include <cmath>
#include <stdexcept>

namespace mcf {

namespace {

// The stepper works on w = r^2: the flow equation
//   r_t = r_zz/(1+r_z^2) - 1/r
// becomes w_t = (4 w w_zz - 2 w_z^2)/(4 w + w_z^2) - 2, which is the
// removable-singularity form at axis-closed ends (w stays smooth with
// nonzero slope where r has infinite slope).
struct WDerivs {
    Real wz, wzz;
};

WDerivs w_derivs(const Eigen::VectorXd& w, Index i, Real h, AxiBoundary bc) {
    const Index n = w.size();
    auto at = [&](Index k) -> Real {
        if (bc == AxiBoundary::Periodic) return w(((k % n) + n) % n);
        return w(k);
    };
    if (bc == AxiBoundary::Periodic || (i > 0 && i < n - 1))
        return {(at(i + 1) - at(i - 1)) / (2 * h), (at(i + 1) - 2 * at(i) + at(i - 1)) / (h * h)};
    if (i == 0)
        return {(-3 * w(0) + 4 * w(1) - w(2)) / (2 * h), (w(2) - 2 * w(1) + w(0)) / (h * h)};
    return {(3 * w(n - 1) - 4 * w(n - 2) + w(n - 3)) / (2 * h),
            (w(n - 1) - 2 * w(n - 2) + w(n - 3)) / (h * h)};
}

Real w_rate(const Eigen::VectorXd& w, Index i, Real h, AxiBoundary bc) {
    WDerivs d = w_derivs(w, i, h, bc);
    const Real wi = w(i);
    return (4 * wi * d.wzz - 2 * d.wz * d.wz) / (4 * wi + d.wz * d.wz) - 2.0;
}

}  // namespace

ValidationReport AxiProfile::validate() const {
    ValidationReport rep;
    const Index n = size();
    if (n < 4) rep.fail("profile needs at least 4 stations");
    if (r.size() != n) rep.fail("z/r size mismatch");
    if (!rep.ok) return rep;
    const Real h = spacing();
    for (Index i = 0; i < n; ++i) {
        if (!(r(i) > 0)) rep.fail("nonpositive radius", i);
        if (i > 0 && std::abs((z(i) - z(i - 1)) - h) > 1e-9 * std::max(Real(1), std::abs(h)))
            rep.fail("non-uniform grid", i);
    }
    return rep;
}

AxiCurvature axi_curvature(const AxiProfile& p) {
    const Index n = p.size();
    const Real h = p.spacing();
    Eigen::VectorXd w = p.r.array().square();
    AxiCurvature c;
    c.lambda_axial.resize(n);
    c.lambda_circ.resize(n);
    c.H.resize(n);
    c.r_z.resize(n);
    for (Index i = 0; i < n; ++i) {
        WDerivs d = w_derivs(w, i, h, p.boundary);
        const Real r = p.r(i);
        const Real rz = d.wz / (2 * r);
        const Real rzz = d.wzz / (2 * r) - d.wz * d.wz / (4 * r * r * r);
        const Real g = 1 + rz * rz;
        c.r_z(i) = rz;
        c.lambda_axial(i) = -rzz / (g * std::sqrt(g));
        c.lambda_circ(i) = 1.0 / (r * std::sqrt(g));
        c.H(i) = c.lambda_axial(i) + c.lambda_circ(i);
    }
    return c;
}

Real axi_area(const AxiProfile& p) {
    const Index n = p.size();
    const Real h = p.spacing();
    Eigen::VectorXd w = p.r.array().square();
    Real area = 0;
    for (Index i = 0; i + 1 < n; ++i) {
        // trapezoid on 2 pi r sqrt(1+r_z^2) over the cell
        auto integrand = [&](Index k) {
            WDerivs d = w_derivs(w, k, h, p.boundary);
            Real rz = d.wz / (2 * p.r(k));
            return 2 * M_PI * p.r(k) * std::sqrt(1 + rz * rz);
        };
        area += 0.5 * h * (integrand(i) + integrand(i + 1));
    }
    if (p.boundary == AxiBoundary::ClosedByAxis) {
        // pole caps: the surface continues past the end stations to r = 0;
        // approximate each cap as a spherical-ish annulus of slant height
        // equal to the extrapolated pole distance.
        for (Index end : {Index(0), n - 1}) {
            WDerivs d = w_derivs(Eigen::VectorXd(p.r.array().square()), end, h, p.boundary);
            Real slope = std::abs(d.wz);
            if (slope > 1e-30) {
                Real dz = p.r(end) * p.r(end) / slope;  // distance to w = 0
                Real slant = std::sqrt(dz * dz + p.r(end) * p.r(end));
                area += M_PI * p.r(end) * slant;
            }
        }
    }
    return area;
}

Real axi_volume(const AxiProfile& p) {
    const Index n = p.size();
    const Real h = p.spacing();
    Real vol = 0;
    for (Index i = 0; i + 1 < n; ++i)
        vol += 0.5 * h * M_PI * (sq(p.r(i)) + sq(p.r(i + 1)));
    if (p.boundary == AxiBoundary::ClosedByAxis) {
        Eigen::VectorXd w = p.r.array().square();
        for (Index end : {Index(0), n - 1}) {
            WDerivs d = w_derivs(w, end, h, p.boundary);
            Real slope = std::abs(d.wz);
            if (slope > 1e-30) {
                Real dz = w(end) / slope;
                vol += 0.5 * M_PI * w(end) * dz;  // cone-ish pole sliver in w
            }
        }
    }
    return vol;
}

Real axi_mu(const AxiProfile& p, const AxiCurvature& c, Index i, int angular_samples) {
    const Index n = p.size();
    const Real ri = p.r(i), zi = p.z(i);
    const Real rz = c.r_z(i);
    const Real inv_g = 1.0 / std::sqrt(1 + rz * rz);
    // point at theta = 0 and its outward normal (meridian plane)
    const Vec3 pt(ri, 0, zi);
    const Vec3 nu(inv_g, 0, -rz * inv_g);
    Real best = std::max(c.lambda_axial(i), c.lambda_circ(i));  // lambda_2 floor
    for (Index j = 0; j < n; ++j) {
        for (int k = 0; k < angular_samples; ++k) {
            if (j == i && k == 0) continue;
            Real th = 2 * M_PI * k / angular_samples;
            Vec3 q(p.r(j) * std::cos(th), p.r(j) * std::sin(th), p.z(j));
            Vec3 d = pt - q;
            Real d2 = d.squaredNorm();
            if (d2 < 1e-30) continue;
            best = std::max(best, 2 * d.dot(nu) / d2);
        }
    }
    return best;
}

Real axi_alpha_in(const AxiProfile& p, int station_stride, int angular_samples) {
    AxiCurvature c = axi_curvature(p);
    Real worst = kInf;
    for (Index i = 0; i < p.size(); i += station_stride) {
        Real mu = axi_mu(p, c, i, angular_samples);
        if (mu > 0) worst = std::min(worst, c.H(i) / mu);
    }
    return worst;
}

SurfaceMesh axi_to_mesh(const AxiProfile& p, int nt) {
    const Index n = p.size();
    SurfaceMesh mesh;
    const bool closed_ends = (p.boundary == AxiBoundary::ClosedByAxis);
    Index nv = n * nt + (closed_ends ? 2 : 0);
    mesh.V.resize(nv, 3);
    std::vector<Eigen::Vector3i> faces;
    for (Index i = 0; i < n; ++i)
        for (int k = 0; k < nt; ++k) {
            Real th = 2 * M_PI * k / nt;
            mesh.V.row(i * nt + k) << p.r(i) * std::cos(th), p.r(i) * std::sin(th), p.z(i);
        }
    auto ring = [&](Index i, int k) { return static_cast<int>(i * nt + (k % nt)); };
    for (Index i = 0; i + 1 < n; ++i)
        for (int k = 0; k < nt; ++k) {
            // outward orientation: CCW seen from outside the tube
            faces.emplace_back(ring(i, k), ring(i + 1, k + 1), ring(i + 1, k));
            faces.emplace_back(ring(i, k), ring(i, k + 1), ring(i + 1, k + 1));
        }
    if (closed_ends) {
        Eigen::VectorXd w = p.r.array().square();
        const Real h = p.spacing();
        WDerivs d0 = w_derivs(w, 0, h, p.boundary);
        WDerivs d1 = w_derivs(w, n - 1, h, p.boundary);
        Real zp0 = p.z(0) - (d0.wz > 1e-30 ? w(0) / d0.wz : 0.5 * p.r(0));
        Real zp1 = p.z(n - 1) + (d1.wz < -1e-30 ? w(n - 1) / (-d1.wz) : 0.5 * p.r(n - 1));
        Index pole0 = n * nt, pole1 = n * nt + 1;
        mesh.V.row(pole0) << 0, 0, zp0;
        mesh.V.row(pole1) << 0, 0, zp1;
        for (int k = 0; k < nt; ++k) {
            faces.emplace_back(static_cast<int>(pole0), ring(0, k + 1), ring(0, k));
            faces.emplace_back(static_cast<int>(pole1), ring(n - 1, k), ring(n - 1, k + 1));
        }
        mesh.closed = true;
    } else {
        mesh.closed = false;
        if (p.boundary == AxiBoundary::Periodic) mesh.period_z = p.z(n - 1) - p.z(0) + p.spacing();
    }
    mesh.F.resize(static_cast<Index>(faces.size()), 3);
    for (size_t f = 0; f < faces.size(); ++f) mesh.F.row(static_cast<Index>(f)) = faces[f].transpose();
    return mesh;
}

Real axi_stable_dt(const AxiProfile& p) {
    const Real h = p.spacing();
    const Index n = p.size();
    Eigen::VectorXd w = p.r.array().square();
    Real dt = 0.2 * h * h;
    const bool closed = (p.boundary == AxiBoundary::ClosedByAxis);
    for (Index i = 0; i < n; ++i) {
        if (closed && (i == 0 || i == n - 1)) continue;  // end points may die
        Real rate = w_rate(w, i, h, p.boundary);
        if (rate < 0) dt = std::min(dt, 0.5 * w(i) / (-rate));
    }
    return dt;
}

AxiStepResult step_axisymmetric(const AxiProfile& p, Real dt) {
    const Index n = p.size();
    const Real h = p.spacing();
    Eigen::VectorXd w = p.r.array().square();
    Eigen::VectorXd wn(n);
    for (Index i = 0; i < n; ++i) wn(i) = w(i) + dt * w_rate(w, i, h, p.boundary);

    AxiStepResult res;
    if (p.boundary == AxiBoundary::Periodic) {
        for (Index i = 0; i < n; ++i)
            if (!(wn(i) > 0)) {
                res.status = AxiStepResult::Status::RejectedNonpositive;
                res.offending = i;
                return res;
            }
        res.status = AxiStepResult::Status::Accepted;
        res.profile = p;
        res.profile.r = wn.array().sqrt();
        return res;
    }

    // Axis-closed: trim dead end points (the pole moved past them); a dead
    // interior point means a forming pinch and rejects the step.
    Index lo = 0, hi = n - 1;
    while (lo <= hi && !(wn(lo) > 0)) ++lo;
    while (hi >= lo && !(wn(hi) > 0)) --hi;
    if (hi - lo + 1 < 4) {
        res.status = AxiStepResult::Status::Extinct;
        return res;
    }
    for (Index i = lo; i <= hi; ++i)
        if (!(wn(i) > 0)) {
            res.status = AxiStepResult::Status::RejectedNonpositive;
            res.offending = i;
            return res;
        }
    res.status = AxiStepResult::Status::Accepted;
    res.profile.boundary = p.boundary;
    res.profile.z = p.z.segment(lo, hi - lo + 1);
    res.profile.r = wn.segment(lo, hi - lo + 1).array().sqrt();
    return res;
}

}  // namespace mcf
