#include "mcf/csf.hpp"

#include <cmath>
#include <stdexcept>

namespace mcf {

PlaneCurve resample_uniform(const PlaneCurve& c, Index n) {
    if (!c.closed) throw std::invalid_argument("resample_uniform expects a closed curve");
    const Index m = c.size();
    Eigen::VectorXd s = c.arclength();
    const Real L = c.length();

    // periodic cubic Hermite in arclength
    auto tangent = [&](Index i) -> Vec2 {
        Vec2 dp = c.point(i + 1) - c.point(i - 1);
        Real ds = (c.point(i + 1) - c.point(i)).norm() + (c.point(i) - c.point(i - 1)).norm();
        return ds > 0 ? Vec2(dp / ds) : Vec2(Vec2::Zero());
    };

    PlaneCurve out;
    out.closed = true;
    out.points.resize(n, 2);
    Index seg = 0;
    for (Index k = 0; k < n; ++k) {
        Real target = L * k / n;
        while (seg + 1 < m && s(seg + 1) < target) ++seg;
        Real s0 = s(seg);
        Real s1 = (seg + 1 < m) ? s(seg + 1) : L;
        Real h = s1 - s0;
        Real u = h > 0 ? (target - s0) / h : 0.0;
        Vec2 p0 = c.point(seg), p1 = c.point(seg + 1);
        Vec2 m0 = tangent(seg) * h, m1 = tangent(seg + 1) * h;
        Real u2 = u * u, u3 = u2 * u;
        Vec2 p = (2 * u3 - 3 * u2 + 1) * p0 + (u3 - 2 * u2 + u) * m0 + (-2 * u3 + 3 * u2) * p1 +
                 (u3 - u2) * m1;
        out.points.row(k) = p.transpose();
    }
    return out;
}

CsfRun csf_evolve(const PlaneCurve& initial, Real T, const CsfOptions& opts) {
    PlaneCurve cur = initial;
    cur.force_ccw();
    CurveProfile prof = curvature_profile(cur);
    if (prof.kappa.minCoeff() <= 0)
        throw std::invalid_argument("csf_evolve needs a convex initial curve");
    if (!cur.is_simple()) throw std::invalid_argument("csf_evolve needs a simple initial curve");

    const Real kappa_cap = opts.blowup_factor * prof.kappa.maxCoeff();
    const Index n = cur.size();

    CsfRun run;
    run.times.push_back(0);
    run.states.push_back(cur);

    Real t = 0;
    Index step = 0;
    while (t < T) {
        Real kmax = prof.kappa.maxCoeff();
        if (kmax > kappa_cap) {
            run.singular = true;
            break;
        }
        Real hmin = kInf;
        for (Index i = 0; i < n; ++i)
            hmin = std::min(hmin, (cur.point(i + 1) - cur.point(i)).norm());
        Real dt = opts.cfl * hmin * hmin / std::max(Real(1), kmax * hmin);
        if (opts.dt > 0) dt = std::min(dt, opts.dt);
        dt = std::min(dt, T - t);

        PlaneCurve next = cur;
        for (Index i = 0; i < n; ++i)
            next.points.row(i) -= dt * prof.kappa(i) * prof.normal.row(i);
        if (opts.resample) next = resample_uniform(next, n);
        t += dt;
        ++step;
        cur = std::move(next);
        prof = curvature_profile(cur);
        if (prof.kappa.minCoeff() <= 0) {
            // convexity lost at sample resolution: report as singular end
            run.singular = true;
            break;
        }
        if (step % opts.store_every == 0 || t >= T) {
            run.times.push_back(t);
            run.states.push_back(cur);
        }
    }
    run.final_time = t;
    return run;
}

std::vector<Real> noncollapse_monitor(const CsfRun& run) {
    std::vector<Real> series;
    series.reserve(run.states.size());
    for (const PlaneCurve& c : run.states) {
        CurveProfile prof = curvature_profile(c);
        series.push_back(sup_mu_over_kappa(c, prof));
    }
    return series;
}

}  // namespace mcf
