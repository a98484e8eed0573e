#include "mcf/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mcf {

Eigen::VectorXd radius_by_angle(const PlaneCurve& c, Index angular) {
    const Index n = c.size();
    std::vector<std::pair<Real, Real>> samples(n);  // (angle, radius)
    for (Index i = 0; i < n; ++i) {
        Vec2 p = c.point(i);
        samples[i] = {std::atan2(p.y(), p.x()), p.norm()};
    }
    std::sort(samples.begin(), samples.end());
    Eigen::VectorXd rho(angular);
    for (Index k = 0; k < angular; ++k) {
        Real th = -M_PI + 2 * M_PI * k / angular;
        auto it = std::lower_bound(samples.begin(), samples.end(), std::make_pair(th, -kInf));
        // neighbors with wrap
        auto hi = (it == samples.end()) ? samples.begin() : it;
        auto lo = (it == samples.begin()) ? std::prev(samples.end()) : std::prev(it);
        Real a0 = lo->first, a1 = hi->first;
        Real span = a1 - a0;
        if (span <= 0) span += 2 * M_PI;
        Real d = th - a0;
        if (d < 0) d += 2 * M_PI;
        Real u = span > 0 ? d / span : 0.0;
        rho(k) = (1 - u) * lo->second + u * hi->second;
    }
    return rho;
}

namespace {

PlaneCurve curve_from_rho(const Eigen::VectorXd& rho) {
    PlaneCurve c;
    const Index m = rho.size();
    c.points.resize(m, 2);
    for (Index k = 0; k < m; ++k) {
        Real th = -M_PI + 2 * M_PI * k / m;
        c.points.row(k) << rho(k) * std::cos(th), rho(k) * std::sin(th);
    }
    return c;
}

Real ramp(Real r) { return smoothstep7((r - 0.25) / 0.25); }

}  // namespace

HomotopyFamily build_homotopy(const PlaneCurve& gamma, Real delta_hat) {
    PlaneCurve g = gamma;
    if (!g.closed) throw std::invalid_argument("build_homotopy needs a closed curve");
    g.force_ccw();
    Vec2 com = g.centroid();
    for (Index i = 0; i < g.size(); ++i) g.points.row(i) -= com.transpose();

    CurveProfile prof = curvature_profile(g);
    if (prof.kappa.minCoeff() <= 0)
        throw std::invalid_argument("build_homotopy needs a convex curve");
    Real sup = sup_mu_over_kappa(g, prof);
    if (sup > (1 + delta_hat) * (1 + 1e-9)) {
        std::ostringstream msg;
        msg << "build_homotopy precondition failed: sup mu/kappa = " << sup
            << " exceeds 1+delta_hat = " << (1 + delta_hat)
            << " (margin " << (1 + delta_hat) - sup << ")";
        throw std::invalid_argument(msg.str());
    }

    HomotopyFamily fam;
    fam.source_ = g;
    fam.delta_hat_ = delta_hat;
    fam.source_area_ = g.signed_area();
    fam.angular_ = std::max<Index>(g.size(), 128);

    // evolve until the unit-area normalization is round, in chunks
    const Real A0 = fam.source_area_;
    const Real extinction = A0 / (2 * M_PI);  // dA/dt = -2 pi for convex CSF
    CsfOptions opts;
    opts.store_every = 4;
    Real worst_margin = (1 + delta_hat) - sup;

    PlaneCurve cur = g;
    Real t = 0;
    fam.slice_times_.push_back(0);
    fam.slice_rho_.push_back(radius_by_angle(g, fam.angular_) *
                             std::sqrt(M_PI / A0));
    bool round_enough = false;
    for (int chunk = 0; chunk < 64 && !round_enough; ++chunk) {
        Real T = std::min(0.05 * extinction, 0.9 * extinction - t);
        if (T <= 0) break;
        CsfRun run = csf_evolve(cur, T, opts);
        for (size_t i = 1; i < run.states.size(); ++i) {
            const PlaneCurve& st = run.states[i];
            Real area = st.signed_area();
            if (area <= 0) break;
            PlaneCurve centered = st;
            Vec2 cc = centered.centroid();
            for (Index k = 0; k < centered.size(); ++k) centered.points.row(k) -= cc.transpose();
            Eigen::VectorXd rho = radius_by_angle(centered, fam.angular_) * std::sqrt(M_PI / area);
            fam.slice_times_.push_back(t + run.times[i]);
            fam.slice_rho_.push_back(rho);

            CurveProfile sp = curvature_profile(centered);
            worst_margin = std::min(worst_margin,
                                    (1 + delta_hat) - sup_mu_over_kappa(centered, sp));
            Real dev = (rho.array() - 1.0).abs().maxCoeff();
            if (dev < 5e-4) {
                round_enough = true;
                break;
            }
        }
        t += run.final_time;
        cur = run.states.back();
        if (run.singular) break;
    }
    fam.t_end_ = fam.slice_times_.back();
    fam.noncollapse_margin_ = worst_margin;
    return fam;
}

PlaneCurve HomotopyFamily::at(Real r) const {
    if (r <= 0.25) return source_;  // bit-identical copy
    const Index m = angular_;
    if (r >= 0.5) {
        Eigen::VectorXd one = Eigen::VectorXd::Ones(m);
        return curve_from_rho(one);  // analytic unit circle
    }
    const Real phi = ramp(r);
    const Real t = phi * t_end_;
    // locate bracketing slices
    size_t hi = 1;
    while (hi + 1 < slice_times_.size() && slice_times_[hi] < t) ++hi;
    size_t lo = hi - 1;
    Real span = slice_times_[hi] - slice_times_[lo];
    Real u = span > 0 ? std::clamp((t - slice_times_[lo]) / span, 0.0, 1.0) : 0.0;
    Eigen::VectorXd rho = (1 - u) * slice_rho_[lo] + u * slice_rho_[hi];

    // area ramp from the source area to pi, then the final circle blend
    Real area_target = (1 - phi) * source_area_ + phi * M_PI;
    rho *= std::sqrt(area_target / M_PI);
    Real w = smoothstep7((r - 0.4) / 0.1);
    if (w > 0) {
        Real circle_rho = std::sqrt(area_target / M_PI);
        rho = (1 - w) * rho.array() + w * circle_rho;
    }
    return curve_from_rho(rho);
}

HomotopyFamily::DerivativeProxy HomotopyFamily::r_derivative_proxy(int r_samples) const {
    DerivativeProxy proxy;
    const Real dr = 1.0 / (r_samples - 1);
    std::vector<Eigen::VectorXd> rhos;
    rhos.reserve(r_samples);
    for (int k = 0; k < r_samples; ++k) {
        PlaneCurve c = at(k * dr);
        rhos.push_back(radius_by_angle(c, angular_));
    }
    for (int k = 1; k < r_samples; ++k)
        proxy.sup_dr = std::max(proxy.sup_dr, (rhos[k] - rhos[k - 1]).cwiseAbs().maxCoeff() / dr);
    for (int k = 1; k + 1 < r_samples; ++k)
        proxy.sup_dr2 = std::max(proxy.sup_dr2, (rhos[k + 1] - 2 * rhos[k] + rhos[k - 1])
                                                        .cwiseAbs()
                                                        .maxCoeff() /
                                                    (dr * dr));
    return proxy;
}

}  // namespace mcf
