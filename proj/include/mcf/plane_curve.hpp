#ifndef MCF_PLANE_CURVE_HPP
#define MCF_PLANE_CURVE_HPP

#include <vector>

#include "mcf/types.hpp"

namespace mcf {

/// Ordered plane samples, CCW when closed and convex. Arclength is the
/// cumulative chord length.
struct PlaneCurve {
    PointMatrix2 points;  // n x 2
    bool closed = true;

    Index size() const { return points.rows(); }
    Vec2 point(Index i) const { return points.row(wrap(i)).transpose(); }
    Index wrap(Index i) const {
        const Index n = size();
        return ((i % n) + n) % n;
    }

    Real length() const;
    Real signed_area() const;      // positive for CCW closed curves
    Vec2 centroid() const;         // arclength-weighted center of mass
    Eigen::VectorXd arclength() const;  // s_i, s_0 = 0
    bool is_simple() const;        // segment-intersection scan at sample resolution
    void force_ccw();

    static PlaneCurve circle(Real R, Index n, Vec2 center = Vec2::Zero());
    static PlaneCurve ellipse(Real a, Real b, Index n);
};

struct CurveProfile {
    Eigen::VectorXd kappa;      // circumradius-of-triples curvature, CCW positive
    PointMatrix2 normal;        // outward unit normal per sample
    Eigen::VectorXd dkappa_ds;
    Eigen::VectorXd d2kappa_ds2;
    std::vector<Index> flagged;  // collinear triples (kappa set to 0)
};

/// pre: >= 8 samples, simple.
CurveProfile curvature_profile(const PlaneCurve& c);

/// Z(i,j) = kappa_i |g_i - g_j|^2 / 2 - <g_i - g_j, nu_i>, exactly as displayed.
Real z_function(const PlaneCurve& c, const CurveProfile& p, Index i, Index j);

/// min over all ordered pairs i != j (subsampled stride optional).
Real z_function_min(const PlaneCurve& c, const CurveProfile& p, Index stride = 1);

/// Reciprocal inscribed radius of a closed convex curve at sample i:
/// max(kappa_i, pair-scan touching ratio). Refuses non-convex input.
Real curve_mu(const PlaneCurve& c, const CurveProfile& p, Index i);

/// sup over samples of mu/kappa; the curve is 1/(1+d)-noncollapsed iff <= 1+d.
Real sup_mu_over_kappa(const PlaneCurve& c, const CurveProfile& p);

}  // namespace mcf

#endif
