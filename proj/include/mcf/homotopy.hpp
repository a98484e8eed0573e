#ifndef MCF_HOMOTOPY_HPP
#define MCF_HOMOTOPY_HPP

#include <vector>

#include "mcf/csf.hpp"
#include "mcf/plane_curve.hpp"

namespace mcf {

/// Deformation of a convex noncollapsed curve to the unit circle:
/// identically the source for r <= 1/4, the exact circle for r >= 1/2,
/// and area-renormalized curve shortening flow slices in between, time
/// reparametrized by a smooth ramp in r.
class HomotopyFamily {
  public:
    PlaneCurve at(Real r) const;

    const PlaneCurve& source() const { return source_; }
    Real delta_hat() const { return delta_hat_; }

    /// sup over an r-grid of |d gamma / dr| and |d^2 gamma / dr^2| finite
    /// differences; shrinks as the source approaches the circle.
    struct DerivativeProxy {
        Real sup_dr = 0;
        Real sup_dr2 = 0;
    };
    DerivativeProxy r_derivative_proxy(int r_samples = 65) const;

    /// worst noncollapsing margin over the stored slices:
    /// (1 + delta_hat) - sup mu/kappa, >= 0 when every slice passes.
    Real noncollapse_margin() const { return noncollapse_margin_; }

  private:
    friend HomotopyFamily build_homotopy(const PlaneCurve&, Real);
    PlaneCurve source_;                    // centered copy of Gamma
    Real delta_hat_ = 0;
    Real source_area_ = 0;
    Real t_end_ = 0;
    std::vector<Real> slice_times_;        // CSF times of the stored slices
    std::vector<Eigen::VectorXd> slice_rho_;  // unit-area radius-by-angle tables
    Index angular_ = 0;
    Real noncollapse_margin_ = 0;
};

/// pre: Gamma closed, convex, 1/(1+delta_hat)-noncollapsed; the curve is
/// recentered so its center of mass sits at the origin. Refuses with the
/// measured margin in the message otherwise.
HomotopyFamily build_homotopy(const PlaneCurve& gamma, Real delta_hat);

/// Radius-by-angle table of a convex curve around the origin (linear
/// interpolation in polar angle).
Eigen::VectorXd radius_by_angle(const PlaneCurve& c, Index angular);

}  // namespace mcf

#endif
