#ifndef MCF_AXI_HPP
#define MCF_AXI_HPP

#include <vector>

#include "mcf/surface_mesh.hpp"
#include "mcf/types.hpp"

namespace mcf {

enum class AxiBoundary { ClosedByAxis, Periodic };

/// Surface of revolution about e_z, stored as a radius graph r(z) on a
/// uniform grid. Closed components keep r > 0 strictly; the poles live
/// between the last active grid point and the first inactive one.
struct AxiProfile {
    Eigen::VectorXd z;  // uniform grid
    Eigen::VectorXd r;  // radii at active points, r > 0
    AxiBoundary boundary = AxiBoundary::ClosedByAxis;

    Index size() const { return z.size(); }
    Real spacing() const { return size() > 1 ? z(1) - z(0) : 0.0; }

    ValidationReport validate() const;
};

struct AxiCurvature {
    Eigen::VectorXd lambda_axial;   // meridian curvature, negative at a waist
    Eigen::VectorXd lambda_circ;    // rotational curvature 1/(r sqrt(1+r_z^2))
    Eigen::VectorXd H;              // sum convention
    Eigen::VectorXd r_z;
};

/// Curvatures by centered differences (one-sided at closed ends).
AxiCurvature axi_curvature(const AxiProfile& p);

Real axi_area(const AxiProfile& p);
Real axi_volume(const AxiProfile& p);

/// Reciprocal inscribed radius at station i: max of lambda_2 and the
/// sphere-touching oracle scanned over (station, angle) samples.
Real axi_mu(const AxiProfile& p, const AxiCurvature& c, Index i, int angular_samples = 64);

/// min over (sub)sampled stations of H/mu; the axisymmetric alpha_in.
Real axi_alpha_in(const AxiProfile& p, int station_stride = 4, int angular_samples = 64);

/// Surface-of-revolution mesh of the profile (closed ends get pole fans).
SurfaceMesh axi_to_mesh(const AxiProfile& p, int angular_samples);

struct AxiStepResult {
    enum class Status { Accepted, RejectedNonpositive, Extinct } status;
    AxiProfile profile;        // valid when Accepted
    Index offending = -1;      // interior station that would go nonpositive
};

/// One explicit Euler step of r_t = r_zz/(1+r_z^2) - 1/r. Points at the
/// active ends may drop out (pole passing them); an interior station going
/// nonpositive rejects the step.
AxiStepResult step_axisymmetric(const AxiProfile& p, Real dt);

/// CFL-style bound: 0.2 h^2 against the diffusion part, with a positivity
/// guard c r_min^2 against the -1/r reaction at interior minima.
Real axi_stable_dt(const AxiProfile& p);

}  // namespace mcf

#endif
