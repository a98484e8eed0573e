#ifndef MCF_CAP_MODEL_HPP
#define MCF_CAP_MODEL_HPP

#include <vector>

#include "mcf/surface_mesh.hpp"
#include "mcf/types.hpp"

namespace mcf {

// Axially symmetric model cap: radius sqrt(s/(1+s)) at height s, closing up
// smoothly at s = 0 and approaching the unit cylinder as s grows.

Vec3 model_point(Real s, Real t);

struct ModelCurvatures {
    Real lambda1, lambda2, mu;
    Real inscribed_radius() const { return 1.0 / mu; }
};

/// Closed forms; lambda2 * inscribed_radius == 1 identically.
ModelCurvatures model_curvatures(Real s);

/// Touching ball W_s: center on the axis, radius = inscribed radius at s.
struct TouchingBall {
    Vec3 center;
    Real radius;
};
TouchingBall model_touching_ball(Real s);

struct ModelCapMesh {
    SurfaceMesh mesh;
    Eigen::VectorXd vertex_s;  // parameter value per vertex (-1 for the apex)
};

/// Arclength-graded stations, apex fan at s = 0. `angular` fixes the ring
/// sample count and thereby the overall edge length.
ModelCapMesh model_cap_mesh_graded(Real S, int angular);
SurfaceMesh model_cap_mesh(Real S, int angular);

struct ModelValidationLevel {
    int angular;
    // lambda1 decays to ~1e-3 along the band, so its error is reported both
    // against the curvature scale H and per-quantity where lambda1 >= H/20.
    Real max_err_lambda1_scaled;    // |dl1| / H over s in [0.1, 10]
    Real max_rel_err_lambda1_bulk;  // |dl1| / l1 where l1 >= 0.05 H
    Real max_rel_err_lambda2;
    Real max_rel_err_mu;      // brute-force vs closed form
    Real tip_band_max_err;    // s < 0.1, reported separately
};

struct ModelValidationReport {
    std::vector<ModelValidationLevel> levels;
    bool errors_decrease = false;
    Real observed_order = 0;  // log2 ratio of successive max errors
};

/// Discrete curvature and brute-force mu on generated meshes vs the closed
/// forms over s in [0.1, 10].
ModelValidationReport validate_model(Real S, const std::vector<int>& angular_resolutions);

}  // namespace mcf

#endif
