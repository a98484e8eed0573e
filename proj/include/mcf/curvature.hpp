#ifndef MCF_CURVATURE_HPP
#define MCF_CURVATURE_HPP

#include <vector>

#include "mcf/surface_mesh.hpp"
#include "mcf/types.hpp"

namespace mcf {

/// Per-vertex curvature data from a local quadric fit over the 2-ring.
/// Sign convention: a round sphere with outward normals has H > 0, and
/// H = lambda1 + lambda2 always (sum convention).
struct CurvatureField {
    VertexMatrix normal;        // fitted unit normals, |nu| = 1
    Eigen::VectorXd lambda1;    // smaller principal curvature
    Eigen::VectorXd lambda2;    // larger principal curvature
    Eigen::VectorXd H;          // lambda1 + lambda2, exactly
    VertexMatrix dir1;          // world direction of the lambda1 eigenvector
    // First/second differences of the world shape operator over edges.
    // Heuristic diagnostics only; see gradient_check.
    Eigen::VectorXd grad_A;
    Eigen::VectorXd grad2_A;
    std::vector<Index> flagged;  // vertices with a degenerate 2-ring fit
};

CurvatureField compute_curvature(const SurfaceMesh& mesh);

/// Reciprocal inscribed radius at vertex p: the brute-force sphere-touching
/// oracle max(lambda2, max_q 2<p-q,nu(p)>/|p-q|^2). Closed meshes only.
Real inscribed_radius_mu(const SurfaceMesh& mesh, const CurvatureField& field, Index p);

/// Outer-radius analogue with nu replaced by -nu; capped at 10x the
/// bounding-box diagonal when no exterior touching occurs.
Real outer_radius(const SurfaceMesh& mesh, const CurvatureField& field, Index p);

struct RadiusField {
    Eigen::VectorXd mu;       // 1/length
    Eigen::VectorXd rho_out;  // length
};

RadiusField compute_radii(const SurfaceMesh& mesh, const CurvatureField& field);

struct NoncollapsingReport {
    bool mean_convex = true;
    std::vector<Index> non_convex_vertices;
    Real alpha_in = 0;   // min_p H/mu
    Real alpha_out = 0;  // min_p H * rho_out
    Index argmin_in = -1;
    Index argmin_out = -1;
};

NoncollapsingReport noncollapsing_report(const SurfaceMesh& mesh);
NoncollapsingReport noncollapsing_report(const SurfaceMesh& mesh, const CurvatureField& field,
                                         const RadiusField& radii);

}  // namespace mcf

#endif
