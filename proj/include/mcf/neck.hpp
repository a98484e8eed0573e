#ifndef MCF_NECK_HPP
#define MCF_NECK_HPP

#include <string>
#include <vector>

#include "mcf/axi.hpp"
#include "mcf/curvature.hpp"
#include "mcf/plane_curve.hpp"
#include "mcf/surface_mesh.hpp"

namespace mcf {

/// Candidate neck: estimated axis, size, and cross-sections at axial
/// stations spaced r/4 over [-L r, L r] around the seed.
struct NeckRegion {
    Vec3 seed_point = Vec3::Zero();
    Vec3 axis_origin = Vec3::Zero();     // world point on the axis at station 0
    Vec3 axis = Vec3::UnitZ();           // unit
    Vec3 frame_u = Vec3::UnitX(), frame_v = Vec3::UnitY();
    Real r = 1;                          // size (length units)
    std::vector<Real> stations;          // axial offsets from the origin, r units
    std::vector<PlaneCurve> sections;    // absolute length units, frame (u, v), axis-centered
    std::vector<Index> region_vertices;  // mesh source only
    bool sections_ok = true;
    std::string section_issue;
};

struct NeckParams {
    Real alpha_hat = 0.5;
    Real delta_hat = 0.1;
    Real eps = 0.01;
    Real L = 10;
};

/// Five-condition certificate with per-condition margins (>= 0 means pass):
///   C1 cylinder closeness   eps - discrete C^2 distance
///   C2 noncollapsing        (1 + delta_hat) - sup mu/kappa on Gamma
///   C3 curvature derivatives 1/100 - max_s sum_{l<=4} |kappa^(l)|
///   C4 kappa = 1 point       eps - |rescale - 1|
///   C5 outward clearance     min hit distance / (2 alpha_hat r) - 1, capped at 1
struct NeckCertificate {
    bool pass = false;
    bool c1 = false, c2 = false, c3 = false, c4 = false, c5 = false;
    Real dist_c1 = kInf;  // measured discrete C^2 distance (r-normalized)
    Real margin_c1 = -kInf, margin_c2 = -kInf, margin_c3 = -kInf;
    Real margin_c4 = -kInf, margin_c5 = -kInf;
    std::string note;
    PlaneCurve gamma;  // certified cross-section, scaled so some kappa = 1
};

/// Axis from the lambda1-direction field over the candidate region, refined
/// by a least-squares pass through section centroids; sections by plane
/// slicing at stations spaced r/4 over [-L r, L r].
NeckRegion fit_axis_and_sections(const SurfaceMesh& mesh, const CurvatureField& field,
                                 Index seed, Real L, Real r_guess);

/// Axisymmetric shortcut: sections are exact circles read off the profile.
NeckRegion profile_neck_region(const AxiProfile& p, Index seed_station, Real L, Real r,
                               int angular_samples = 96);

/// C5 clearance oracle: distance to the first surface hit along x + a nu(x),
/// a in (a0, cap]; returns cap when clear.
class ClearanceOracle {
  public:
    virtual ~ClearanceOracle() = default;
    virtual Real first_hit(const Vec3& origin, const Vec3& dir, Real a0, Real cap) const = 0;
};

class MeshClearance : public ClearanceOracle {
  public:
    explicit MeshClearance(const SurfaceMesh& mesh) : mesh_(&mesh) {}
    Real first_hit(const Vec3& origin, const Vec3& dir, Real a0, Real cap) const override;

  private:
    const SurfaceMesh* mesh_;
};

/// Meridian-plane ray test against the generators of one or more
/// axisymmetric components sharing the z-axis.
class ProfileClearance : public ClearanceOracle {
  public:
    explicit ProfileClearance(std::vector<const AxiProfile*> components)
        : components_(std::move(components)) {}
    Real first_hit(const Vec3& origin, const Vec3& dir, Real a0, Real cap) const override;

  private:
    std::vector<const AxiProfile*> components_;
};

NeckCertificate check_neck(const NeckRegion& region, const NeckParams& params,
                           const ClearanceOracle& clearance);

/// Seeds where lambda1/H <= eta0 and H >= max(K0, H1/Theta), clustered by
/// graph distance 2/H, deepest (largest mean H) cluster first.
std::vector<Index> scan_for_necks(const SurfaceMesh& mesh, const CurvatureField& field, Real H1,
                                  Real Theta, Real eta0, Real K0 = 0);

/// Mesh-plane cross-section loops (closed polylines in the (u, v) frame of
/// the plane). Shared by the neck extractor and mesh surgery.
struct SectionLoop {
    PlaneCurve curve;                 // frame coordinates
    std::vector<Vec3> points3;        // same loop in world space
};
std::vector<SectionLoop> slice_mesh(const SurfaceMesh& mesh, const Vec3& origin, const Vec3& axis,
                                    const Vec3& frame_u, const Vec3& frame_v, Real offset);

}  // namespace mcf

#endif
