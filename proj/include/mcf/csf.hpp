#ifndef MCF_CSF_HPP
#define MCF_CSF_HPP

#include <vector>

#include "mcf/plane_curve.hpp"

namespace mcf {

/// Curve shortening flow history. Times strictly increase; states stay simple
/// and convex when the initial curve is convex.
struct CsfRun {
    std::vector<Real> times;
    std::vector<PlaneCurve> states;
    bool singular = false;  // terminated by the curvature blowup cap
    Real final_time = 0;
};

struct CsfOptions {
    Real dt = 0;                  // 0: pure CFL stepping
    Real cfl = 0.25;              // dt <= cfl * h_min^2 / max(1, kappa_max h_min)
    Real blowup_factor = 1e4;     // stop when kappa_max exceeds this x initial
    Index store_every = 1;        // state stride in the history
    bool resample = true;         // uniform-arclength redistribution each step
};

/// Explicit Euler: every point moves by -kappa nu per unit time.
CsfRun csf_evolve(const PlaneCurve& initial, Real T, const CsfOptions& opts = {});

/// Redistribute to n samples at uniform arclength (periodic cubic Hermite,
/// so circles do not lose area to chord sag).
PlaneCurve resample_uniform(const PlaneCurve& c, Index n);

/// Per-state sup of mu/kappa along a convex run.
std::vector<Real> noncollapse_monitor(const CsfRun& run);

}  // namespace mcf

#endif
