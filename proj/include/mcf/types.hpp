#ifndef MCF_TYPES_HPP
#define MCF_TYPES_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace mcf {

using Real = double;
using Index = std::int64_t;

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

// Row-per-sample dense storage, libigl-style.
using VertexMatrix = Eigen::MatrixX3d;   // n x 3 positions
using FaceMatrix   = Eigen::MatrixX3i;   // m x 3 vertex indices
using PointMatrix2 = Eigen::MatrixX2d;   // n x 2 plane samples

constexpr Real kInf = std::numeric_limits<Real>::infinity();

inline constexpr Real sq(Real x) { return x * x; }
inline constexpr Real cube(Real x) { return x * x * x; }

// exp(-x) with flush-to-zero for x > 700 so that e^{-4*Lambda/s} never
// produces subnormal garbage deep in the bent region.
inline Real exp_neg(Real x) {
    if (x > 700.0) return 0.0;
    return std::exp(-x);
}

// C^3 polynomial step: 0 on (-inf,0], 1 on [1,inf), monotone in between.
inline Real smoothstep7(Real x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const Real x4 = x * x * x * x;
    return x4 * (-20.0 * x * x * x + 70.0 * x * x - 84.0 * x + 35.0);
}

struct ValidationIssue {
    std::string what;
    Index item = -1;  // vertex/face/sample index when applicable
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationIssue> issues;
    void fail(std::string msg, Index item = -1) {
        ok = false;
        issues.push_back({std::move(msg), item});
    }
};

}  // namespace mcf

#endif
