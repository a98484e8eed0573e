#include "mcf/plane_curve.hpp"

#include <cmath>
#include <stdexcept>

namespace mcf {

Real PlaneCurve::length() const {
    const Index n = size();
    Real L = 0;
    const Index last = closed ? n : n - 1;
    for (Index i = 0; i < last; ++i) L += (point(i + 1) - point(i)).norm();
    return L;
}

Real PlaneCurve::signed_area() const {
    const Index n = size();
    Real A = 0;
    for (Index i = 0; i < n; ++i) {
        Vec2 a = point(i), b = point(i + 1);
        A += a.x() * b.y() - b.x() * a.y();
    }
    return 0.5 * A;
}

Vec2 PlaneCurve::centroid() const {
    const Index n = size();
    const Index last = closed ? n : n - 1;
    Vec2 acc = Vec2::Zero();
    Real L = 0;
    for (Index i = 0; i < last; ++i) {
        Real w = (point(i + 1) - point(i)).norm();
        acc += 0.5 * w * (point(i) + point(i + 1));
        L += w;
    }
    return L > 0 ? Vec2(acc / L) : Vec2(points.colwise().mean().transpose());
}

Eigen::VectorXd PlaneCurve::arclength() const {
    const Index n = size();
    Eigen::VectorXd s(n);
    s(0) = 0;
    for (Index i = 1; i < n; ++i) s(i) = s(i - 1) + (point(i) - point(i - 1)).norm();
    return s;
}

namespace {
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    auto cross = [](const Vec2& u, const Vec2& v) { return u.x() * v.y() - u.y() * v.x(); };
    Real d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
    Real d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}
}  // namespace

bool PlaneCurve::is_simple() const {
    const Index n = size();
    const Index last = closed ? n : n - 1;
    for (Index i = 0; i < last; ++i)
        for (Index j = i + 2; j < last; ++j) {
            if (closed && i == 0 && j == n - 1) continue;  // shares the wrap vertex
            if (segments_intersect(point(i), point(i + 1), point(j), point(j + 1))) return false;
        }
    return true;
}

void PlaneCurve::force_ccw() {
    if (closed && signed_area() < 0) points = points.colwise().reverse().eval();
}

PlaneCurve PlaneCurve::circle(Real R, Index n, Vec2 center) {
    PlaneCurve c;
    c.points.resize(n, 2);
    for (Index i = 0; i < n; ++i) {
        Real t = 2 * M_PI * i / n;
        c.points.row(i) << center.x() + R * std::cos(t), center.y() + R * std::sin(t);
    }
    return c;
}

PlaneCurve PlaneCurve::ellipse(Real a, Real b, Index n) {
    PlaneCurve c;
    c.points.resize(n, 2);
    for (Index i = 0; i < n; ++i) {
        Real t = 2 * M_PI * i / n;
        c.points.row(i) << a * std::cos(t), b * std::sin(t);
    }
    return c;
}

CurveProfile curvature_profile(const PlaneCurve& c) {
    const Index n = c.size();
    if (n < 8) throw std::invalid_argument("curvature_profile needs at least 8 samples");
    CurveProfile prof;
    prof.kappa.setZero(n);
    prof.normal.setZero(n, 2);
    prof.dkappa_ds.setZero(n);
    prof.d2kappa_ds2.setZero(n);

    auto cross = [](const Vec2& u, const Vec2& v) { return u.x() * v.y() - u.y() * v.x(); };
    const Index first = c.closed ? 0 : 1;
    const Index last = c.closed ? n : n - 1;
    for (Index i = first; i < last; ++i) {
        Vec2 a = c.point(i - 1), b = c.point(i), d = c.point(i + 1);
        Real la = (b - a).norm(), lb = (d - b).norm(), lc = (d - a).norm();
        Real denom = la * lb * lc;
        if (denom < 1e-300) {
            prof.flagged.push_back(i);
            continue;
        }
        Real k = 2 * cross(b - a, d - b) / denom;  // signed Menger curvature
        if (k == 0) prof.flagged.push_back(i);
        prof.kappa(i) = k;
        Vec2 t = (d - a).normalized();
        prof.normal.row(i) << t.y(), -t.x();  // outward for CCW curves
    }
    if (!c.closed) {  // copy one-sided values to the ends
        prof.kappa(0) = prof.kappa(1);
        prof.kappa(n - 1) = prof.kappa(n - 2);
        Vec2 t0 = (c.point(1) - c.point(0)).normalized();
        Vec2 t1 = (c.point(n - 1) - c.point(n - 2)).normalized();
        prof.normal.row(0) << t0.y(), -t0.x();
        prof.normal.row(n - 1) << t1.y(), -t1.x();
    }

    Eigen::VectorXd s = c.arclength();
    const Real L = c.length();
    auto sat = [&](Index i) {  // unwrapped arclength
        Index k = c.wrap(i);
        Real base = s(k);
        if (c.closed) {
            if (i < 0) base -= L;
            if (i >= n) base += L;
        }
        return base;
    };
    auto kat = [&](Index i) { return prof.kappa(c.wrap(i)); };
    const Index dfirst = c.closed ? 0 : 1;
    const Index dlast = c.closed ? n : n - 1;
    for (Index i = dfirst; i < dlast; ++i) {
        Real h1 = sat(i) - sat(i - 1), h2 = sat(i + 1) - sat(i);
        if (h1 <= 0 || h2 <= 0) continue;
        prof.dkappa_ds(i) =
            (kat(i + 1) * h1 * h1 - kat(i - 1) * h2 * h2 + kat(i) * (h2 * h2 - h1 * h1)) /
            (h1 * h2 * (h1 + h2));
        prof.d2kappa_ds2(i) = 2 * (kat(i - 1) * h2 + kat(i + 1) * h1 - kat(i) * (h1 + h2)) /
                              (h1 * h2 * (h1 + h2));
    }
    return prof;
}

Real z_function(const PlaneCurve& c, const CurveProfile& p, Index i, Index j) {
    if (i == j) throw std::invalid_argument("z_function needs i != j");
    Vec2 d = c.point(i) - c.point(j);
    Vec2 nu = p.normal.row(i).transpose();
    return 0.5 * p.kappa(i) * d.squaredNorm() - d.dot(nu);
}

Real z_function_min(const PlaneCurve& c, const CurveProfile& p, Index stride) {
    const Index n = c.size();
    Real best = kInf;
    for (Index i = 0; i < n; i += stride)
        for (Index j = 0; j < n; j += stride) {
            if (i == j) continue;
            best = std::min(best, z_function(c, p, i, j));
        }
    return best;
}

Real curve_mu(const PlaneCurve& c, const CurveProfile& p, Index i) {
    if (!c.closed) throw std::invalid_argument("curve_mu needs a closed curve");
    if (p.kappa.minCoeff() <= 0)
        throw std::invalid_argument("curve_mu refuses non-convex curves (kappa <= 0 sample)");
    const Index n = c.size();
    Vec2 gi = c.point(i);
    Vec2 nu = p.normal.row(i).transpose();
    Real best = p.kappa(i);
    for (Index j = 0; j < n; ++j) {
        if (j == i) continue;
        Vec2 d = gi - c.point(j);
        Real d2 = d.squaredNorm();
        if (d2 < 1e-30) continue;
        best = std::max(best, 2 * d.dot(nu) / d2);
    }
    return best;
}

Real sup_mu_over_kappa(const PlaneCurve& c, const CurveProfile& p) {
    Real sup = 0;
    for (Index i = 0; i < c.size(); ++i) sup = std::max(sup, curve_mu(c, p, i) / p.kappa(i));
    return sup;
}

}  // namespace mcf
