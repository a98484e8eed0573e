#include "mcf/neck.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <map>
#include <queue>
#include <set>

#include "mcf/homotopy.hpp"

namespace mcf {

namespace {

void orthonormal_frame(const Vec3& axis, Vec3& u, Vec3& v) {
    Vec3 any = std::abs(axis.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    u = axis.cross(any).normalized();
    v = axis.cross(u);
}

// graph-distance ball (edge lengths accumulated) around a seed vertex
std::vector<Index> geodesic_ball(const SurfaceMesh& mesh, const MeshAdjacency& adj, Index seed,
                                 Real radius) {
    std::map<Index, Real> dist;
    std::priority_queue<std::pair<Real, Index>, std::vector<std::pair<Real, Index>>,
                        std::greater<>> heap;
    dist[seed] = 0;
    heap.push({0, seed});
    std::vector<Index> out;
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;
        out.push_back(v);
        for (Index w : adj.vertex_to_vertex[v]) {
            Real nd = d + (mesh.vertex(w) - mesh.vertex(v)).norm();
            if (nd > radius) continue;
            auto it = dist.find(w);
            if (it == dist.end() || nd < it->second) {
                dist[w] = nd;
                heap.push({nd, w});
            }
        }
    }
    return out;
}

}  // namespace

std::vector<SectionLoop> slice_mesh(const SurfaceMesh& mesh, const Vec3& origin, const Vec3& axis,
                                    const Vec3& frame_u, const Vec3& frame_v, Real offset) {
    const Index nf = mesh.num_faces();
    // vertices exactly on the plane are nudged to the positive side so every
    // straddling face yields exactly two edge crossings
    const Real bias = 1e-12 * bounding_box_diagonal(mesh);
    auto height = [&](Index v) {
        Real h = (mesh.vertex(v) - origin).dot(axis) - offset;
        return std::abs(h) < bias ? bias : h;
    };

    // crossing point on an edge, keyed by the sorted vertex pair
    std::map<std::pair<Index, Index>, Vec3> crossing;
    auto edge_key = [](Index a, Index b) { return std::minmax(a, b); };
    // per-face pair of crossed edges
    std::vector<std::array<std::pair<Index, Index>, 2>> segs;
    for (Index f = 0; f < nf; ++f) {
        Index vs[3] = {mesh.F(f, 0), mesh.F(f, 1), mesh.F(f, 2)};
        Real h[3] = {height(vs[0]), height(vs[1]), height(vs[2])};
        std::array<std::pair<Index, Index>, 2> crossed;
        int found = 0;
        for (int c = 0; c < 3 && found <= 2; ++c) {
            Index a = vs[c], b = vs[(c + 1) % 3];
            Real ha = h[c], hb = h[(c + 1) % 3];
            if ((ha > 0) == (hb > 0)) continue;
            if (found < 2) crossed[found] = edge_key(a, b);
            ++found;
            if (!crossing.count(edge_key(a, b))) {
                Real t = ha / (ha - hb);
                crossing[edge_key(a, b)] = mesh.vertex(a) + t * (mesh.vertex(b) - mesh.vertex(a));
            }
        }
        if (found == 2) segs.push_back(crossed);
    }

    // chain segments into loops via shared crossing edges
    std::map<std::pair<Index, Index>, std::vector<size_t>> incident;
    for (size_t s = 0; s < segs.size(); ++s) {
        incident[segs[s][0]].push_back(s);
        incident[segs[s][1]].push_back(s);
    }
    std::vector<bool> used(segs.size(), false);
    std::vector<SectionLoop> loops;
    for (size_t start = 0; start < segs.size(); ++start) {
        if (used[start]) continue;
        std::vector<Vec3> pts;
        size_t cur = start;
        auto key = segs[start][0];
        bool closed_loop = false;
        while (true) {
            used[cur] = true;
            pts.push_back(crossing[key]);
            auto next_key = (segs[cur][0] == key) ? segs[cur][1] : segs[cur][0];
            const auto& inc = incident[next_key];
            size_t next = cur;
            for (size_t cand : inc)
                if (cand != cur && !used[cand]) next = cand;
            if (next == cur) {
                // either loop closed (back to start's keys) or open chain
                closed_loop = (next_key == segs[start][0]);
                if (!closed_loop) pts.push_back(crossing[next_key]);
                break;
            }
            key = next_key;
            cur = next;
        }
        if (pts.size() < 3) continue;
        SectionLoop loop;
        loop.points3 = pts;
        loop.curve.closed = closed_loop;
        loop.curve.points.resize(static_cast<Index>(pts.size()), 2);
        for (size_t i = 0; i < pts.size(); ++i) {
            Vec3 d = pts[i] - origin - offset * axis;
            loop.curve.points.row(static_cast<Index>(i)) << d.dot(frame_u), d.dot(frame_v);
        }
        loop.curve.force_ccw();
        loops.push_back(std::move(loop));
    }
    return loops;
}

NeckRegion fit_axis_and_sections(const SurfaceMesh& mesh, const CurvatureField& field, Index seed,
                                 Real L, Real r_guess) {
    NeckRegion region;
    region.seed_point = mesh.vertex(seed);
    region.r = r_guess;

    MeshAdjacency adj = build_adjacency(mesh);
    region.region_vertices = geodesic_ball(mesh, adj, seed, 1.2 * L * r_guess);

    // axis: dominant lambda1 direction over the region (sign-free average)
    Mat3 M = Mat3::Zero();
    for (Index v : region.region_vertices) {
        Vec3 d = field.dir1.row(v).transpose();
        M += d * d.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Mat3> es(M);
    Vec3 axis = es.eigenvectors().col(2);

    auto extract = [&](const Vec3& ax, NeckRegion& out) {
        out.axis = ax;
        orthonormal_frame(ax, out.frame_u, out.frame_v);
        out.stations.clear();
        out.sections.clear();
        out.sections_ok = true;
        const Real step = 0.25;  // r/4 station spacing, in r units
        for (Real s = -L; s <= L + 1e-9; s += step) {
            auto loops = slice_mesh(mesh, out.seed_point, ax, out.frame_u, out.frame_v,
                                    s * out.r);
            // keep the loop whose centroid is nearest the seed's slice point
            const SectionLoop* best = nullptr;
            Real best_d = kInf;
            for (const auto& loop : loops) {
                Real d = loop.curve.centroid().norm();
                if (d < best_d) {
                    best_d = d;
                    best = &loop;
                }
            }
            if (!best || !best->curve.closed || best->curve.size() < 8) {
                out.sections_ok = false;
                out.section_issue = "station misses a closed cross-section";
                continue;
            }
            if (!best->curve.is_simple()) {
                out.sections_ok = false;
                out.section_issue = "non-simple cross-section";
                continue;
            }
            out.stations.push_back(s);
            out.sections.push_back(best->curve);
        }
        // recenter the transverse frame on the mean section centroid, so
        // section coordinates are taken about the axis rather than the seed
        if (!out.sections.empty()) {
            Vec2 mean_c = Vec2::Zero();
            for (const auto& sec : out.sections) mean_c += sec.centroid();
            mean_c /= Real(out.sections.size());
            for (auto& sec : out.sections) sec.points.rowwise() -= mean_c.transpose();
            out.axis_origin = out.seed_point + mean_c.x() * out.frame_u + mean_c.y() * out.frame_v;
        } else {
            out.axis_origin = out.seed_point;
        }
    };

    extract(axis, region);

    // one least-squares refinement pass through the section centroids
    if (region.sections.size() >= 3) {
        Eigen::MatrixX3d cents(static_cast<Index>(region.sections.size()), 3);
        for (size_t k = 0; k < region.sections.size(); ++k) {
            Vec2 c2 = region.sections[k].centroid();
            Vec3 c3 = region.axis_origin + region.stations[k] * region.r * region.axis +
                      c2.x() * region.frame_u + c2.y() * region.frame_v;
            cents.row(static_cast<Index>(k)) = c3.transpose();
        }
        Vec3 mean = cents.colwise().mean().transpose();
        Mat3 cov = Mat3::Zero();
        for (Index k = 0; k < cents.rows(); ++k) {
            Vec3 d = cents.row(k).transpose() - mean;
            cov += d * d.transpose();
        }
        Eigen::SelfAdjointEigenSolver<Mat3> es2(cov);
        Vec3 refined = es2.eigenvectors().col(2);
        if (refined.dot(region.axis) < 0) refined = -refined;
        NeckRegion refined_region;
        refined_region.seed_point = region.seed_point;
        refined_region.r = region.r;
        refined_region.region_vertices = region.region_vertices;
        extract(refined, refined_region);
        if (refined_region.sections_ok || !region.sections_ok) region = std::move(refined_region);
    }
    return region;
}

NeckRegion profile_neck_region(const AxiProfile& p, Index seed_station, Real L, Real r,
                               int angular_samples) {
    NeckRegion region;
    region.axis = Vec3::UnitZ();
    region.frame_u = Vec3::UnitX();
    region.frame_v = Vec3::UnitY();
    region.r = r;
    const Real z0 = p.z(seed_station);
    region.seed_point = Vec3(p.r(seed_station), 0, z0);
    region.axis_origin = Vec3(0, 0, z0);
    const Real step = 0.25;
    for (Real s = -L; s <= L + 1e-9; s += step) {
        Real z = z0 + s * r;
        if (z < p.z(0) || z > p.z(p.size() - 1)) {
            region.sections_ok = false;
            region.section_issue = "station outside the profile window";
            continue;
        }
        // linear interpolation of the radius
        Real u = (z - p.z(0)) / p.spacing();
        Index i = std::min<Index>(static_cast<Index>(u), p.size() - 2);
        Real frac = u - i;
        Real rad = (1 - frac) * p.r(i) + frac * p.r(i + 1);
        region.stations.push_back(s);
        region.sections.push_back(PlaneCurve::circle(rad, angular_samples));
    }
    if (region.sections.size() < 8) {
        region.sections_ok = false;
        if (region.section_issue.empty()) region.section_issue = "too few stations";
    }
    return region;
}

Real MeshClearance::first_hit(const Vec3& origin, const Vec3& dir, Real a0, Real cap) const {
    Real best = cap;
    const SurfaceMesh& mesh = *mesh_;
    for (Index f = 0; f < mesh.num_faces(); ++f) {
        Vec3 a = mesh.vertex(mesh.F(f, 0));
        Vec3 b = mesh.vertex(mesh.F(f, 1));
        Vec3 c = mesh.vertex(mesh.F(f, 2));
        Vec3 e1 = b - a, e2 = c - a;
        Vec3 pvec = dir.cross(e2);
        Real det = e1.dot(pvec);
        if (std::abs(det) < 1e-14) continue;
        Real inv = 1.0 / det;
        Vec3 tvec = origin - a;
        Real u = tvec.dot(pvec) * inv;
        if (u < -1e-12 || u > 1 + 1e-12) continue;
        Vec3 qvec = tvec.cross(e1);
        Real v = dir.dot(qvec) * inv;
        if (v < -1e-12 || u + v > 1 + 1e-12) continue;
        Real t = e2.dot(qvec) * inv;
        if (t > a0 && t < best) best = t;
    }
    return best;
}

Real ProfileClearance::first_hit(const Vec3& origin, const Vec3& dir, Real a0, Real cap) const {
    // axisymmetric surfaces and meridian rays: everything stays in the
    // (rho, z) half-plane through the origin point
    const Real rho0 = origin.head<2>().norm();
    Vec2 radial = rho0 > 0 ? Vec2(origin.head<2>() / rho0) : Vec2(1, 0);
    Vec2 o(rho0, origin.z());
    Vec2 d(dir.head<2>().dot(radial), dir.z());
    Real best = cap;
    for (const AxiProfile* comp : components_) {
        for (Index i = 0; i + 1 < comp->size(); ++i) {
            // segment (r_i, z_i) - (r_{i+1}, z_{i+1}) against the ray o + t d
            Vec2 p0(comp->r(i), comp->z(i)), p1(comp->r(i + 1), comp->z(i + 1));
            Vec2 e = p1 - p0;
            Real det = d.x() * (-e.y()) - d.y() * (-e.x());
            if (std::abs(det) < 1e-16) continue;
            Real rx = p0.x() - o.x(), ry = p0.y() - o.y();
            Real t = (rx * (-e.y()) - ry * (-e.x())) / det;
            Real s = (d.x() * ry - d.y() * rx) / det;
            if (s < -1e-12 || s > 1 + 1e-12) continue;
            if (t > a0 && t < best) best = t;
        }
    }
    return best;
}

namespace {

// low-pass Fourier derivatives of a periodic sample vector
std::vector<Eigen::VectorXd> spectral_derivatives(const Eigen::VectorXd& f, int orders,
                                                  int keep_modes) {
    const Index n = f.size();
    using Cx = std::complex<Real>;
    std::vector<Cx> coef(static_cast<size_t>(keep_modes) + 1, Cx(0, 0));
    for (int m = 0; m <= keep_modes; ++m) {
        Cx acc(0, 0);
        for (Index k = 0; k < n; ++k) {
            Real ang = -2 * M_PI * m * k / n;
            acc += f(k) * Cx(std::cos(ang), std::sin(ang));
        }
        coef[m] = acc / Real(n);
    }
    std::vector<Eigen::VectorXd> out(orders + 1, Eigen::VectorXd::Zero(n));
    for (int ord = 0; ord <= orders; ++ord) {
        for (Index k = 0; k < n; ++k) {
            Real t = 2 * M_PI * k / n;  // angle parameter
            Cx val(0, 0);
            for (int m = 0; m <= keep_modes; ++m) {
                Cx c = coef[m] * std::pow(Cx(0, m), ord);
                Real w = (m == 0) ? 1.0 : 2.0;  // conjugate mode folded in
                val += w * c * Cx(std::cos(m * t), std::sin(m * t));
            }
            out[ord](k) = val.real();
        }
    }
    return out;
}

}  // namespace

NeckCertificate check_neck(const NeckRegion& region, const NeckParams& params,
                           const ClearanceOracle& clearance) {
    NeckCertificate cert;
    if (!region.sections_ok || region.sections.size() < 8) {
        cert.note = region.section_issue.empty() ? "too few stations" : region.section_issue;
        cert.c1 = false;
        return cert;
    }
    const Index M = 128;  // common angular grid
    const size_t ns = region.sections.size();
    const Real r = region.r;

    // r-normalized radius-by-angle tables per station, low-pass filtered so
    // that sub-resolution polygon sag does not masquerade as C^2 distance
    std::vector<Eigen::VectorXd> rho(ns);
    for (size_t k = 0; k < ns; ++k) {
        PlaneCurve centered = region.sections[k];
        Eigen::VectorXd raw = radius_by_angle(centered, M) / r;
        rho[k] = spectral_derivatives(raw, 0, static_cast<int>(M / 8))[0];
    }
    Eigen::VectorXd mean_rho = Eigen::VectorXd::Zero(M);
    for (const auto& v : rho) mean_rho += v;
    mean_rho /= Real(ns);

    // --- C1: discrete C^2 distance from the product over the mean section
    const Real rho_bar = mean_rho.mean();
    const Real dtheta_arc = 2 * M_PI * rho_bar / M;           // arc step, r units
    const Real ds = (region.stations.size() > 1)
                        ? (region.stations[1] - region.stations[0])
                        : 0.25;                               // axial step, r units
    Real d0 = 0, d1 = 0, d2 = 0;
    auto at = [&](size_t k, Index j) { return rho[k]((j % M + M) % M) - mean_rho((j % M + M) % M); };
    for (size_t k = 0; k < ns; ++k)
        for (Index j = 0; j < M; ++j) {
            Real dev = at(k, j);
            d0 = std::max(d0, std::abs(dev));
            d1 = std::max(d1, std::abs(at(k, j + 1) - at(k, j - 1)) / (2 * dtheta_arc));
            d2 = std::max(d2, std::abs(at(k, j + 1) - 2 * dev + at(k, j - 1)) /
                                  (dtheta_arc * dtheta_arc));
            if (k > 0 && k + 1 < ns) {
                d1 = std::max(d1, std::abs(at(k + 1, j) - at(k - 1, j)) / (2 * ds));
                d2 = std::max(d2, std::abs(at(k + 1, j) - 2 * dev + at(k - 1, j)) / (ds * ds));
            }
        }
    cert.dist_c1 = std::max({d0, d1, d2});
    cert.margin_c1 = params.eps - cert.dist_c1;
    cert.c1 = cert.margin_c1 >= 0;

    // --- C4: rescale the mean section so some sample has kappa = 1
    PlaneCurve gamma_raw;
    gamma_raw.points.resize(M, 2);
    for (Index j = 0; j < M; ++j) {
        Real th = -M_PI + 2 * M_PI * j / M;
        gamma_raw.points.row(j) << mean_rho(j) * std::cos(th), mean_rho(j) * std::sin(th);
    }
    CurveProfile praw = curvature_profile(gamma_raw);
    if (praw.kappa.minCoeff() <= 0) {
        cert.note = "mean section not convex";
        return cert;
    }
    Index star = 0;
    (praw.kappa.array() - 1.0).abs().minCoeff(&star);
    const Real beta = praw.kappa(star);
    cert.margin_c4 = params.eps - std::abs(beta - 1.0);
    cert.c4 = cert.margin_c4 >= 0;

    cert.gamma = gamma_raw;
    cert.gamma.points *= beta;
    CurveProfile pg = curvature_profile(cert.gamma);

    // --- C2: noncollapsing of the cross-section
    cert.margin_c2 = (1 + params.delta_hat) - sup_mu_over_kappa(cert.gamma, pg);
    cert.c2 = cert.margin_c2 >= 0;

    // --- C3: low-passed curvature derivative sum up to order 4
    auto devs = spectral_derivatives(pg.kappa, 4, std::min<int>(10, M / 8));
    Eigen::VectorXd speed(M);  // |dgamma/dtheta|
    for (Index j = 0; j < M; ++j)
        speed(j) = (cert.gamma.point(j + 1) - cert.gamma.point(j - 1)).norm() / (4 * M_PI / M);
    Real worst_sum = 0;
    for (Index j = 0; j < M; ++j) {
        Real sum = 0, pw = 1;
        for (int ord = 1; ord <= 4; ++ord) {
            pw *= speed(j);
            sum += std::abs(devs[ord](j)) / pw;
        }
        worst_sum = std::max(worst_sum, sum);
    }
    cert.margin_c3 = 0.01 - worst_sum;
    cert.c3 = cert.margin_c3 >= 0;

    // --- C5: outward clearance 2 alpha_hat r via ray casting
    const Real reach = 2 * params.alpha_hat * r;
    const Real capd = 2 * reach;
    Real min_hit = capd;
    for (size_t k = 0; k < ns; ++k) {
        const PlaneCurve& sec = region.sections[k];
        CurveProfile sp = curvature_profile(sec);
        const Index step = std::max<Index>(1, sec.size() / 32);
        for (Index j = 0; j < sec.size(); j += step) {
            Vec2 p2 = sec.point(j);
            Vec2 n2 = sp.normal.row(j).transpose();
            Vec3 origin = region.axis_origin + region.stations[k] * r * region.axis +
                          p2.x() * region.frame_u + p2.y() * region.frame_v;
            Vec3 dir = n2.x() * region.frame_u + n2.y() * region.frame_v;
            min_hit = std::min(min_hit, clearance.first_hit(origin, dir, 1e-6 * r, capd));
        }
    }
    cert.margin_c5 = std::min(min_hit / reach - 1.0, Real(1));
    cert.c5 = cert.margin_c5 >= 0;

    cert.pass = cert.c1 && cert.c2 && cert.c3 && cert.c4 && cert.c5;
    return cert;
}

std::vector<Index> scan_for_necks(const SurfaceMesh& mesh, const CurvatureField& field, Real H1,
                                  Real Theta, Real eta0, Real K0) {
    const Index n = mesh.num_vertices();
    const Real H_min = std::max(K0, H1 / Theta);
    std::vector<Index> flagged;
    for (Index v = 0; v < n; ++v)
        if (field.H(v) > 0 && field.H(v) >= H_min && field.lambda1(v) / field.H(v) <= eta0)
            flagged.push_back(v);
    if (flagged.empty()) return {};

    std::sort(flagged.begin(), flagged.end(),
              [&](Index a, Index b) { return field.H(a) > field.H(b); });
    MeshAdjacency adj = build_adjacency(mesh);
    std::set<Index> flag_set(flagged.begin(), flagged.end());
    std::set<Index> taken;
    struct Cluster {
        Index seed;
        Real mean_H;
    };
    std::vector<Cluster> clusters;
    for (Index v : flagged) {
        if (taken.count(v)) continue;
        // cluster radius 2/H around the deepest unclaimed vertex
        std::vector<Index> ball = geodesic_ball(mesh, adj, v, 2.0 / field.H(v));
        Real sum = 0;
        Index cnt = 0;
        for (Index w : ball)
            if (flag_set.count(w)) {
                taken.insert(w);
                sum += field.H(w);
                ++cnt;
            }
        clusters.push_back({v, cnt ? sum / cnt : field.H(v)});
    }
    std::sort(clusters.begin(), clusters.end(),
              [](const Cluster& a, const Cluster& b) { return a.mean_H > b.mean_H; });
    std::vector<Index> seeds;
    seeds.reserve(clusters.size());
    for (auto& c : clusters) seeds.push_back(c.seed);
    return seeds;
}

}  // namespace mcf
