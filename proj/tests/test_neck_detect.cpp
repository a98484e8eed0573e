#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mcf/neck.hpp"
#include "mcf/shapes.hpp"

using namespace mcf;

namespace {

SurfaceMesh make_box(Vec3 lo, Vec3 hi) {
    SurfaceMesh m;
    m.V.resize(8, 3);
    int id = 0;
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j)
            for (int i = 0; i < 2; ++i)
                m.V.row(id++) << (i ? hi.x() : lo.x()), (j ? hi.y() : lo.y()),
                    (k ? hi.z() : lo.z());
    // 12 triangles, outward orientation
    int F[12][3] = {{0, 2, 1}, {1, 2, 3}, {4, 5, 6}, {5, 7, 6}, {0, 1, 4}, {1, 5, 4},
                    {2, 6, 3}, {3, 6, 7}, {0, 4, 2}, {2, 4, 6}, {1, 3, 5}, {3, 7, 5}};
    m.F.resize(12, 3);
    for (int f = 0; f < 12; ++f) m.F.row(f) << F[f][0], F[f][1], F[f][2];
    if (mesh_volume(m) < 0)
        for (Index f = 0; f < 12; ++f) std::swap(m.F(f, 1), m.F(f, 2));
    return m;
}

SurfaceMesh merge(const SurfaceMesh& a, const SurfaceMesh& b) {
    SurfaceMesh m;
    m.V.resize(a.num_vertices() + b.num_vertices(), 3);
    m.V << a.V, b.V;
    m.F.resize(a.num_faces() + b.num_faces(), 3);
    m.F.topRows(a.num_faces()) = a.F;
    m.F.bottomRows(b.num_faces()) = b.F.array() + static_cast<int>(a.num_vertices());
    return m;
}

Index barrel_seed(const SurfaceMesh& mesh) {
    Index best = 0;
    Real score = kInf;
    for (Index v = 0; v < mesh.num_vertices(); ++v) {
        Real s = std::abs(mesh.V(v, 2));
        if (s < score) {
            score = s;
            best = v;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("axis recovery: aligned, rotated, dumbbell") {
    SurfaceMesh cyl = generate_mesh(ShapeSpec::cylinder(1.0, 24.0, false), 3);
    CurvatureField field = compute_curvature(cyl);
    Index seed = barrel_seed(cyl);
    NeckRegion region = fit_axis_and_sections(cyl, field, seed, 10.0, 1.0);
    REQUIRE(region.sections_ok);
    CHECK(std::abs(std::abs(region.axis.dot(Vec3::UnitZ())) - 1.0) < 1e-6);

    // rigidly rotated cylinder: axis recovered within 1e-3 radians
    Eigen::AngleAxisd rot(0.6, Vec3(1, 2, 0.5).normalized());
    SurfaceMesh rotcyl = cyl;
    for (Index v = 0; v < cyl.num_vertices(); ++v)
        rotcyl.V.row(v) = (rot * cyl.vertex(v)).transpose();
    CurvatureField rfield = compute_curvature(rotcyl);
    NeckRegion rregion = fit_axis_and_sections(rotcyl, rfield, seed, 10.0, 1.0);
    REQUIRE(rregion.sections_ok);
    Vec3 expect = rot * Vec3::UnitZ();
    Real angle = std::acos(std::min(1.0, std::abs(rregion.axis.dot(expect))));
    CHECK(angle < 1e-3);

    // dumbbell waist: axis along e_z within 1e-2 radians
    SurfaceMesh db = generate_mesh(ShapeSpec::dumbbell(1.0, 0.3, 3.0), 3);
    CurvatureField dfield = compute_curvature(db);
    Index waist = barrel_seed(db);
    NeckRegion dregion = fit_axis_and_sections(db, dfield, waist, 2.0, 0.3);
    Real dangle = std::acos(std::min(1.0, std::abs(dregion.axis.dot(Vec3::UnitZ()))));
    CHECK(dangle < 1e-2);
}

TEST_CASE("round cylinder certifies as a neck; sphere fails C1") {
    SurfaceMesh cyl = generate_mesh(ShapeSpec::cylinder(1.0, 24.0, false), 3);
    CurvatureField field = compute_curvature(cyl);
    NeckRegion region = fit_axis_and_sections(cyl, field, barrel_seed(cyl), 10.0, 1.0);
    REQUIRE(region.sections_ok);
    REQUIRE(region.sections.size() >= 8);

    NeckParams params{0.5, 0.1, 0.01, 10.0};
    MeshClearance clearance(cyl);
    NeckCertificate cert = check_neck(region, params, clearance);
    INFO("margins: c1 = " << cert.margin_c1 << " c2 = " << cert.margin_c2
                          << " c3 = " << cert.margin_c3 << " c4 = " << cert.margin_c4
                          << " c5 = " << cert.margin_c5);
    CHECK(cert.pass);
    CHECK(cert.margin_c1 > 0);
    CHECK(cert.margin_c2 > 0);
    CHECK(cert.margin_c3 > 0);
    CHECK(cert.margin_c4 > 0);
    CHECK(cert.margin_c5 > 0);
    // Gamma is the unit circle
    CHECK((cert.gamma.points.rowwise().norm().array() - 1.0).abs().maxCoeff() < 0.02);

    // sphere: no cylinder within any eps < 0.1
    SurfaceMesh sphere = icosphere(1.0, 4);
    CurvatureField sfield = compute_curvature(sphere);
    NeckRegion sregion = fit_axis_and_sections(sphere, sfield, 17, 1.5, 0.5);
    MeshClearance sclear(sphere);
    NeckCertificate scert = check_neck(sregion, NeckParams{0.5, 0.1, 0.0999, 1.5}, sclear);
    CHECK_FALSE(scert.c1);
    CHECK_FALSE(scert.pass);
}

TEST_CASE("elliptical cylinder: C1 margin equals the measured distance") {
    // sections of an elliptical cylinder coincide with their mean, so the
    // C1 distance is pure extraction noise; C3 fails honestly (the paper's
    // derivative bound keeps cross-sections 1e-4 round)
    for (int res : {3, 4}) {
        SurfaceMesh cyl = generate_mesh(ShapeSpec::cylinder(1.0, 24.0, false), res);
        for (Index v = 0; v < cyl.num_vertices(); ++v) cyl.V(v, 0) *= 1.05;
        CurvatureField field = compute_curvature(cyl);
        NeckRegion region = fit_axis_and_sections(cyl, field, barrel_seed(cyl), 8.0, 1.0);
        REQUIRE(region.sections_ok);
        NeckParams params{0.5, 0.15, 0.01, 8.0};
        MeshClearance clearance(cyl);
        NeckCertificate cert = check_neck(region, params, clearance);
        CHECK(cert.c1 == (cert.dist_c1 <= params.eps));
        CHECK(cert.margin_c1 == doctest::Approx(params.eps - cert.dist_c1));
        CHECK(cert.c1);  // the product structure is exact up to extraction noise
        CHECK_FALSE(cert.c3);
        CHECK(cert.c2);
    }
}

TEST_CASE("C5 clearance: isolated neck passes, parallel wall flips it") {
    SurfaceMesh cyl = generate_mesh(ShapeSpec::cylinder(1.0, 16.0, false), 3);
    CurvatureField field = compute_curvature(cyl);
    NeckRegion region = fit_axis_and_sections(cyl, field, barrel_seed(cyl), 6.0, 1.0);
    NeckParams params{0.5, 0.1, 0.01, 6.0};

    MeshClearance isolated(cyl);
    NeckCertificate cert = check_neck(region, params, isolated);
    CHECK(cert.c5);
    CHECK(cert.margin_c5 == doctest::Approx(1.0));  // capped: nothing in reach

    // wall inside the 2 alpha_hat r = 1 clearance shell
    SurfaceMesh wall = make_box({1.5, -4, -9}, {1.7, 4, 9});
    SurfaceMesh both = merge(cyl, wall);
    MeshClearance walled(both);
    NeckCertificate wcert = check_neck(region, params, walled);
    CHECK_FALSE(wcert.c5);
    CHECK(wcert.margin_c5 < 0);
    // the wall only affects C5
    CHECK(wcert.c1 == cert.c1);
    CHECK(wcert.margin_c1 == doctest::Approx(cert.margin_c1));
}

TEST_CASE("certificates are scale equivariant to 1e-9") {
    SurfaceMesh cyl = generate_mesh(ShapeSpec::cylinder(1.0, 16.0, false), 3);
    CurvatureField field = compute_curvature(cyl);
    NeckRegion region = fit_axis_and_sections(cyl, field, barrel_seed(cyl), 6.0, 1.0);
    NeckParams params{0.5, 0.1, 0.01, 6.0};
    MeshClearance clearance(cyl);
    NeckCertificate base = check_neck(region, params, clearance);

    const Real c = 100.0;
    SurfaceMesh scaled = cyl;
    scaled.V *= c;
    CurvatureField sfield = compute_curvature(scaled);
    NeckRegion sregion = fit_axis_and_sections(scaled, sfield, barrel_seed(scaled), 6.0, c);
    MeshClearance sclear(scaled);
    NeckCertificate scert = check_neck(sregion, params, sclear);

    CHECK(scert.margin_c1 == doctest::Approx(base.margin_c1).epsilon(1e-9));
    CHECK(scert.margin_c2 == doctest::Approx(base.margin_c2).epsilon(1e-9));
    CHECK(scert.margin_c3 == doctest::Approx(base.margin_c3).epsilon(1e-9));
    CHECK(scert.margin_c4 == doctest::Approx(base.margin_c4).epsilon(1e-9));
    CHECK(scert.margin_c5 == doctest::Approx(base.margin_c5).epsilon(1e-9));
}

TEST_CASE("certificate monotone in (eps, delta_hat)") {
    SurfaceMesh cyl = generate_mesh(ShapeSpec::cylinder(1.0, 16.0, false), 3);
    CurvatureField field = compute_curvature(cyl);
    NeckRegion region = fit_axis_and_sections(cyl, field, barrel_seed(cyl), 6.0, 1.0);
    MeshClearance clearance(cyl);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<Real> du(0.001, 0.2);
    for (int trial = 0; trial < 6; ++trial) {
        Real eps = du(rng), dh = du(rng);
        NeckCertificate a = check_neck(region, NeckParams{0.5, dh, eps, 6.0}, clearance);
        NeckCertificate b =
            check_neck(region, NeckParams{0.5, dh * 2, eps * 2, 6.0}, clearance);
        if (a.pass) CHECK(b.pass);
    }
}

TEST_CASE("scan_for_necks: sphere empty, dumbbell waist, capped cylinder barrel") {
    SurfaceMesh sphere = icosphere(1.0, 3);
    CurvatureField sfield = compute_curvature(sphere);
    CHECK(scan_for_necks(sphere, sfield, 1.0, 800.0, 0.1).empty());

    SurfaceMesh db = generate_mesh(ShapeSpec::dumbbell(1.0, 0.3, 3.0), 3);
    CurvatureField dfield = compute_curvature(db);
    auto seeds = scan_for_necks(db, dfield, 1.0, 800.0, 0.1);
    REQUIRE_FALSE(seeds.empty());
    for (Index s : seeds) CHECK(std::abs(db.V(s, 2)) < 0.8);  // all in the waist region
    WARN_MESSAGE(seeds.size() == 1, "dumbbell cluster count: ", seeds.size());

    SurfaceMesh cyl = generate_mesh(ShapeSpec::cylinder(1.0, 10.0, false), 3);
    CurvatureField cfield = compute_curvature(cyl);
    auto cseeds = scan_for_necks(cyl, cfield, 1.0, 800.0, 0.1);
    REQUIRE_FALSE(cseeds.empty());
    for (Index s : cseeds) CHECK(std::abs(cyl.V(s, 2)) < 5.0);  // barrel only, not the caps
}

TEST_CASE("profile neck region certifies on the axisymmetric cylinder") {
    AxiProfile cyl = generate_profile(ShapeSpec::cylinder(1.0, 24.0, true), 512);
    Index seed = cyl.size() / 2;
    NeckRegion region = profile_neck_region(cyl, seed, 10.0, 1.0);
    REQUIRE(region.sections_ok);
    ProfileClearance clearance({&cyl});
    NeckCertificate cert = check_neck(region, NeckParams{0.5, 0.1, 0.01, 10.0}, clearance);
    INFO("margins: c1 = " << cert.margin_c1 << " c2 = " << cert.margin_c2
                          << " c3 = " << cert.margin_c3 << " c4 = " << cert.margin_c4
                          << " c5 = " << cert.margin_c5);
    CHECK(cert.pass);
}
