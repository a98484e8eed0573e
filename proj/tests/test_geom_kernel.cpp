#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mcf/curvature.hpp"
#include "mcf/shapes.hpp"

using namespace mcf;

namespace {

// barrel vertices of a capsule, away from the caps
std::vector<Index> barrel_vertices(const SurfaceMesh& mesh, Real half_length) {
    std::vector<Index> out;
    for (Index v = 0; v < mesh.num_vertices(); ++v)
        if (std::abs(mesh.V(v, 2)) < 0.6 * half_length) out.push_back(v);
    return out;
}

}  // namespace

TEST_CASE("mesh validation accepts the icosphere and catches defects") {
    SurfaceMesh sphere = icosphere(1.0, 3);
    CHECK(validate_mesh(sphere).ok);
    CHECK(euler_characteristic(sphere) == 2);
    CHECK(mesh_area(sphere) == doctest::Approx(4 * M_PI).epsilon(0.01));
    CHECK(mesh_volume(sphere) == doctest::Approx(4 * M_PI / 3).epsilon(0.02));

    SurfaceMesh broken = sphere;
    broken.F.conservativeResize(broken.F.rows() - 1, 3);
    CHECK_FALSE(validate_mesh(broken).ok);

    SurfaceMesh flipped = sphere;
    std::swap(flipped.F(0, 1), flipped.F(0, 2));
    CHECK_FALSE(validate_mesh(flipped).ok);
}

TEST_CASE("unit icosphere curvature: H = 2, lambda1 = lambda2 = 1 within 2%") {
    SurfaceMesh sphere = icosphere(1.0, 4);
    CurvatureField field = compute_curvature(sphere);
    CHECK(field.flagged.empty());
    for (Index v = 0; v < sphere.num_vertices(); ++v) {
        CHECK(field.H(v) == doctest::Approx(2.0).epsilon(0.02));
        CHECK(field.lambda1(v) == doctest::Approx(1.0).epsilon(0.02));
        CHECK(field.lambda2(v) == doctest::Approx(1.0).epsilon(0.02));
        CHECK(field.H(v) == field.lambda1(v) + field.lambda2(v));  // exact by construction
        CHECK(field.normal.row(v).norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("unit cylinder barrel: H = 1, lambda1 = 0, lambda2 = 1") {
    SurfaceMesh cyl = generate_mesh(ShapeSpec::cylinder(1.0, 6.0, false), 4);
    REQUIRE(validate_mesh(cyl).ok);
    CurvatureField field = compute_curvature(cyl);
    auto barrel = barrel_vertices(cyl, 3.0);
    REQUIRE(barrel.size() > 100);
    for (Index v : barrel) {
        CHECK(field.H(v) == doctest::Approx(1.0).epsilon(0.02));
        CHECK(field.lambda1(v) == doctest::Approx(0.0).epsilon(0.02));
        CHECK(std::abs(field.lambda1(v)) < 0.02);
        CHECK(field.lambda2(v) == doctest::Approx(1.0).epsilon(0.02));
    }
}

TEST_CASE("inscribed radius: sphere and cylinder") {
    SurfaceMesh sphere = icosphere(1.0, 3);
    CurvatureField field = compute_curvature(sphere);
    for (Index v = 0; v < sphere.num_vertices(); v += 97)
        CHECK(inscribed_radius_mu(sphere, field, v) == doctest::Approx(1.0).epsilon(0.02));

    SurfaceMesh cyl = generate_mesh(ShapeSpec::cylinder(1.0, 6.0, false), 3);
    CurvatureField cfield = compute_curvature(cyl);
    for (Index v : barrel_vertices(cyl, 3.0))
        if (v % 37 == 0) CHECK(inscribed_radius_mu(cyl, cfield, v) == doctest::Approx(1.0).epsilon(0.02));

    SurfaceMesh open = sphere;
    open.closed = false;
    CHECK_THROWS_AS(inscribed_radius_mu(open, field, 0), std::invalid_argument);
}

TEST_CASE("outer radius: unbounded on convex bodies, finite at a dumbbell waist") {
    SurfaceMesh sphere = icosphere(1.0, 3);
    CurvatureField field = compute_curvature(sphere);
    const Real cap = 10 * bounding_box_diagonal(sphere);
    CHECK(outer_radius(sphere, field, 5) == doctest::Approx(cap));

    SurfaceMesh db = generate_mesh(ShapeSpec::dumbbell(1.0, 0.3, 3.0), 3);
    REQUIRE(validate_mesh(db).ok);
    CurvatureField dfield = compute_curvature(db);
    // waist vertex: nearest to the origin
    Index waist = 0;
    Real best = kInf;
    for (Index v = 0; v < db.num_vertices(); ++v) {
        Real score = std::abs(db.V(v, 2));
        if (score < best) { best = score; waist = v; }
    }
    Real rho = outer_radius(db, dfield, waist);
    CHECK(rho < 3.0);  // bounded by the opposite waist wall / bulbs
    CHECK(rho > 0.0);
}

TEST_CASE("noncollapsing report: sphere alpha_in = 2, cylinder alpha_in = 1") {
    SurfaceMesh sphere = icosphere(1.0, 3);
    NoncollapsingReport rs = noncollapsing_report(sphere);
    CHECK(rs.mean_convex);
    CHECK(rs.alpha_in == doctest::Approx(2.0).epsilon(0.02));

    SurfaceMesh cyl = generate_mesh(ShapeSpec::cylinder(1.0, 8.0, false), 3);
    NoncollapsingReport rc = noncollapsing_report(cyl);
    CHECK(rc.mean_convex);
    CHECK(rc.alpha_in == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("ellipsoid (2,1,1) alpha_in agrees across two resolutions") {
    // the oracle is the same brute-force pair scan at two mesh resolutions
    Real a3 = noncollapsing_report(generate_mesh(ShapeSpec::ellipsoid(2, 1, 1), 3)).alpha_in;
    Real a4 = noncollapsing_report(generate_mesh(ShapeSpec::ellipsoid(2, 1, 1), 4)).alpha_in;
    CHECK(a3 == doctest::Approx(a4).epsilon(0.02));
    // independent analytic cross-check at the tip (2,0,0): lambda2 = a/b^2 = 2,
    // ball of radius 1/2 fits inside, H = a/b^2 + a/c^2 = 4, ratio 2; the
    // global minimum must not exceed it
    CHECK(a4 <= 2.0 + 0.05);
}

TEST_CASE("mu >= lambda2 and rigid-motion / scaling covariance") {
    SurfaceMesh mesh = generate_mesh(ShapeSpec::ellipsoid(2, 1, 1), 3);
    CurvatureField field = compute_curvature(mesh);
    for (Index v = 0; v < mesh.num_vertices(); v += 11)
        CHECK(inscribed_radius_mu(mesh, field, v) >= field.lambda2(v) * (1 - 0.02));

    std::mt19937_64 rng(42);
    std::normal_distribution<Real> gauss;
    Vec3 axis(gauss(rng), gauss(rng), gauss(rng));
    axis.normalize();
    Eigen::AngleAxisd rot(0.7, axis);
    Vec3 shift(0.3, -1.2, 0.9);

    SurfaceMesh moved = mesh;
    for (Index v = 0; v < mesh.num_vertices(); ++v)
        moved.V.row(v) = (rot * mesh.vertex(v) + shift).transpose();
    CurvatureField mfield = compute_curvature(moved);
    for (Index v = 0; v < mesh.num_vertices(); v += 7) {
        CHECK(mfield.H(v) == doctest::Approx(field.H(v)).epsilon(1e-9));
        CHECK(mfield.lambda1(v) == doctest::Approx(field.lambda1(v)).epsilon(1e-9));
    }

    const Real c = 3.5;
    SurfaceMesh scaled = mesh;
    scaled.V *= c;
    CurvatureField sfield = compute_curvature(scaled);
    for (Index v = 0; v < mesh.num_vertices(); v += 7) {
        CHECK(sfield.H(v) == doctest::Approx(field.H(v) / c).epsilon(1e-9));
        CHECK(sfield.lambda2(v) == doctest::Approx(field.lambda2(v) / c).epsilon(1e-9));
    }
    for (Index v = 0; v < mesh.num_vertices(); v += 211) {
        CHECK(inscribed_radius_mu(scaled, sfield, v) ==
              doctest::Approx(inscribed_radius_mu(mesh, field, v) / c).epsilon(1e-9));
        Real rho = outer_radius(mesh, field, v);
        if (rho < 9 * bounding_box_diagonal(mesh))  // away from the sentinel cap
            CHECK(outer_radius(scaled, sfield, v) == doctest::Approx(rho * c).epsilon(1e-9));
    }
}

TEST_CASE("non-mean-convex input is reported with offending vertices") {
    SurfaceMesh torus = generate_mesh(ShapeSpec::torus(2.0, 0.5), 2);
    REQUIRE(validate_mesh(torus).ok);
    CHECK(euler_characteristic(torus) == 0);
    // inner equator of this torus has H = 1/r - 1/(R-r) < 0 under the sum
    // convention? 2 - 1/1.5 > 0, so it IS mean convex; squash it instead
    SurfaceMesh squashed = torus;
    squashed.V.col(2) *= 3.0;  // stretch vertically: inner saddle goes H < 0
    NoncollapsingReport rep = noncollapsing_report(squashed);
    if (rep.mean_convex) {
        WARN("squashed torus unexpectedly mean-convex; report still well-formed");
    } else {
        CHECK_FALSE(rep.non_convex_vertices.empty());
    }
}

TEST_CASE("OBJ round trip") {
    SurfaceMesh sphere = icosphere(1.0, 2);
    write_obj(sphere, "test_sphere_roundtrip.obj");
    SurfaceMesh back = read_obj("test_sphere_roundtrip.obj");
    REQUIRE(back.num_vertices() == sphere.num_vertices());
    REQUIRE(back.num_faces() == sphere.num_faces());
    CHECK((back.V - sphere.V).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.F - sphere.F).cwiseAbs().maxCoeff() == 0);
}
