#ifndef MCF_SHAPES_HPP
#define MCF_SHAPES_HPP

#include <string>

#include "mcf/axi.hpp"
#include "mcf/surface_mesh.hpp"

namespace mcf {

enum class ShapeKind { Sphere, Cylinder, Ellipsoid, Dumbbell, Torus, ModelCap, Obj };

struct ShapeSpec {
    ShapeKind kind = ShapeKind::Sphere;
    Real radius = 1.0;        // sphere, cylinder r, torus tube r, dumbbell waist
    Real length = 4.0;        // cylinder length
    bool periodic = false;    // cylinder: periodic strip instead of capped
    Real a = 2, b = 1, c = 1; // ellipsoid semi-axes
    Real bulb_radius = 1.0;   // dumbbell
    Real separation = 3.0;    // dumbbell bulb-center separation; torus major R
    Real cap_extent = 20.0;   // model cap S
    std::string obj_path;

    static ShapeSpec sphere(Real R) {
        ShapeSpec s; s.kind = ShapeKind::Sphere; s.radius = R; return s;
    }
    static ShapeSpec cylinder(Real r, Real len, bool periodic_strip) {
        ShapeSpec s; s.kind = ShapeKind::Cylinder; s.radius = r; s.length = len;
        s.periodic = periodic_strip; return s;
    }
    static ShapeSpec ellipsoid(Real a, Real b, Real c) {
        ShapeSpec s; s.kind = ShapeKind::Ellipsoid; s.a = a; s.b = b; s.c = c; return s;
    }
    static ShapeSpec dumbbell(Real bulb, Real waist, Real sep) {
        ShapeSpec s; s.kind = ShapeKind::Dumbbell; s.bulb_radius = bulb; s.radius = waist;
        s.separation = sep; return s;
    }
    static ShapeSpec torus(Real R, Real r) {
        ShapeSpec s; s.kind = ShapeKind::Torus; s.separation = R; s.radius = r; return s;
    }
    static ShapeSpec model_cap(Real S) {
        ShapeSpec s; s.kind = ShapeKind::ModelCap; s.cap_extent = S; return s;
    }

    ValidationReport validate() const;
};

/// Unit-sphere icosahedron subdivision mesh scaled to radius R.
SurfaceMesh icosphere(Real R, int subdivisions);

/// resolution steers overall vertex spacing (larger = finer); each shape maps
/// it to its own sampling counts.
SurfaceMesh generate_mesh(const ShapeSpec& spec, int resolution);

/// Axisymmetric profile r(z) for shapes that admit one (sphere, capped
/// cylinder, ellipsoid of revolution a=b, dumbbell). Throws otherwise.
AxiProfile generate_profile(const ShapeSpec& spec, int grid_points);

/// Dumbbell generator profile r0(z), defined for |z| < z_extent(). Shared by
/// the mesh and profile paths so both sample the same surface.
struct DumbbellProfile {
    Real bulb_radius, waist_radius, separation;
    Real z_extent() const { return 0.5 * separation + bulb_radius; }
    Real radius(Real z) const;
};

}  // namespace mcf

#endif
