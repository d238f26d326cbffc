#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "cutopt/mesh.hpp"

namespace cutopt {

using ScalarField = std::function<double(const Vec2&)>;
/// Two-branch field; side is 1 or 2 and selects the subdomain branch.
using SideField = std::function<double(const Vec2&, int)>;
using SideVecField = std::function<Vec2(const Vec2&, int)>;

/// Level-set description of the interface. Sign convention:
/// phi < 0 in subdomain 1, phi > 0 in subdomain 2, phi = 0 on the interface.
struct LevelSet {
    ScalarField phi;

    double operator()(const Vec2& x) const { return phi(x); }
};

enum class ElementClass { Cut, Interior1, Interior2 };

struct QuadPoint {
    Vec2 x;
    double w = 0.0;
};

struct QuadRule {
    std::vector<QuadPoint> points;
    int degree = 0;  // polynomial exactness

    double weight_sum() const {
        double s = 0.0;
        for (const auto& p : points) s += p.w;
        return s;
    }
};

struct SubTri {
    std::array<Vec2, 3> v;

    double area() const { return signed_area(v[0], v[1], v[2]); }
};

/// Per-element cut geometry: the interface chord, its unit normal (pointing
/// from side 1 into side 2), side areas and kappa weights, and a
/// sub-triangulation of each side for quadrature.
struct CutCell {
    int cell = -1;
    std::array<Vec2, 2> segment;  // chord endpoints
    Vec2 normal{0.0, 0.0};
    double segment_length = 0.0;
    std::array<double, 2> side_area{0.0, 0.0};  // |K_1|, |K_2|
    std::array<double, 2> kappa{0.0, 0.0};      // kappa_2 = 1 - kappa_1
    std::array<std::vector<SubTri>, 2> side_tris;
};

/// Snapping threshold for vertex level-set values, relative to the mesh size.
/// Values within the threshold are pushed to the side-2 sign, which removes
/// exact zero crossings at vertices.
inline constexpr double kSnapRel = 1e-12;

double snap_vertex_value(double phi_value, double h);

/// Per-cell classification from snapped vertex values: all negative ->
/// Interior1, all positive -> Interior2, mixed -> Cut.
std::vector<ElementClass> classify_elements(const TriMesh& mesh, const LevelSet& ls);

/// Computes the cut geometry of a cell classified Cut. Returns nullopt when
/// the cut is degenerate (one side has relative area below 1e-12, e.g. the
/// interface runs along an element edge); such cells belong to a single side
/// and should be reclassified. Throws std::runtime_error if more than two
/// edges change sign or a crossing cannot be bracketed.
std::optional<CutCell> cut_element(const TriMesh& mesh, int cell, const LevelSet& ls);

/// Quadrature on one side of a cut cell, exact to `degree` (1..6 supported)
/// on every sub-triangle; weights sum to the side area.
QuadRule subcell_quadrature(const CutCell& cut, int side, int degree);

/// Quadrature for a whole (uncut) triangle, exact to `degree` in {1..6}.
QuadRule triangle_quadrature(const std::array<Vec2, 3>& tri, int degree);

/// Gauss rule mapped to the interface chord; weights sum to the chord length.
/// Points inherit the cell's normal and kappa weights through the rule.
struct InterfaceRule {
    std::vector<QuadPoint> points;
    Vec2 normal{0.0, 0.0};
    std::array<double, 2> kappa{0.0, 0.0};
    double length = 0.0;
};

InterfaceRule interface_quadrature(const CutCell& cut, int npoints);

/// Classification plus cut geometry for every interface element. Cells whose
/// cut came out degenerate are reclassified to the side of their centroid.
struct CutGeometry {
    std::vector<ElementClass> classes;
    std::vector<int> cut_index;  // per cell: index into `cuts`, or -1
    std::vector<CutCell> cuts;

    bool is_cut(int cell) const { return cut_index[cell] >= 0; }
    /// Subdomain side (1 or 2) of an uncut cell.
    int side_of(int cell) const { return classes[cell] == ElementClass::Interior1 ? 1 : 2; }
};

CutGeometry build_cut_geometry(const TriMesh& mesh, const LevelSet& ls);

}  // namespace cutopt
