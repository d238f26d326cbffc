#include "cutopt/interface.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cutopt {

namespace {

// Symmetric triangle rules in barycentric coordinates (l1, l2, weight),
// weights normalized to sum to 1. Degree 3..4 is the 6-point rule, degree
// 5..6 the 12-point rule; both have positive weights.
struct BaryPoint {
    double l1, l2, w;
};

const std::vector<BaryPoint>& triangle_rule(int degree) {
    static const std::vector<BaryPoint> deg1 = {{1.0 / 3.0, 1.0 / 3.0, 1.0}};
    static const std::vector<BaryPoint> deg2 = {
        {2.0 / 3.0, 1.0 / 6.0, 1.0 / 3.0},
        {1.0 / 6.0, 2.0 / 3.0, 1.0 / 3.0},
        {1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0},
    };
    static const std::vector<BaryPoint> deg4 = [] {
        const double a1 = 0.091576213509771, w1 = 0.109951743655322;
        const double a2 = 0.445948490915965, w2 = 0.223381589678011;
        std::vector<BaryPoint> r;
        r.push_back({1.0 - 2.0 * a1, a1, w1});
        r.push_back({a1, 1.0 - 2.0 * a1, w1});
        r.push_back({a1, a1, w1});
        r.push_back({1.0 - 2.0 * a2, a2, w2});
        r.push_back({a2, 1.0 - 2.0 * a2, w2});
        r.push_back({a2, a2, w2});
        return r;
    }();
    static const std::vector<BaryPoint> deg6 = [] {
        const double a1 = 0.063089014491502, w1 = 0.050844906370207;
        const double a2 = 0.249286745170910, w2 = 0.116786275726379;
        const double a3 = 0.310352451033785, b3 = 0.053145049844816;
        const double w3 = 0.082851075618374;
        std::vector<BaryPoint> r;
        r.push_back({1.0 - 2.0 * a1, a1, w1});
        r.push_back({a1, 1.0 - 2.0 * a1, w1});
        r.push_back({a1, a1, w1});
        r.push_back({1.0 - 2.0 * a2, a2, w2});
        r.push_back({a2, 1.0 - 2.0 * a2, w2});
        r.push_back({a2, a2, w2});
        const double c3 = 1.0 - a3 - b3;
        r.push_back({a3, b3, w3});
        r.push_back({b3, a3, w3});
        r.push_back({a3, c3, w3});
        r.push_back({c3, a3, w3});
        r.push_back({b3, c3, w3});
        r.push_back({c3, b3, w3});
        return r;
    }();

    switch (degree) {
        case 1: return deg1;
        case 2: return deg2;
        case 3:
        case 4: return deg4;
        case 5:
        case 6: return deg6;
        default: throw std::invalid_argument("triangle_quadrature: unsupported degree");
    }
}

// Gauss-Legendre nodes/weights on [-1, 1].
struct Gauss1D {
    std::vector<double> x, w;
};

const Gauss1D& gauss_rule(int n) {
    static const Gauss1D g1{{0.0}, {2.0}};
    static const Gauss1D g2{{-1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)}, {1.0, 1.0}};
    static const Gauss1D g3{{-std::sqrt(3.0 / 5.0), 0.0, std::sqrt(3.0 / 5.0)},
                            {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0}};
    static const Gauss1D g4{{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                             0.8611363115940526},
                            {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                             0.3478548451374538}};
    static const Gauss1D g5{{-0.9061798459386640, -0.5384693101056831, 0.0,
                             0.5384693101056831, 0.9061798459386640},
                            {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                             0.4786286704993665, 0.2369268850561891}};
    switch (n) {
        case 1: return g1;
        case 2: return g2;
        case 3: return g3;
        case 4: return g4;
        case 5: return g5;
        default: throw std::invalid_argument("interface_quadrature: npoints must be in 1..5");
    }
}

int sign_of(double v) { return v > 0.0 ? 1 : -1; }  // zero counts as positive (snap side)

// Locates the interface crossing on the segment [a, b] by bisection on the
// exact level set, to 1e-13 absolute in space. sa/sb are the (snapped) signs
// at the endpoints and must differ.
Vec2 bisect_edge(const LevelSet& ls, const Vec2& a, const Vec2& b, int sa, int sb) {
    if (sa == sb)
        throw std::runtime_error("cut_element: cannot bracket a crossing on edge");
    double lo = 0.0, hi = 1.0;
    int slo = sa;
    const double len = (b - a).norm();
    for (int it = 0; it < 200 && (hi - lo) * len > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        const Vec2 xm = a + mid * (b - a);
        const int sm = sign_of(ls(xm));
        if (sm == slo)
            lo = mid;
        else
            hi = mid;
    }
    const double t = 0.5 * (lo + hi);
    return a + t * (b - a);
}

void map_rule_to_tri(const std::array<Vec2, 3>& v, int degree, QuadRule& out) {
    const double area = signed_area(v[0], v[1], v[2]);
    for (const auto& bp : triangle_rule(degree)) {
        const double l3 = 1.0 - bp.l1 - bp.l2;
        out.points.push_back({bp.l1 * v[0] + bp.l2 * v[1] + l3 * v[2], bp.w * area});
    }
}

}  // namespace

double snap_vertex_value(double phi_value, double h) {
    const double eps = kSnapRel * h;
    return std::abs(phi_value) < eps ? eps : phi_value;
}

std::vector<ElementClass> classify_elements(const TriMesh& mesh, const LevelSet& ls) {
    std::vector<ElementClass> classes(mesh.cells.size());
    std::vector<double> vertex_phi(mesh.vertices.size());
    for (size_t v = 0; v < mesh.vertices.size(); ++v)
        vertex_phi[v] = snap_vertex_value(ls(mesh.vertices[v]), mesh.h);

    for (size_t k = 0; k < mesh.cells.size(); ++k) {
        const auto& c = mesh.cells[k];
        int neg = 0, pos = 0;
        for (int i = 0; i < 3; ++i)
            (vertex_phi[c[i]] < 0.0 ? neg : pos)++;
        classes[k] = neg == 3   ? ElementClass::Interior1
                     : pos == 3 ? ElementClass::Interior2
                                : ElementClass::Cut;
    }
    return classes;
}

std::optional<CutCell> cut_element(const TriMesh& mesh, int cell, const LevelSet& ls) {
    const auto v = mesh.cell_coords(cell);
    std::array<int, 3> s;
    for (int i = 0; i < 3; ++i)
        s[i] = sign_of(snap_vertex_value(ls(v[i]), mesh.h));

    int n_changes = 0;
    for (int i = 0; i < 3; ++i)
        if (s[i] != s[(i + 1) % 3]) ++n_changes;
    if (n_changes != 2)
        throw std::runtime_error(n_changes > 2
                                     ? "cut_element: more than two sign-changing edges"
                                     : "cut_element: cell is not cut");

    // Lone vertex A whose sign differs from the other two.
    int ia = -1;
    for (int i = 0; i < 3; ++i)
        if (s[i] != s[(i + 1) % 3] && s[i] != s[(i + 2) % 3]) ia = i;
    const int ib = (ia + 1) % 3, ic = (ia + 2) % 3;
    const Vec2 A = v[ia], B = v[ib], C = v[ic];

    const Vec2 c_ab = bisect_edge(ls, A, B, s[ia], s[ib]);
    const Vec2 c_ca = bisect_edge(ls, C, A, s[ic], s[ia]);

    const double cell_area = signed_area(v[0], v[1], v[2]);

    // A-side: triangle (A, c_ab, c_ca); other side: quad (c_ab, B, C, c_ca).
    std::vector<SubTri> tris_a, tris_other;
    const double drop = 1e-14 * cell_area;
    auto push_tri = [drop](std::vector<SubTri>& dst, const Vec2& p, const Vec2& q,
                           const Vec2& r) {
        SubTri t{{p, q, r}};
        if (t.area() > drop) dst.push_back(t);
    };
    push_tri(tris_a, A, c_ab, c_ca);
    push_tri(tris_other, c_ab, B, C);
    push_tri(tris_other, c_ab, C, c_ca);

    auto area_of = [](const std::vector<SubTri>& ts) {
        double a = 0.0;
        for (const auto& t : ts) a += t.area();
        return a;
    };
    const double area_a = area_of(tris_a);
    const double area_other = area_of(tris_other);

    CutCell cut;
    cut.cell = cell;
    const int side_a = s[ia] < 0 ? 0 : 1;  // 0-based side of the lone vertex
    cut.side_area[side_a] = area_a;
    cut.side_area[1 - side_a] = area_other;
    cut.side_tris[side_a] = std::move(tris_a);
    cut.side_tris[1 - side_a] = std::move(tris_other);

    cut.kappa[0] = cut.side_area[0] / cell_area;
    cut.kappa[1] = 1.0 - cut.kappa[0];
    if (std::min(cut.kappa[0], cut.kappa[1]) < 1e-12)
        return std::nullopt;  // degenerate cut; caller reclassifies

    cut.segment = {c_ab, c_ca};
    cut.segment_length = (c_ca - c_ab).norm();

    // Normal to the chord oriented from side 1 into side 2: pick the sign that
    // points toward the side-2 region.
    const Vec2 tangent = (c_ca - c_ab) / cut.segment_length;
    Vec2 nrm(tangent.y(), -tangent.x());
    const Vec2 mid = 0.5 * (c_ab + c_ca);
    Vec2 side2_centroid = Vec2::Zero();
    double wsum = 0.0;
    for (const auto& t : cut.side_tris[1]) {
        const double a = t.area();
        side2_centroid += a * (t.v[0] + t.v[1] + t.v[2]) / 3.0;
        wsum += a;
    }
    side2_centroid /= wsum;
    if (nrm.dot(side2_centroid - mid) < 0.0) nrm = -nrm;
    cut.normal = nrm;
    return cut;
}

QuadRule triangle_quadrature(const std::array<Vec2, 3>& tri, int degree) {
    QuadRule rule;
    rule.degree = degree;
    map_rule_to_tri(tri, degree, rule);
    return rule;
}

QuadRule subcell_quadrature(const CutCell& cut, int side, int degree) {
    if (side != 1 && side != 2)
        throw std::invalid_argument("subcell_quadrature: side must be 1 or 2");
    QuadRule rule;
    rule.degree = degree;
    for (const auto& t : cut.side_tris[side - 1])
        map_rule_to_tri(t.v, degree, rule);
    return rule;
}

InterfaceRule interface_quadrature(const CutCell& cut, int npoints) {
    const Gauss1D& g = gauss_rule(npoints);
    InterfaceRule rule;
    rule.normal = cut.normal;
    rule.kappa = cut.kappa;
    rule.length = cut.segment_length;
    const Vec2 mid = 0.5 * (cut.segment[0] + cut.segment[1]);
    const Vec2 half = 0.5 * (cut.segment[1] - cut.segment[0]);
    for (int i = 0; i < npoints; ++i)
        rule.points.push_back({mid + g.x[i] * half, 0.5 * cut.segment_length * g.w[i]});
    return rule;
}

CutGeometry build_cut_geometry(const TriMesh& mesh, const LevelSet& ls) {
    CutGeometry geo;
    geo.classes = classify_elements(mesh, ls);
    geo.cut_index.assign(mesh.cells.size(), -1);
    for (size_t k = 0; k < mesh.cells.size(); ++k) {
        if (geo.classes[k] != ElementClass::Cut) continue;
        auto cut = cut_element(mesh, static_cast<int>(k), ls);
        if (cut) {
            geo.cut_index[k] = static_cast<int>(geo.cuts.size());
            geo.cuts.push_back(std::move(*cut));
        } else {
            // Degenerate cut: the element lies on one side up to measure zero.
            const double phic = ls(mesh.cell_centroid(static_cast<int>(k)));
            geo.classes[k] = phic < 0.0 ? ElementClass::Interior1 : ElementClass::Interior2;
        }
    }
    return geo;
}

}  // namespace cutopt
