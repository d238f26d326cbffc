#pragma once

#include <array>
#include <random>

#include "cutopt/interface.hpp"
#include "cutopt/mesh.hpp"

namespace cutopt::testing {

/// One free-standing triangle as a mesh; boundary flags optional.
inline TriMesh single_triangle(const std::array<Vec2, 3>& v, bool boundary = false) {
    TriMesh m;
    m.n = 1;
    m.domain = {Vec2(0.0, 0.0), 1.0};
    m.vertices = {v[0], v[1], v[2]};
    m.cells = {{0, 1, 2}};
    m.boundary_vertex = {boundary, boundary, boundary};
    const double d = std::max({(v[1] - v[0]).norm(), (v[2] - v[1]).norm(), (v[0] - v[2]).norm()});
    m.cell_diameter = {d};
    m.h = d;
    return m;
}

/// Random non-degenerate triangle plus a straight level set that genuinely
/// cuts it (mixed snapped vertex signs).
struct RandomCut {
    TriMesh mesh;
    LevelSet ls;
};

inline RandomCut random_cut_triangle(std::mt19937& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (;;) {
        std::array<Vec2, 3> v;
        for (auto& p : v) p = Vec2(unif(rng), unif(rng));
        if (signed_area(v[0], v[1], v[2]) < 0.0) std::swap(v[1], v[2]);
        if (signed_area(v[0], v[1], v[2]) < 0.02) continue;

        // Line through a random interior point with a random direction.
        const double l1 = unif(rng), l2 = (1.0 - l1) * unif(rng);
        const Vec2 x0 = l1 * v[0] + l2 * v[1] + (1.0 - l1 - l2) * v[2];
        const double ang = 2.0 * 3.14159265358979323846 * unif(rng);
        const Vec2 n(std::cos(ang), std::sin(ang));

        RandomCut rc;
        rc.mesh = single_triangle(v);
        rc.ls.phi = [x0, n](const Vec2& x) { return n.dot(x - x0); };
        const auto classes = classify_elements(rc.mesh, rc.ls);
        if (classes[0] != ElementClass::Cut) continue;
        if (!cut_element(rc.mesh, 0, rc.ls)) continue;  // skip degenerate slivers
        return rc;
    }
}

}  // namespace cutopt::testing
