#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "cutopt/mesh.hpp"

using namespace cutopt;

TEST_CASE("smallest mesh: N=1 on the unit square") {
    const TriMesh m = build_uniform_mesh({Vec2(0, 0), 1.0}, 1);
    CHECK(m.cells.size() == 2);
    CHECK(m.vertices.size() == 4);
    for (bool b : m.boundary_vertex) CHECK(b);
}

TEST_CASE("N=16 counts and mesh size") {
    const TriMesh m = build_uniform_mesh({Vec2(0, 0), 1.0}, 16);
    CHECK(m.cells.size() == 512);
    CHECK(m.vertices.size() == 289);
    CHECK(m.h == doctest::Approx(std::sqrt(2.0) / 16.0).epsilon(1e-14));
    for (double hk : m.cell_diameter) CHECK(hk == doctest::Approx(m.h).epsilon(1e-14));
}

TEST_CASE("invalid arguments rejected") {
    CHECK_THROWS_AS(build_uniform_mesh({Vec2(0, 0), 1.0}, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_uniform_mesh({Vec2(0, 0), 0.0}, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_uniform_mesh({Vec2(0, 0), -2.0}, 4), std::invalid_argument);
}

TEST_CASE("cells are CCW and tile the domain") {
    const TriMesh m = build_uniform_mesh({Vec2(-1, -1), 2.0}, 7);
    double total = 0.0;
    for (size_t k = 0; k < m.cells.size(); ++k) {
        const double a = m.cell_area(static_cast<int>(k));
        CHECK(a > 0.0);
        total += a;
    }
    CHECK(total == doctest::Approx(m.domain.area()).epsilon(1e-12));
}

TEST_CASE("conformity: interior edges shared by 2 cells, boundary edges by 1") {
    const TriMesh m = build_uniform_mesh({Vec2(0, 0), 1.0}, 5);
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& c : m.cells) {
        for (int i = 0; i < 3; ++i) {
            int a = c[i], b = c[(i + 1) % 3];
            if (a > b) std::swap(a, b);
            edge_count[{a, b}]++;
        }
    }
    for (const auto& [edge, count] : edge_count) {
        const bool boundary_edge =
            m.boundary_vertex[edge.first] && m.boundary_vertex[edge.second];
        if (count == 1)
            CHECK(boundary_edge);
        else
            CHECK(count == 2);
    }
}

TEST_CASE("boundary flags mark exactly the outer ring") {
    const TriMesh m = build_uniform_mesh({Vec2(2, 3), 4.0}, 6);
    int flagged = 0;
    for (size_t v = 0; v < m.vertices.size(); ++v) {
        const Vec2& x = m.vertices[v];
        const bool on_bdry = x.x() == 2.0 || x.x() == 6.0 || x.y() == 3.0 || x.y() == 7.0;
        CHECK(m.boundary_vertex[v] == on_bdry);
        flagged += m.boundary_vertex[v];
    }
    CHECK(flagged == 4 * 6);
}
