#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace cutopt {

using Vec2 = Eigen::Vector2d;

/// Axis-aligned square domain given by its lower-left corner and side length.
struct Square {
    Vec2 lower_left{0.0, 0.0};
    double side = 1.0;

    double area() const { return side * side; }
};

/// Uniform conforming triangulation of a square, independent of any interface.
///
/// Each grid square is split along its lower-left to upper-right diagonal,
/// so an N x N grid yields 2*N^2 triangles and (N+1)^2 vertices, all stored
/// counter-clockwise.
struct TriMesh {
    Square domain;
    int n = 0;  // grid resolution N

    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> cells;
    std::vector<bool> boundary_vertex;
    std::vector<double> cell_diameter;  // h_K
    double h = 0.0;                     // max over h_K

    std::array<Vec2, 3> cell_coords(int cell) const {
        const auto& c = cells[cell];
        return {vertices[c[0]], vertices[c[1]], vertices[c[2]]};
    }

    double cell_area(int cell) const;
    Vec2 cell_centroid(int cell) const;
};

/// Signed area of triangle (a,b,c); positive for counter-clockwise order.
double signed_area(const Vec2& a, const Vec2& b, const Vec2& c);

/// Builds the uniform mesh. Throws std::invalid_argument for N < 1 or a
/// non-positive side length.
TriMesh build_uniform_mesh(const Square& domain, int N);

}  // namespace cutopt
