#include "cutopt/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace cutopt {

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
    return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

double TriMesh::cell_area(int cell) const {
    const auto v = cell_coords(cell);
    return signed_area(v[0], v[1], v[2]);
}

Vec2 TriMesh::cell_centroid(int cell) const {
    const auto v = cell_coords(cell);
    return (v[0] + v[1] + v[2]) / 3.0;
}

TriMesh build_uniform_mesh(const Square& domain, int N) {
    if (N < 1)
        throw std::invalid_argument("build_uniform_mesh: N must be >= 1");
    if (!(domain.side > 0.0))
        throw std::invalid_argument("build_uniform_mesh: side length must be positive");

    TriMesh mesh;
    mesh.domain = domain;
    mesh.n = N;

    const int np = N + 1;
    const double dx = domain.side / N;

    mesh.vertices.reserve(static_cast<size_t>(np) * np);
    mesh.boundary_vertex.reserve(static_cast<size_t>(np) * np);
    for (int j = 0; j < np; ++j) {
        for (int i = 0; i < np; ++i) {
            mesh.vertices.emplace_back(domain.lower_left.x() + i * dx,
                                       domain.lower_left.y() + j * dx);
            mesh.boundary_vertex.push_back(i == 0 || i == N || j == 0 || j == N);
        }
    }

    // Two CCW triangles per grid square, split along the lower-left to
    // upper-right diagonal.
    const double hk = std::sqrt(2.0) * dx;
    mesh.cells.reserve(2 * static_cast<size_t>(N) * N);
    mesh.cell_diameter.assign(2 * static_cast<size_t>(N) * N, hk);
    for (int j = 0; j < N; ++j) {
        for (int i = 0; i < N; ++i) {
            const int v00 = j * np + i;
            const int v10 = v00 + 1;
            const int v01 = v00 + np;
            const int v11 = v01 + 1;
            mesh.cells.push_back({v00, v10, v11});
            mesh.cells.push_back({v00, v11, v01});
        }
    }
    mesh.h = hk;
    return mesh;
}

}  // namespace cutopt
