#include "cutopt/space.hpp"

#include <stdexcept>

namespace cutopt {

DofHandler build_dof_handler(const TriMesh& mesh, const CutGeometry& geo) {
    DofHandler dh;
    const int nv = static_cast<int>(mesh.vertices.size());
    std::array<std::vector<bool>, 2> needed;
    needed[0].assign(nv, false);
    needed[1].assign(nv, false);

    for (size_t k = 0; k < mesh.cells.size(); ++k) {
        const auto& c = mesh.cells[k];
        if (geo.is_cut(static_cast<int>(k))) {
            for (int i = 0; i < 3; ++i) {
                needed[0][c[i]] = true;
                needed[1][c[i]] = true;
            }
        } else {
            const int s = geo.side_of(static_cast<int>(k)) - 1;
            for (int i = 0; i < 3; ++i) needed[s][c[i]] = true;
        }
    }

    dh.vertex_dof[0].assign(nv, -1);
    dh.vertex_dof[1].assign(nv, -1);
    int next = 0;
    for (int s = 0; s < 2; ++s) {
        for (int v = 0; v < nv; ++v) {
            if (!needed[s][v]) continue;
            dh.vertex_dof[s][v] = next++;
            dh.dof_vertex.push_back(v);
            dh.dof_side.push_back(s + 1);
            dh.dirichlet.push_back(mesh.boundary_vertex[v]);
        }
    }
    dh.n_dofs = next;

    dh.cell_dofs.resize(mesh.cells.size());
    for (size_t k = 0; k < mesh.cells.size(); ++k) {
        const auto& c = mesh.cells[k];
        auto& cd = dh.cell_dofs[k];
        if (geo.is_cut(static_cast<int>(k))) {
            cd.reserve(6);
            for (int s = 0; s < 2; ++s)
                for (int i = 0; i < 3; ++i) cd.push_back(dh.vertex_dof[s][c[i]]);
        } else {
            const int s = geo.side_of(static_cast<int>(k)) - 1;
            cd.reserve(3);
            for (int i = 0; i < 3; ++i) cd.push_back(dh.vertex_dof[s][c[i]]);
        }
    }
    return dh;
}

std::array<Vec2, 3> basis_gradients(const TriMesh& mesh, int cell) {
    const auto v = mesh.cell_coords(cell);
    const double inv2a = 1.0 / (2.0 * signed_area(v[0], v[1], v[2]));
    auto perp = [](const Vec2& e) { return Vec2(-e.y(), e.x()); };
    return {perp(v[2] - v[1]) * inv2a, perp(v[0] - v[2]) * inv2a, perp(v[1] - v[0]) * inv2a};
}

BasisEval eval_basis(const TriMesh& mesh, int cell, const Vec2& x) {
    const auto v = mesh.cell_coords(cell);
    const double area = signed_area(v[0], v[1], v[2]);
    BasisEval be;
    be.value[0] = signed_area(x, v[1], v[2]) / area;
    be.value[1] = signed_area(v[0], x, v[2]) / area;
    be.value[2] = signed_area(v[0], v[1], x) / area;
    for (double l : be.value)
        if (l < -1e-10 || l > 1.0 + 1e-10)
            throw std::invalid_argument("eval_basis: point outside cell");
    be.grad = basis_gradients(mesh, cell);
    return be;
}

double FieldView::value(int cell, int side, const Vec2& x) const {
    const auto be = eval_basis(mesh_, cell, x);
    const auto& c = mesh_.cells[cell];
    double val = 0.0;
    for (int i = 0; i < 3; ++i) {
        const int d = dofs_.dof(c[i], side);
        if (d < 0) throw std::logic_error("FieldView: side has no dofs on this cell");
        val += coeffs_[d] * be.value[i];
    }
    return val;
}

Vec2 FieldView::gradient(int cell, int side) const {
    const auto grads = basis_gradients(mesh_, cell);
    const auto& c = mesh_.cells[cell];
    Vec2 g = Vec2::Zero();
    for (int i = 0; i < 3; ++i) {
        const int d = dofs_.dof(c[i], side);
        if (d < 0) throw std::logic_error("FieldView: side has no dofs on this cell");
        g += coeffs_[d] * grads[i];
    }
    return g;
}

Eigen::VectorXd interpolate(const TriMesh& mesh, const DofHandler& dofs, const SideField& f) {
    Eigen::VectorXd u(dofs.n_dofs);
    for (int d = 0; d < dofs.n_dofs; ++d)
        u[d] = f(mesh.vertices[dofs.dof_vertex[d]], dofs.dof_side[d]);
    return u;
}

}  // namespace cutopt
