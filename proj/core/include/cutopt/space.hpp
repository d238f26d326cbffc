#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "cutopt/interface.hpp"
#include "cutopt/mesh.hpp"

namespace cutopt {

/// Doubled-dof P1 map: one dof set per subdomain side, both active on cut
/// elements. Side-i dofs live exactly at vertices of cells that are cut or
/// interior to side i; numbering is side-major, then vertex index.
struct DofHandler {
    int n_dofs = 0;
    std::array<std::vector<int>, 2> vertex_dof;  // [side-1][vertex] -> dof or -1
    std::vector<bool> dirichlet;                 // per dof: vertex on boundary
    std::vector<std::vector<int>> cell_dofs;     // 3 for interior, 6 for cut (side1 then side2)
    std::vector<int> dof_vertex;                 // per dof: owning vertex
    std::vector<int> dof_side;                   // per dof: 1 or 2

    int dof(int vertex, int side) const { return vertex_dof[side - 1][vertex]; }
};

DofHandler build_dof_handler(const TriMesh& mesh, const CutGeometry& geo);

/// P1 hat values (barycentric coordinates) and their constant gradients at a
/// point of a cell. Throws if the point lies outside the cell beyond a 1e-10
/// barycentric tolerance.
struct BasisEval {
    std::array<double, 3> value;
    std::array<Vec2, 3> grad;
};

BasisEval eval_basis(const TriMesh& mesh, int cell, const Vec2& x);

/// Constant P1 gradients of a cell (independent of the evaluation point).
std::array<Vec2, 3> basis_gradients(const TriMesh& mesh, int cell);

/// Evaluation of a discrete field given by a coefficient vector, restricted
/// to one side of a (possibly cut) cell.
class FieldView {
public:
    FieldView(const TriMesh& mesh, const CutGeometry& geo, const DofHandler& dofs,
              const Eigen::VectorXd& coeffs)
        : mesh_(mesh), geo_(geo), dofs_(dofs), coeffs_(coeffs) {}

    double value(int cell, int side, const Vec2& x) const;
    Vec2 gradient(int cell, int side) const;

private:
    const TriMesh& mesh_;
    const CutGeometry& geo_;
    const DofHandler& dofs_;
    const Eigen::VectorXd& coeffs_;
};

/// Nodal interpolation of a two-branch field: every (vertex, side) dof gets
/// the value of that side's branch at the vertex.
Eigen::VectorXd interpolate(const TriMesh& mesh, const DofHandler& dofs, const SideField& f);

}  // namespace cutopt
