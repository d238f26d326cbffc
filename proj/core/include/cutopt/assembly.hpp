#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "cutopt/interface.hpp"
#include "cutopt/mesh.hpp"
#include "cutopt/space.hpp"

namespace cutopt {

using SparseMat = Eigen::SparseMatrix<double>;

/// Number of Gauss points used on every interface chord. The control is
/// represented by its values at exactly these points, so the count is part
/// of the discretization contract.
inline constexpr int kInterfaceGauss = 2;

/// Ordered interface quadrature points, fixed by (cut-cell index, Gauss
/// index). Control vectors and conjugate traces use this ordering.
struct InterfacePoints {
    std::vector<Vec2> x;
    std::vector<double> w;    // chord quadrature weight at the point
    std::vector<int> cut;     // owning index into CutGeometry::cuts

    int size() const { return static_cast<int>(x.size()); }
};

InterfacePoints interface_points(const CutGeometry& geo);

/// Nitsche system for the bilinear form
///   a_h(y,w) = sum_i (a grad y, grad w)_{Omega_i}
///              - ([y],{a grad_n w})_Gamma - ({a grad_n y},[w])_Gamma
///              + lambda ([y],[w])_Gamma,
/// with kappa-weighted averages and lambda|_K = C~ * max(a1,a2) / h_K.
///
/// Dirichlet dofs are eliminated symmetrically during assembly: A keeps a
/// unit diagonal on constrained dofs, and the free-row/constrained-column
/// couplings are stored in bc_cols so nonzero boundary values can be lifted
/// into any right-hand side.
struct AssembledSystem {
    SparseMat A;
    SparseMat bc_cols;
    std::vector<double> lambda;  // penalty per cut cell, parallel to geo.cuts
    int n = 0;
};

AssembledSystem assemble_stiffness(const TriMesh& mesh, const CutGeometry& geo,
                                   const DofHandler& dofs, double a1, double a2,
                                   double c_tilde);

/// b = (f, w)_Omega + (g + u, kappa2 w_1 + kappa1 w_2)_Gamma. The control u
/// must be given at exactly the points of interface_points(geo), in order.
Eigen::VectorXd assemble_state_rhs(const TriMesh& mesh, const CutGeometry& geo,
                                   const DofHandler& dofs, const SideField& f,
                                   const ScalarField& g, const Eigen::VectorXd& u);

/// b = (y_h - y_d, w)_Omega with side-respecting quadrature on cut cells.
Eigen::VectorXd assemble_adjoint_rhs(const TriMesh& mesh, const CutGeometry& geo,
                                     const DofHandler& dofs, const Eigen::VectorXd& y,
                                     const SideField& y_d);

/// Applies Dirichlet data to a raw right-hand side: subtracts the lifted
/// coupling for free rows and pins constrained rows to their values.
Eigen::VectorXd apply_dirichlet(const AssembledSystem& sys, const DofHandler& dofs,
                                Eigen::VectorXd b, const Eigen::VectorXd& bc_values);

/// Boundary-value vector for a two-branch field: zero on free dofs, nodal
/// values of the matching branch on Dirichlet dofs.
Eigen::VectorXd dirichlet_values(const TriMesh& mesh, const DofHandler& dofs,
                                 const SideField& values);

}  // namespace cutopt
