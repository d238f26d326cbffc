#pragma once

#include <Eigen/Dense>

#include "cutopt/assembly.hpp"
#include "cutopt/space.hpp"

namespace cutopt {

/// Error norms between a discrete field and a two-branch exact field. Volume
/// integrals use side-respecting quadrature of the given degree (default 4,
/// above the assembly degree, so measured errors are not quadrature-limited);
/// interface terms use the fixed chord Gauss rule.

double error_l2(const TriMesh& mesh, const CutGeometry& geo, const DofHandler& dofs,
                const Eigen::VectorXd& coeffs, const SideField& exact, int degree = 4);

double error_broken_h1(const TriMesh& mesh, const CutGeometry& geo, const DofHandler& dofs,
                       const Eigen::VectorXd& coeffs, const SideVecField& exact_grad,
                       int degree = 4);

/// Triple norm: broken H1 seminorm plus h_K^{-1}-weighted interface jumps and
/// h_K-weighted kappa-averaged normal derivatives of the error.
double error_triple_norm(const TriMesh& mesh, const CutGeometry& geo, const DofHandler& dofs,
                         const Eigen::VectorXd& coeffs, const SideField& exact,
                         const SideVecField& exact_grad, int degree = 4);

/// L2(Gamma) distance between the exact trace and the conjugate trace
/// kappa2 v_1 + kappa1 v_2 of the discrete field.
double error_interface_trace(const TriMesh& mesh, const CutGeometry& geo,
                             const DofHandler& dofs, const Eigen::VectorXd& coeffs,
                             const SideField& exact);

/// L2(Gamma) distance between control values at the interface points and an
/// exact control trace.
double error_control(const InterfacePoints& pts, const Eigen::VectorXd& u,
                     const ScalarField& u_exact);

}  // namespace cutopt
