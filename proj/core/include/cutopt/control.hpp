#pragma once

#include <functional>

#include <Eigen/Dense>

#include "cutopt/assembly.hpp"
#include "cutopt/solver.hpp"

namespace cutopt {

/// The control in the variational discretization is represented only by its
/// values at the interface quadrature points; the box projection acts on
/// those values pointwise.
struct ControlState {
    InterfacePoints points;
    Eigen::VectorXd u;
    Eigen::VectorXd lower, upper;  // bounds evaluated at the points
    double alpha = 1.0;
};

ControlState make_control_state(const CutGeometry& geo, const ScalarField& lower,
                                const ScalarField& upper, double alpha);

/// kappa2 * v_1 + kappa1 * v_2 at each interface quadrature point (the
/// conjugate weighting: side-1 trace carries kappa2).
Eigen::VectorXd conjugate_trace(const TriMesh& mesh, const CutGeometry& geo,
                                const DofHandler& dofs, const InterfacePoints& pts,
                                const Eigen::VectorXd& field);

/// u = clamp(-trace / alpha, lower, upper), pointwise and idempotent.
/// Throws if the bounds cross at any point.
Eigen::VectorXd project_control(const Eigen::VectorXd& trace, const ControlState& cs);

struct FixedPointOptions {
    double tol = 1e-10;        // max-over-points update tolerance
    int max_iterations = 100;
    double theta = 1.0;        // damping; the undamped loop has theta = 1
    SolveMethod method = SolveMethod::cg;
    double solver_tol = 1e-12;
};

struct OptimalTriple {
    Eigen::VectorXd y, p;
    ControlState control;
    int iterations = 0;
    double final_update = 0.0;
    double objective = 0.0;
    bool converged = false;
};

/// Everything the optimality loop needs besides the control itself. The
/// stiffness matrix is assembled once and shared by the state and adjoint
/// solves.
struct ControlProblem {
    const TriMesh& mesh;
    const CutGeometry& geo;
    const DofHandler& dofs;
    const AssembledSystem& sys;
    SideField f;
    ScalarField g;
    SideField y_d;
    Eigen::VectorXd y_bc;  // Dirichlet values for the state (zero vector if homogeneous)
    ScalarField u_lower, u_upper;
    double alpha = 1.0;
};

/// Projected fixed-point iteration: state solve, adjoint solve, damped
/// clamped update of the control, until the max-norm update drops below tol
/// or the iteration budget runs out. Non-convergence is reported through the
/// flag, not an error.
OptimalTriple fixed_point_solve(const ControlProblem& prob, const Eigen::VectorXd& u0,
                                const FixedPointOptions& opts = {});

/// J_h(y, u) = 1/2 ||y - y_d||^2_Omega + alpha/2 ||u||^2_Gamma.
double objective_value(const TriMesh& mesh, const CutGeometry& geo, const DofHandler& dofs,
                       const Eigen::VectorXd& y, const SideField& y_d,
                       const InterfacePoints& pts, const Eigen::VectorXd& u, double alpha);

}  // namespace cutopt
