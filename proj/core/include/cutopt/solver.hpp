#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "cutopt/assembly.hpp"

namespace cutopt {

enum class SolveMethod { cg, direct };

struct SolveReport {
    Eigen::VectorXd x;
    double rel_residual = 0.0;
    int iterations = 0;  // 0 for the direct path
    SolveMethod method = SolveMethod::cg;
};

/// Breakdown/indefiniteness is reported distinctly from non-convergence:
/// an indefinite system usually means the Nitsche constant C~ is too small.
struct SolverError : std::runtime_error {
    enum class Kind { indefinite, nonconvergence };
    Kind kind;
    SolverError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

/// Factorize-once solver for the SPD Nitsche systems; the state and adjoint
/// solves of the optimality loop share one instance.
class SpdSolver {
public:
    SpdSolver(const SparseMat& A, SolveMethod method = SolveMethod::cg, double tol = 1e-12);

    SolveReport solve(const Eigen::VectorXd& b) const;

    SolveMethod method() const { return method_; }

private:
    SolveReport solve_cg(const Eigen::VectorXd& b) const;
    SolveReport solve_direct(const Eigen::VectorXd& b) const;
    double backward_scale(const Eigen::VectorXd& b, const Eigen::VectorXd& x) const;

    SparseMat A_;
    SolveMethod method_;
    double tol_;
    double norm_A_ = 0.0;
    Eigen::VectorXd inv_diag_;  // Jacobi preconditioner
    Eigen::SimplicialLDLT<SparseMat> ldlt_;
};

/// One-shot solve of a symmetric positive definite system to a relative
/// residual tolerance in (0, 1e-6].
SolveReport solve_spd(const SparseMat& A, const Eigen::VectorXd& b, double tol = 1e-12,
                      SolveMethod method = SolveMethod::cg);

}  // namespace cutopt
