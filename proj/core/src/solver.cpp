#include "cutopt/solver.hpp"

#include <cmath>
#include <limits>

namespace cutopt {

namespace {

double inf_norm(const SparseMat& A) {
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(A.rows());
    for (int k = 0; k < A.outerSize(); ++k)
        for (SparseMat::InnerIterator it(A, k); it; ++it)
            row_sums[it.row()] += std::abs(it.value());
    return row_sums.maxCoeff();
}

}  // namespace

SpdSolver::SpdSolver(const SparseMat& A, SolveMethod method, double tol)
    : A_(A), method_(method), tol_(tol) {
    if (!(tol > 0.0) || tol > 1e-6)
        throw std::invalid_argument("SpdSolver: tol must lie in (0, 1e-6]");
    if (A.rows() != A.cols())
        throw std::invalid_argument("SpdSolver: matrix must be square");
    norm_A_ = inf_norm(A_);

    if (method_ == SolveMethod::cg) {
        inv_diag_ = A_.diagonal();
        for (int i = 0; i < inv_diag_.size(); ++i) {
            if (!(inv_diag_[i] > 0.0))
                throw SolverError(SolverError::Kind::indefinite,
                                  "solve_spd: non-positive diagonal entry");
            inv_diag_[i] = 1.0 / inv_diag_[i];
        }
    } else {
        ldlt_.compute(A_);
        if (ldlt_.info() != Eigen::Success)
            throw SolverError(SolverError::Kind::indefinite,
                              "solve_spd: LDL^T factorization failed");
        if ((ldlt_.vectorD().array() <= 0.0).any())
            throw SolverError(SolverError::Kind::indefinite,
                              "solve_spd: matrix is not positive definite");
    }
}

SolveReport SpdSolver::solve(const Eigen::VectorXd& b) const {
    if (b.size() != A_.rows())
        throw std::invalid_argument("solve_spd: dimension mismatch");
    if (!b.allFinite())
        throw std::invalid_argument("solve_spd: right-hand side has non-finite entries");
    return method_ == SolveMethod::cg ? solve_cg(b) : solve_direct(b);
}

// The primary target is ||b - A x|| <= tol ||b||. When the Nitsche penalty
// makes ||A|| ||x|| dwarf ||b||, that target sits below the double-precision
// floor; a stagnated iteration is then accepted at the normwise backward
// error ||b - A x|| <= tol (||b|| + ||A||_inf ||x||).
double SpdSolver::backward_scale(const Eigen::VectorXd& b, const Eigen::VectorXd& x) const {
    return b.norm() + norm_A_ * x.norm();
}

SolveReport SpdSolver::solve_cg(const Eigen::VectorXd& b) const {
    SolveReport rep;
    rep.method = SolveMethod::cg;
    const double nb = b.norm();
    if (nb == 0.0) {
        rep.x = Eigen::VectorXd::Zero(b.size());
        return rep;
    }

    Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
    const long max_it = 20 * A_.rows();
    long it = 0;
    double res = nb;
    double prev_res = std::numeric_limits<double>::infinity();

    // Preconditioned CG with true-residual restarts. Each sweep targets the
    // strict tolerance; stagnation between sweeps means the floor is reached.
    Eigen::VectorXd Ap(b.size());
    while (true) {
        Eigen::VectorXd r = b - A_ * x;
        res = r.norm();
        if (res <= tol_ * nb) break;
        if (res >= 0.5 * prev_res || it >= max_it) {
            if (res <= tol_ * backward_scale(b, x)) break;
            throw SolverError(SolverError::Kind::nonconvergence,
                              "solve_spd: CG did not reach tolerance in 20n iterations");
        }
        prev_res = res;

        Eigen::VectorXd z = inv_diag_.cwiseProduct(r);
        Eigen::VectorXd p = z;
        double rz = r.dot(z);
        for (; it < max_it; ++it) {
            Ap.noalias() = A_ * p;
            const double pAp = p.dot(Ap);
            if (!(pAp > 0.0))
                throw SolverError(SolverError::Kind::indefinite,
                                  "solve_spd: p^T A p <= 0 (matrix not SPD; increase C~)");
            const double alpha = rz / pAp;
            x += alpha * p;
            r -= alpha * Ap;
            if (r.norm() <= 0.5 * tol_ * nb) {
                ++it;
                break;
            }
            z = inv_diag_.cwiseProduct(r);
            const double rz_new = r.dot(z);
            p = z + (rz_new / rz) * p;
            rz = rz_new;
        }
    }
    rep.rel_residual = res / nb;
    rep.x = std::move(x);
    rep.iterations = static_cast<int>(it);
    return rep;
}

SolveReport SpdSolver::solve_direct(const Eigen::VectorXd& b) const {
    SolveReport rep;
    rep.method = SolveMethod::direct;
    const double nb = b.norm();
    if (nb == 0.0) {
        rep.x = Eigen::VectorXd::Zero(b.size());
        return rep;
    }
    Eigen::VectorXd x = ldlt_.solve(b);
    // Iterative refinement down to the strict tolerance or its roundoff floor.
    Eigen::VectorXd r = b - A_ * x;
    double res = r.norm();
    for (int pass = 0; pass < 6 && res > tol_ * nb; ++pass) {
        const Eigen::VectorXd x_new = x + ldlt_.solve(r);
        const Eigen::VectorXd r_new = b - A_ * x_new;
        if (r_new.norm() >= 0.9 * res) break;  // stagnated at the floor
        x = x_new;
        r = r_new;
        res = r.norm();
    }
    if (res > tol_ * nb && res > tol_ * backward_scale(b, x))
        throw SolverError(SolverError::Kind::nonconvergence,
                          "solve_spd: direct solve with refinement missed tolerance");
    rep.rel_residual = res / nb;
    rep.x = std::move(x);
    return rep;
}

SolveReport solve_spd(const SparseMat& A, const Eigen::VectorXd& b, double tol,
                      SolveMethod method) {
    return SpdSolver(A, method, tol).solve(b);
}

}  // namespace cutopt
