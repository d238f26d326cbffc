#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cutopt/cases.hpp"
#include "cutopt/control.hpp"
#include "cutopt/norms.hpp"

namespace cutopt {

struct StudySettings {
    double c_tilde = 50.0;
    SolveMethod method = SolveMethod::cg;
    double solver_tol = 1e-12;
    double fp_tol = 1e-10;
    int fp_max_iterations = 100;
    double fp_theta = 1.0;
    int error_degree = 4;
};

/// Fully solved problem on one mesh; keeps the discretization objects alive
/// for norm evaluation and export.
struct CaseSolution {
    TriMesh mesh;
    CutGeometry geo;
    DofHandler dofs;
    AssembledSystem sys;
    OptimalTriple opt;
};

CaseSolution solve_case(const ManufacturedCase& mc, int N, const StudySettings& settings);

struct ErrorRow {
    int N = 0;
    double h = 0.0;
    bool solved = false;
    std::string failure;  // nonempty if this row failed
    bool converged = false;
    int iterations = 0;
    double objective = 0.0;
    double y_l2 = 0.0, y_h1 = 0.0, y_triple = 0.0, y_trace = 0.0;
    double p_l2 = 0.0, p_h1 = 0.0, p_triple = 0.0, p_trace = 0.0;
    double u_l2 = 0.0;
};

struct ErrorReport {
    std::string example_id;
    double alpha = 1.0;
    double c_tilde = 50.0;
    std::vector<ErrorRow> rows;
};

/// Experimental order of convergence between two rows of an N-doubling (or
/// general nested) sequence.
double eoc(double err_coarse, double err_fine, int n_coarse, int n_fine);

/// Runs mesh -> geometry -> dofs -> assembly -> optimality loop -> norms for
/// each N. Per-N failures are recorded in the row and do not abort the
/// remaining rows. Requires a case with an exact triple.
ErrorReport run_convergence_study(const ManufacturedCase& mc, const std::vector<int>& Ns,
                                  const StudySettings& settings,
                                  const std::function<void(const ErrorRow&)>& progress = {});

}  // namespace cutopt
