#pragma once

#include <string>
#include <vector>

#include "cutopt/study.hpp"

namespace cutopt {

/// Run-level configuration shared by the CLI subcommands. Flags parsed by
/// the tool are written into this struct and validated once.
struct RunConfig {
    std::string example = "5.1";
    int N = 64;                 // single-run resolution
    std::vector<int> Ns;        // convergence-study resolutions
    double alpha = 1.0;
    double c_tilde = 50.0;
    double solver_tol = 1e-12;
    std::string solver = "cg";  // "cg" or "direct"
    double fp_tol = 1e-10;
    int fp_maxite = 100;
    double fp_theta = 1.0;
    std::string outdir = ".";
    bool export_vtk = false;
    bool allow_nonconverged = false;
    bool pretty = false;
};

/// Validates ranges and sortedness; throws std::invalid_argument naming the
/// offending key. Checks that the output directory is writable.
void validate_config(const RunConfig& cfg);

StudySettings study_settings(const RunConfig& cfg);

/// Writes the convergence table as CSV: header, one row per N, errors in
/// scientific notation with 4 significant digits, EOC columns blank on the
/// first row. Byte-identical output for identical reports.
void write_convergence_csv(const ErrorReport& report, const std::string& path);

/// Aligned human-readable rendering of the same table.
std::string format_report_pretty(const ErrorReport& report);

/// Legacy ASCII VTK export of the state and co-state. Cut cells are emitted
/// once per side, tessellated by that side's sub-triangles and carrying that
/// side's dof values, so the interface discontinuity renders sharply.
void export_vtk(const TriMesh& mesh, const CutGeometry& geo, const DofHandler& dofs,
                const Eigen::VectorXd& y, const Eigen::VectorXd& p, const std::string& path);

}  // namespace cutopt
