#include "cutopt/study.hpp"

#include <cmath>
#include <stdexcept>

namespace cutopt {

CaseSolution solve_case(const ManufacturedCase& mc, int N, const StudySettings& settings) {
    CaseSolution cs;
    cs.mesh = build_uniform_mesh(mc.domain, N);
    cs.geo = build_cut_geometry(cs.mesh, mc.level_set);
    cs.dofs = build_dof_handler(cs.mesh, cs.geo);
    cs.sys = assemble_stiffness(cs.mesh, cs.geo, cs.dofs, mc.a1, mc.a2, settings.c_tilde);

    ControlProblem prob{cs.mesh, cs.geo,  cs.dofs,     cs.sys,
                        mc.f,    mc.g,    mc.y_d,      dirichlet_values(cs.mesh, cs.dofs, mc.y_bc),
                        mc.u_lower, mc.u_upper, mc.alpha};
    FixedPointOptions opts;
    opts.tol = settings.fp_tol;
    opts.max_iterations = settings.fp_max_iterations;
    opts.theta = settings.fp_theta;
    opts.method = settings.method;
    opts.solver_tol = settings.solver_tol;

    cs.opt = fixed_point_solve(prob, Eigen::VectorXd(), opts);
    return cs;
}

double eoc(double err_coarse, double err_fine, int n_coarse, int n_fine) {
    return std::log(err_coarse / err_fine) / std::log(double(n_fine) / double(n_coarse));
}

ErrorReport run_convergence_study(const ManufacturedCase& mc, const std::vector<int>& Ns,
                                  const StudySettings& settings,
                                  const std::function<void(const ErrorRow&)>& progress) {
    if (!mc.has_exact)
        throw std::invalid_argument("run_convergence_study: case has no exact triple");
    if (Ns.empty())
        throw std::invalid_argument("run_convergence_study: empty N list");
    for (size_t i = 1; i < Ns.size(); ++i)
        if (Ns[i] <= Ns[i - 1] || Ns[i] % Ns[i - 1] != 0)
            throw std::invalid_argument(
                "run_convergence_study: Ns must be strictly increasing and nested");

    ErrorReport report;
    report.example_id = mc.id;
    report.alpha = mc.alpha;
    report.c_tilde = settings.c_tilde;

    for (int N : Ns) {
        ErrorRow row;
        row.N = N;
        try {
            const CaseSolution cs = solve_case(mc, N, settings);
            row.h = cs.mesh.h;
            row.converged = cs.opt.converged;
            row.iterations = cs.opt.iterations;
            row.objective = cs.opt.objective;

            const int deg = settings.error_degree;
            row.y_l2 = error_l2(cs.mesh, cs.geo, cs.dofs, cs.opt.y, mc.y_exact, deg);
            row.y_h1 = error_broken_h1(cs.mesh, cs.geo, cs.dofs, cs.opt.y, mc.grad_y_exact, deg);
            row.y_triple = error_triple_norm(cs.mesh, cs.geo, cs.dofs, cs.opt.y, mc.y_exact,
                                             mc.grad_y_exact, deg);
            row.y_trace = error_interface_trace(cs.mesh, cs.geo, cs.dofs, cs.opt.y, mc.y_exact);
            row.p_l2 = error_l2(cs.mesh, cs.geo, cs.dofs, cs.opt.p, mc.p_exact, deg);
            row.p_h1 = error_broken_h1(cs.mesh, cs.geo, cs.dofs, cs.opt.p, mc.grad_p_exact, deg);
            row.p_triple = error_triple_norm(cs.mesh, cs.geo, cs.dofs, cs.opt.p, mc.p_exact,
                                             mc.grad_p_exact, deg);
            row.p_trace = error_interface_trace(cs.mesh, cs.geo, cs.dofs, cs.opt.p, mc.p_exact);
            row.u_l2 = error_control(cs.opt.control.points, cs.opt.control.u, mc.u_exact);
            row.solved = true;
        } catch (const std::exception& e) {
            row.failure = e.what();
        }
        if (progress) progress(row);
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace cutopt
