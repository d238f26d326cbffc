#include "cutopt/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cutopt {

ControlState make_control_state(const CutGeometry& geo, const ScalarField& lower,
                                const ScalarField& upper, double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("make_control_state: alpha must be positive");
    ControlState cs;
    cs.points = interface_points(geo);
    cs.alpha = alpha;
    const int n = cs.points.size();
    cs.u = Eigen::VectorXd::Zero(n);
    cs.lower.resize(n);
    cs.upper.resize(n);
    for (int i = 0; i < n; ++i) {
        cs.lower[i] = lower(cs.points.x[i]);
        cs.upper[i] = upper(cs.points.x[i]);
    }
    return cs;
}

Eigen::VectorXd conjugate_trace(const TriMesh& mesh, const CutGeometry& geo,
                                const DofHandler& dofs, const InterfacePoints& pts,
                                const Eigen::VectorXd& field) {
    FieldView view(mesh, geo, dofs, field);
    Eigen::VectorXd tr(pts.size());
    for (int i = 0; i < pts.size(); ++i) {
        const CutCell& cut = geo.cuts[pts.cut[i]];
        tr[i] = cut.kappa[1] * view.value(cut.cell, 1, pts.x[i]) +
                cut.kappa[0] * view.value(cut.cell, 2, pts.x[i]);
    }
    return tr;
}

Eigen::VectorXd project_control(const Eigen::VectorXd& trace, const ControlState& cs) {
    const int n = cs.points.size();
    if (trace.size() != n)
        throw std::invalid_argument("project_control: trace size mismatch");
    Eigen::VectorXd u(n);
    for (int i = 0; i < n; ++i) {
        if (cs.lower[i] > cs.upper[i])
            throw std::invalid_argument("project_control: lower bound exceeds upper bound");
        u[i] = std::clamp(-trace[i] / cs.alpha, cs.lower[i], cs.upper[i]);
    }
    return u;
}

OptimalTriple fixed_point_solve(const ControlProblem& prob, const Eigen::VectorXd& u0,
                                const FixedPointOptions& opts) {
    if (!(opts.tol > 0.0))
        throw std::invalid_argument("fixed_point_solve: tol must be positive");
    if (opts.max_iterations < 1)
        throw std::invalid_argument("fixed_point_solve: MaxIte must be >= 1");
    if (!(opts.theta > 0.0) || opts.theta > 1.0)
        throw std::invalid_argument("fixed_point_solve: theta must lie in (0, 1]");

    OptimalTriple out;
    out.control = make_control_state(prob.geo, prob.u_lower, prob.u_upper, prob.alpha);
    const int n = out.control.points.size();
    if (u0.size() != 0 && u0.size() != n)
        throw std::invalid_argument("fixed_point_solve: u0 size mismatch");

    // Start from the projected initial guess so every iterate is feasible.
    Eigen::VectorXd u = (u0.size() == n) ? u0 : Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
        u[i] = std::clamp(u[i], out.control.lower[i], out.control.upper[i]);

    const SpdSolver solver(prob.sys.A, opts.method, opts.solver_tol);
    const Eigen::VectorXd p_bc = Eigen::VectorXd::Zero(prob.dofs.n_dofs);

    for (int it = 1; it <= opts.max_iterations; ++it) {
        Eigen::VectorXd by = assemble_state_rhs(prob.mesh, prob.geo, prob.dofs, prob.f,
                                                prob.g, u);
        by = apply_dirichlet(prob.sys, prob.dofs, std::move(by), prob.y_bc);
        out.y = solver.solve(by).x;

        Eigen::VectorXd bp = assemble_adjoint_rhs(prob.mesh, prob.geo, prob.dofs, out.y,
                                                  prob.y_d);
        bp = apply_dirichlet(prob.sys, prob.dofs, std::move(bp), p_bc);
        out.p = solver.solve(bp).x;

        const Eigen::VectorXd tr =
            conjugate_trace(prob.mesh, prob.geo, prob.dofs, out.control.points, out.p);
        Eigen::VectorXd u_next =
            (1.0 - opts.theta) * u + opts.theta * project_control(tr, out.control);

        out.final_update = n > 0 ? (u_next - u).lpNorm<Eigen::Infinity>() : 0.0;
        u = std::move(u_next);
        out.iterations = it;
        if (out.final_update < opts.tol) {
            out.converged = true;
            break;
        }
    }

    out.control.u = u;
    out.objective = objective_value(prob.mesh, prob.geo, prob.dofs, out.y, prob.y_d,
                                    out.control.points, u, prob.alpha);
    return out;
}

double objective_value(const TriMesh& mesh, const CutGeometry& geo, const DofHandler& dofs,
                       const Eigen::VectorXd& y, const SideField& y_d,
                       const InterfacePoints& pts, const Eigen::VectorXd& u, double alpha) {
    double tracking = 0.0;
    FieldView view(mesh, geo, dofs, y);
    for (size_t k = 0; k < mesh.cells.size(); ++k) {
        const int cell = static_cast<int>(k);
        auto accumulate = [&](const QuadRule& rule, int side) {
            for (const auto& qp : rule.points) {
                const double d = view.value(cell, side, qp.x) - y_d(qp.x, side);
                tracking += qp.w * d * d;
            }
        };
        if (!geo.is_cut(cell)) {
            accumulate(triangle_quadrature(mesh.cell_coords(cell), 4), geo.side_of(cell));
        } else {
            const CutCell& cut = geo.cuts[geo.cut_index[cell]];
            accumulate(subcell_quadrature(cut, 1, 4), 1);
            accumulate(subcell_quadrature(cut, 2, 4), 2);
        }
    }
    double u_norm2 = 0.0;
    for (int i = 0; i < pts.size(); ++i) u_norm2 += pts.w[i] * u[i] * u[i];
    return 0.5 * tracking + 0.5 * alpha * u_norm2;
}

}  // namespace cutopt
