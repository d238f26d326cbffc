#include "cutopt/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cutopt {

InterfacePoints interface_points(const CutGeometry& geo) {
    InterfacePoints pts;
    for (size_t ci = 0; ci < geo.cuts.size(); ++ci) {
        const auto rule = interface_quadrature(geo.cuts[ci], kInterfaceGauss);
        for (const auto& qp : rule.points) {
            pts.x.push_back(qp.x);
            pts.w.push_back(qp.w);
            pts.cut.push_back(static_cast<int>(ci));
        }
    }
    return pts;
}

AssembledSystem assemble_stiffness(const TriMesh& mesh, const CutGeometry& geo,
                                   const DofHandler& dofs, double a1, double a2,
                                   double c_tilde) {
    if (!(a1 > 0.0) || !(a2 > 0.0))
        throw std::invalid_argument("assemble_stiffness: coefficients must be positive");
    if (!(c_tilde > 0.0))
        throw std::invalid_argument("assemble_stiffness: C~ must be positive");

    AssembledSystem sys;
    sys.n = dofs.n_dofs;
    sys.lambda.resize(geo.cuts.size());

    std::vector<Eigen::Triplet<double>> trip, trip_bc;
    const double a_of[2] = {a1, a2};

    Eigen::MatrixXd local;
    for (size_t k = 0; k < mesh.cells.size(); ++k) {
        const int cell = static_cast<int>(k);
        const auto grads = basis_gradients(mesh, cell);
        const auto& cd = dofs.cell_dofs[k];

        if (!geo.is_cut(cell)) {
            const double a = a_of[geo.side_of(cell) - 1];
            const double area = mesh.cell_area(cell);
            local.setZero(3, 3);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    local(i, j) = a * grads[i].dot(grads[j]) * area;
        } else {
            const CutCell& cut = geo.cuts[geo.cut_index[cell]];
            local.setZero(6, 6);

            // Volume terms: gradients are constant per side, so the side area
            // integrates them exactly.
            for (int s = 0; s < 2; ++s) {
                const double a = a_of[s];
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        local(3 * s + i, 3 * s + j) = a * grads[i].dot(grads[j]) * cut.side_area[s];
            }

            // Interface terms: jump [v] = v1 - v2, average {a grad_n v} with
            // kappa weights, plus the penalty.
            const double h_k = mesh.cell_diameter[cell];
            const double lambda = c_tilde * std::max(a1, a2) / h_k;
            sys.lambda[geo.cut_index[cell]] = lambda;

            const auto rule = interface_quadrature(cut, kInterfaceGauss);
            std::array<double, 6> jump, flux;
            for (int i = 0; i < 3; ++i) {
                const double gn = grads[i].dot(cut.normal);
                flux[i] = cut.kappa[0] * a1 * gn;
                flux[3 + i] = cut.kappa[1] * a2 * gn;
            }
            for (const auto& qp : rule.points) {
                const auto be = eval_basis(mesh, cell, qp.x);
                for (int i = 0; i < 3; ++i) {
                    jump[i] = be.value[i];
                    jump[3 + i] = -be.value[i];
                }
                // Grouped so the (i,j) and (j,i) entries are computed from
                // bitwise-identical products; the assembled matrix stays
                // exactly symmetric.
                for (int i = 0; i < 6; ++i)
                    for (int j = 0; j < 6; ++j)
                        local(i, j) += qp.w * (-jump[j] * flux[i] - flux[j] * jump[i] +
                                               lambda * (jump[i] * jump[j]));
            }
        }

        const int nd = static_cast<int>(cd.size());
        for (int i = 0; i < nd; ++i) {
            const int gi = cd[i];
            if (dofs.dirichlet[gi]) continue;
            for (int j = 0; j < nd; ++j) {
                const int gj = cd[j];
                if (!std::isfinite(local(i, j)))
                    throw std::runtime_error("assemble_stiffness: non-finite entry");
                if (dofs.dirichlet[gj])
                    trip_bc.emplace_back(gi, gj, local(i, j));
                else
                    trip.emplace_back(gi, gj, local(i, j));
            }
        }
    }

    for (int d = 0; d < dofs.n_dofs; ++d)
        if (dofs.dirichlet[d]) trip.emplace_back(d, d, 1.0);

    sys.A.resize(dofs.n_dofs, dofs.n_dofs);
    sys.A.setFromTriplets(trip.begin(), trip.end());
    sys.bc_cols.resize(dofs.n_dofs, dofs.n_dofs);
    sys.bc_cols.setFromTriplets(trip_bc.begin(), trip_bc.end());
    return sys;
}

Eigen::VectorXd assemble_state_rhs(const TriMesh& mesh, const CutGeometry& geo,
                                   const DofHandler& dofs, const SideField& f,
                                   const ScalarField& g, const Eigen::VectorXd& u) {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(dofs.n_dofs);

    // (f, w)_Omega
    for (size_t k = 0; k < mesh.cells.size(); ++k) {
        const int cell = static_cast<int>(k);
        const auto& c = mesh.cells[k];
        auto accumulate = [&](const QuadRule& rule, int side) {
            for (const auto& qp : rule.points) {
                const auto be = eval_basis(mesh, cell, qp.x);
                const double fv = f(qp.x, side);
                for (int i = 0; i < 3; ++i) {
                    const int d = dofs.dof(c[i], side);
                    b[d] += qp.w * fv * be.value[i];
                }
            }
        };
        if (!geo.is_cut(cell)) {
            const int side = geo.side_of(cell);
            accumulate(triangle_quadrature(mesh.cell_coords(cell), 2), side);
        } else {
            const CutCell& cut = geo.cuts[geo.cut_index[cell]];
            accumulate(subcell_quadrature(cut, 1, 2), 1);
            accumulate(subcell_quadrature(cut, 2, 2), 2);
        }
    }

    // (g + u, kappa2 w_1 + kappa1 w_2)_Gamma; note the conjugate weights.
    const auto pts = interface_points(geo);
    if (u.size() != pts.size())
        throw std::invalid_argument("assemble_state_rhs: control size does not match "
                                    "interface quadrature points");
    for (int p = 0; p < pts.size(); ++p) {
        const CutCell& cut = geo.cuts[pts.cut[p]];
        const auto& c = mesh.cells[cut.cell];
        const auto be = eval_basis(mesh, cut.cell, pts.x[p]);
        const double val = pts.w[p] * (g(pts.x[p]) + u[p]);
        for (int i = 0; i < 3; ++i) {
            b[dofs.dof(c[i], 1)] += val * cut.kappa[1] * be.value[i];
            b[dofs.dof(c[i], 2)] += val * cut.kappa[0] * be.value[i];
        }
    }
    return b;
}

Eigen::VectorXd assemble_adjoint_rhs(const TriMesh& mesh, const CutGeometry& geo,
                                     const DofHandler& dofs, const Eigen::VectorXd& y,
                                     const SideField& y_d) {
    if (y.size() != dofs.n_dofs)
        throw std::invalid_argument("assemble_adjoint_rhs: coefficient size mismatch");
    Eigen::VectorXd b = Eigen::VectorXd::Zero(dofs.n_dofs);
    for (size_t k = 0; k < mesh.cells.size(); ++k) {
        const int cell = static_cast<int>(k);
        const auto& c = mesh.cells[k];
        auto accumulate = [&](const QuadRule& rule, int side) {
            for (const auto& qp : rule.points) {
                const auto be = eval_basis(mesh, cell, qp.x);
                double yh = 0.0;
                for (int i = 0; i < 3; ++i) yh += y[dofs.dof(c[i], side)] * be.value[i];
                const double v = qp.w * (yh - y_d(qp.x, side));
                for (int i = 0; i < 3; ++i) b[dofs.dof(c[i], side)] += v * be.value[i];
            }
        };
        if (!geo.is_cut(cell)) {
            accumulate(triangle_quadrature(mesh.cell_coords(cell), 2), geo.side_of(cell));
        } else {
            const CutCell& cut = geo.cuts[geo.cut_index[cell]];
            accumulate(subcell_quadrature(cut, 1, 2), 1);
            accumulate(subcell_quadrature(cut, 2, 2), 2);
        }
    }
    return b;
}

Eigen::VectorXd apply_dirichlet(const AssembledSystem& sys, const DofHandler& dofs,
                                Eigen::VectorXd b, const Eigen::VectorXd& bc_values) {
    b -= sys.bc_cols * bc_values;
    for (int d = 0; d < dofs.n_dofs; ++d)
        if (dofs.dirichlet[d]) b[d] = bc_values[d];
    return b;
}

Eigen::VectorXd dirichlet_values(const TriMesh& mesh, const DofHandler& dofs,
                                 const SideField& values) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dofs.n_dofs);
    for (int d = 0; d < dofs.n_dofs; ++d)
        if (dofs.dirichlet[d])
            v[d] = values(mesh.vertices[dofs.dof_vertex[d]], dofs.dof_side[d]);
    return v;
}

}  // namespace cutopt
