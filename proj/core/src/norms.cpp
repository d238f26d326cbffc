#include "cutopt/norms.hpp"

#include <cmath>

namespace cutopt {

namespace {

// Sums a per-(cell, side) integrand over the whole mesh with side-respecting
// quadrature.
template <typename F>
double integrate_broken(const TriMesh& mesh, const CutGeometry& geo, int degree, F&& term) {
    double acc = 0.0;
    for (size_t k = 0; k < mesh.cells.size(); ++k) {
        const int cell = static_cast<int>(k);
        if (!geo.is_cut(cell)) {
            const int side = geo.side_of(cell);
            for (const auto& qp : triangle_quadrature(mesh.cell_coords(cell), degree).points)
                acc += qp.w * term(cell, side, qp.x);
        } else {
            const CutCell& cut = geo.cuts[geo.cut_index[cell]];
            for (int side = 1; side <= 2; ++side)
                for (const auto& qp : subcell_quadrature(cut, side, degree).points)
                    acc += qp.w * term(cell, side, qp.x);
        }
    }
    return acc;
}

}  // namespace

double error_l2(const TriMesh& mesh, const CutGeometry& geo, const DofHandler& dofs,
                const Eigen::VectorXd& coeffs, const SideField& exact, int degree) {
    FieldView v(mesh, geo, dofs, coeffs);
    const double s2 = integrate_broken(mesh, geo, degree, [&](int cell, int side, const Vec2& x) {
        const double e = exact(x, side) - v.value(cell, side, x);
        return e * e;
    });
    return std::sqrt(s2);
}

double error_broken_h1(const TriMesh& mesh, const CutGeometry& geo, const DofHandler& dofs,
                       const Eigen::VectorXd& coeffs, const SideVecField& exact_grad,
                       int degree) {
    FieldView v(mesh, geo, dofs, coeffs);
    const double s2 = integrate_broken(mesh, geo, degree, [&](int cell, int side, const Vec2& x) {
        const Vec2 e = exact_grad(x, side) - v.gradient(cell, side);
        return e.squaredNorm();
    });
    return std::sqrt(s2);
}

double error_triple_norm(const TriMesh& mesh, const CutGeometry& geo, const DofHandler& dofs,
                         const Eigen::VectorXd& coeffs, const SideField& exact,
                         const SideVecField& exact_grad, int degree) {
    const double h1 = error_broken_h1(mesh, geo, dofs, coeffs, exact_grad, degree);
    double s2 = h1 * h1;

    FieldView v(mesh, geo, dofs, coeffs);
    for (const auto& cut : geo.cuts) {
        const double h_k = mesh.cell_diameter[cut.cell];
        const auto rule = interface_quadrature(cut, kInterfaceGauss);
        for (const auto& qp : rule.points) {
            const double e1 = exact(qp.x, 1) - v.value(cut.cell, 1, qp.x);
            const double e2 = exact(qp.x, 2) - v.value(cut.cell, 2, qp.x);
            const double jump = e1 - e2;
            const Vec2 ge1 = exact_grad(qp.x, 1) - v.gradient(cut.cell, 1);
            const Vec2 ge2 = exact_grad(qp.x, 2) - v.gradient(cut.cell, 2);
            const double avg_flux =
                cut.kappa[0] * ge1.dot(cut.normal) + cut.kappa[1] * ge2.dot(cut.normal);
            s2 += qp.w * (jump * jump / h_k + h_k * avg_flux * avg_flux);
        }
    }
    return std::sqrt(s2);
}

double error_interface_trace(const TriMesh& mesh, const CutGeometry& geo,
                             const DofHandler& dofs, const Eigen::VectorXd& coeffs,
                             const SideField& exact) {
    FieldView v(mesh, geo, dofs, coeffs);
    double s2 = 0.0;
    for (const auto& cut : geo.cuts) {
        const auto rule = interface_quadrature(cut, kInterfaceGauss);
        for (const auto& qp : rule.points) {
            // Both combinations use the conjugate weights; the exact branches
            // agree on the interface itself.
            const double ex = cut.kappa[1] * exact(qp.x, 1) + cut.kappa[0] * exact(qp.x, 2);
            const double tr = cut.kappa[1] * v.value(cut.cell, 1, qp.x) +
                              cut.kappa[0] * v.value(cut.cell, 2, qp.x);
            const double e = ex - tr;
            s2 += qp.w * e * e;
        }
    }
    return std::sqrt(s2);
}

double error_control(const InterfacePoints& pts, const Eigen::VectorXd& u,
                     const ScalarField& u_exact) {
    double s2 = 0.0;
    for (int i = 0; i < pts.size(); ++i) {
        const double e = u_exact(pts.x[i]) - u[i];
        s2 += pts.w[i] * e * e;
    }
    return std::sqrt(s2);
}

}  // namespace cutopt
