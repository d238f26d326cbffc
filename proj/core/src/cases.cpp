#include "cutopt/cases.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace cutopt {

namespace {

constexpr double kPi = 3.14159265358979323846;

ManufacturedCase make_segment_case(double alpha) {
    ManufacturedCase mc;
    mc.id = "5.1";
    mc.domain = {Vec2(0.0, 0.0), 1.0};
    mc.a1 = 1.0;
    mc.a2 = 100.0;
    mc.alpha = alpha;

    const double k = -std::sqrt(3.0) / 3.0;
    const double b = (6.0 + std::sqrt(6.0) - 2.0 * std::sqrt(3.0)) / 6.0;

    // Side 1 is above the line x2 = k*x1 + b, where w > 0.
    auto w = [=](const Vec2& x) { return x.y() - k * x.x() - b; };
    mc.level_set.phi = [=](const Vec2& x) { return -w(x); };

    auto y_factor = [](int side) { return side == 1 ? 1.0 : 0.01; };
    auto p_factor = [](int side) { return side == 1 ? 100.0 : 1.0; };

    mc.y_exact = [=](const Vec2& x, int side) {
        return y_factor(side) * w(x) * std::cos(x.x() * x.y());
    };
    mc.grad_y_exact = [=](const Vec2& x, int side) -> Vec2 {
        const double s = std::sin(x.x() * x.y());
        const double c = std::cos(x.x() * x.y());
        return y_factor(side) * (c * Vec2(-k, 1.0) - w(x) * s * Vec2(x.y(), x.x()));
    };

    // q = x1(x1-1) x2(x2-1) sin(x1 x2)
    auto q_parts = [](const Vec2& x) {
        const double A = x.x() * x.x() - x.x();
        const double B = x.y() * x.y() - x.y();
        return std::array<double, 4>{A, B, std::sin(x.x() * x.y()), std::cos(x.x() * x.y())};
    };
    auto q = [=](const Vec2& x) {
        const auto [A, B, S, C] = q_parts(x);
        (void)C;
        return A * B * S;
    };
    auto grad_q = [=](const Vec2& x) -> Vec2 {
        const auto [A, B, S, C] = q_parts(x);
        const double Ap = 2.0 * x.x() - 1.0, Bp = 2.0 * x.y() - 1.0;
        return {Ap * B * S + A * B * x.y() * C, A * Bp * S + A * B * x.x() * C};
    };
    auto lap_q = [=](const Vec2& x) {
        const auto [A, B, S, C] = q_parts(x);
        const double Ap = 2.0 * x.x() - 1.0, Bp = 2.0 * x.y() - 1.0;
        const double r2 = x.x() * x.x() + x.y() * x.y();
        return 2.0 * B * S + 2.0 * A * S + 2.0 * x.y() * Ap * B * C +
               2.0 * x.x() * A * Bp * C - A * B * r2 * S;
    };

    mc.p_exact = [=](const Vec2& x, int side) {
        return alpha * p_factor(side) * w(x) * q(x);
    };
    mc.grad_p_exact = [=](const Vec2& x, int side) -> Vec2 {
        return alpha * p_factor(side) * (q(x) * Vec2(-k, 1.0) + w(x) * grad_q(x));
    };

    mc.u_exact = [=](const Vec2& x) {
        return std::max(std::sin(kPi * (x.x() - 0.5)), 0.0);
    };
    mc.u_lower = [=](const Vec2& x) { return std::sin(kPi * (x.x() - 0.5)); };
    mc.u_upper = [](const Vec2&) { return 1.0; };

    // f = -div(a grad y*), identical on both sides by the coefficient scaling.
    mc.f = [=](const Vec2& x, int) {
        const double s = std::sin(x.x() * x.y());
        const double c = std::cos(x.x() * x.y());
        const double r2 = x.x() * x.x() + x.y() * x.y();
        return w(x) * r2 * c + 2.0 * s * (x.x() - k * x.y());
    };
    // [a grad_n y*] = 0 on the interface, so g absorbs the control data.
    mc.g = [=](const Vec2& x) { return -mc.u_exact(x); };
    // y_d = y* + div(a grad p*); the correction is again side-independent.
    mc.y_d = [=](const Vec2& x, int side) {
        const double lap_wq = w(x) * lap_q(x) + 2.0 * Vec2(-k, 1.0).dot(grad_q(x));
        return mc.y_exact(x, side) + 100.0 * alpha * lap_wq;
    };
    mc.y_bc = mc.y_exact;
    mc.has_exact = true;
    return mc;
}

ManufacturedCase make_polygon_case(double alpha) {
    ManufacturedCase mc;
    mc.id = "5.2";
    mc.domain = {Vec2(0.0, 0.0), 2.0};
    mc.a1 = 1.0;
    mc.a2 = 10.0;
    mc.alpha = alpha;

    const double b = std::sqrt(3.0) / 4.0;

    // Product form of the four line factors: phi = P(s) Q(d) with
    // s = x1 + x2, d = x2 - x1. Positive inside the diamond (side 1); used
    // for the exact fields.
    auto P = [=](double s) { return s * s - 4.0 * s + 3.0 + 2.0 * b - b * b; };
    auto Q = [=](double d) { return d * d - (1.0 - b) * (1.0 - b); };
    auto phi_prod = [=](const Vec2& x) {
        return P(x.x() + x.y()) * Q(x.y() - x.x());
    };
    auto grad_phi = [=](const Vec2& x) -> Vec2 {
        const double s = x.x() + x.y(), d = x.y() - x.x();
        const double Pp = 2.0 * s - 4.0, Qp = 2.0 * d;
        return {Pp * Q(d) - P(s) * Qp, Pp * Q(d) + P(s) * Qp};
    };
    auto lap_phi = [=](const Vec2& x) {
        return 4.0 * (P(x.x() + x.y()) + Q(x.y() - x.x()));
    };

    // Geometry level set: max of the outward-oriented side functions of the
    // diamond. The raw product changes sign in spurious regions near the
    // outer boundary; the max form has the correct zero set everywhere.
    mc.level_set.phi = [=](const Vec2& x) {
        const double m1 = (1.0 + b) - x.x() - x.y();
        const double m2 = (x.x() - 1.0 + b) - x.y();
        const double m3 = x.x() + x.y() - (3.0 - b);
        const double m4 = x.y() - (x.x() + 1.0 - b);
        return std::max(std::max(m1, m2), std::max(m3, m4));
    };

    auto y_factor = [](int side) { return side == 1 ? 10.0 : 1.0; };

    auto E = [](const Vec2& x) { return std::exp((x.x() - 1.0) * (x.y() - 1.0)); };
    auto grad_E = [=](const Vec2& x) -> Vec2 {
        return E(x) * Vec2(x.y() - 1.0, x.x() - 1.0);
    };
    auto lap_E = [=](const Vec2& x) {
        const double u = x.x() - 1.0, v = x.y() - 1.0;
        return E(x) * (u * u + v * v);
    };

    mc.y_exact = [=](const Vec2& x, int side) { return y_factor(side) * phi_prod(x) * E(x); };
    mc.grad_y_exact = [=](const Vec2& x, int side) -> Vec2 {
        return y_factor(side) * (E(x) * grad_phi(x) + phi_prod(x) * grad_E(x));
    };

    auto R = [](const Vec2& x) {
        return x.x() * (x.x() - 2.0) * x.y() * (x.y() - 2.0);
    };
    auto grad_R = [](const Vec2& x) -> Vec2 {
        const double A = x.x() * x.x() - 2.0 * x.x(), B = x.y() * x.y() - 2.0 * x.y();
        return {(2.0 * x.x() - 2.0) * B, A * (2.0 * x.y() - 2.0)};
    };
    auto lap_R = [](const Vec2& x) {
        const double A = x.x() * x.x() - 2.0 * x.x(), B = x.y() * x.y() - 2.0 * x.y();
        return 2.0 * B + 2.0 * A;
    };

    mc.p_exact = [=](const Vec2& x, int side) {
        return alpha * y_factor(side) * phi_prod(x) * R(x);
    };
    mc.grad_p_exact = [=](const Vec2& x, int side) -> Vec2 {
        return alpha * y_factor(side) * (R(x) * grad_phi(x) + phi_prod(x) * grad_R(x));
    };

    mc.u_exact = [=](const Vec2& x) { return std::max(std::sin(2.0 * kPi * x.x()), 0.0); };
    mc.u_lower = [=](const Vec2& x) { return std::sin(2.0 * kPi * x.x()); };
    mc.u_upper = [](const Vec2&) { return 1.0; };

    mc.f = [=](const Vec2& x, int) {
        return -10.0 * (phi_prod(x) * lap_E(x) + 2.0 * grad_phi(x).dot(grad_E(x)) +
                        E(x) * lap_phi(x));
    };
    mc.g = [=](const Vec2& x) { return -mc.u_exact(x); };
    mc.y_d = [=](const Vec2& x, int side) {
        const double lap_phiR =
            phi_prod(x) * lap_R(x) + 2.0 * grad_phi(x).dot(grad_R(x)) + R(x) * lap_phi(x);
        return mc.y_exact(x, side) + 10.0 * alpha * lap_phiR;
    };
    mc.y_bc = mc.y_exact;
    mc.has_exact = true;
    return mc;
}

ManufacturedCase make_star_case(double alpha) {
    ManufacturedCase mc;
    mc.id = "5.3";
    mc.domain = {Vec2(-1.0, -1.0), 2.0};
    mc.a1 = 1.0;
    mc.a2 = 10.0;
    mc.alpha = alpha;

    // phi = r - sqrt(3)/4 - 0.1 sin(5 theta + pi/2); the shifted sine is
    // cos(5 theta), which is continuous across the atan2 branch cut.
    mc.level_set.phi = [](const Vec2& x) {
        const double r = x.norm();
        const double theta = std::atan2(x.y(), x.x());
        return r - std::sqrt(3.0) / 4.0 - 0.1 * std::cos(5.0 * theta);
    };

    mc.u_lower = [](const Vec2&) { return 0.0; };
    mc.u_upper = [](const Vec2&) { return 1.0; };

    mc.f = [](const Vec2&, int) { return 1.0; };
    mc.g = [](const Vec2&) { return 0.0; };
    mc.y_d = [](const Vec2&, int side) { return side == 1 ? 10.0 : 1.0; };
    mc.y_bc = [](const Vec2&, int) { return 0.0; };
    mc.has_exact = false;
    return mc;
}

}  // namespace

ManufacturedCase make_example(const std::string& id, double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("make_example: alpha must be positive");
    if (id == "5.1") return make_segment_case(alpha);
    if (id == "5.2") return make_polygon_case(alpha);
    if (id == "5.3") return make_star_case(alpha);
    throw std::invalid_argument("make_example: unknown example id '" + id + "'");
}

double derive_sources_check(const ManufacturedCase& mc, int min_samples_per_side,
                            unsigned seed) {
    if (!mc.has_exact)
        throw std::invalid_argument("derive_sources_check: case has no exact solution");

    const double step = 1e-4 * mc.domain.side;
    const double a_of[2] = {mc.a1, mc.a2};

    // 4th-order central Laplacian of a side branch.
    auto fd_laplacian = [&](const SideField& u, const Vec2& x, int side) {
        auto d2 = [&](const Vec2& e) {
            return (-u(x + 2.0 * step * e, side) + 16.0 * u(x + step * e, side) -
                    30.0 * u(x, side) + 16.0 * u(x - step * e, side) -
                    u(x - 2.0 * step * e, side)) /
                   (12.0 * step * step);
        };
        return d2(Vec2(1.0, 0.0)) + d2(Vec2(0.0, 1.0));
    };

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double margin = 3.0 * step;

    double defect = 0.0;
    for (int side = 1; side <= 2; ++side) {
        int accepted = 0;
        long tries = 0;
        while (accepted < min_samples_per_side) {
            if (++tries > 2000000)
                throw std::runtime_error("derive_sources_check: sampling failed");
            Vec2 x(mc.domain.lower_left.x() + margin + unif(rng) * (mc.domain.side - 2 * margin),
                   mc.domain.lower_left.y() + margin + unif(rng) * (mc.domain.side - 2 * margin));
            const double want = side == 1 ? -1.0 : 1.0;
            bool ok = true;
            for (int dx = -2; dx <= 2 && ok; ++dx)
                for (int dy = -2; dy <= 2 && ok; ++dy)
                    ok = mc.level_set(x + step * Vec2(dx, dy)) * want > 0.0;
            if (!ok) continue;
            ++accepted;

            const double a = a_of[side - 1];
            const double f_fd = -a * fd_laplacian(mc.y_exact, x, side);
            const double f_cl = mc.f(x, side);
            defect = std::max(defect, std::abs(f_cl - f_fd) / std::max(1.0, std::abs(f_cl)));

            const double yd_fd = mc.y_exact(x, side) + a * fd_laplacian(mc.p_exact, x, side);
            const double yd_cl = mc.y_d(x, side);
            defect =
                std::max(defect, std::abs(yd_cl - yd_fd) / std::max(1.0, std::abs(yd_cl)));
        }
    }
    return defect;
}

}  // namespace cutopt
