#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cutopt/cases.hpp"
#include "cutopt/control.hpp"
#include "cutopt/study.hpp"

using namespace cutopt;

namespace {

struct Setup {
    TriMesh mesh;
    CutGeometry geo;
    DofHandler dofs;
    AssembledSystem sys;
    ManufacturedCase mc;
};

Setup make_setup(const std::string& id, int N, double alpha = 1.0, double c_tilde = 50.0) {
    Setup s;
    s.mc = make_example(id, alpha);
    s.mesh = build_uniform_mesh(s.mc.domain, N);
    s.geo = build_cut_geometry(s.mesh, s.mc.level_set);
    s.dofs = build_dof_handler(s.mesh, s.geo);
    s.sys = assemble_stiffness(s.mesh, s.geo, s.dofs, s.mc.a1, s.mc.a2, c_tilde);
    return s;
}

ControlProblem problem_of(Setup& s, const Eigen::VectorXd& y_bc) {
    return ControlProblem{s.mesh, s.geo,       s.dofs,      s.sys, s.mc.f, s.mc.g,
                          s.mc.y_d, y_bc,      s.mc.u_lower, s.mc.u_upper, s.mc.alpha};
}

}  // namespace

TEST_CASE("conjugate trace of a continuous field is the field value") {
    Setup s = make_setup("5.1", 8);
    const Eigen::VectorXd coeffs =
        interpolate(s.mesh, s.dofs, [](const Vec2& x, int) { return 2.0 + x.x(); });
    const auto pts = interface_points(s.geo);
    const auto tr = conjugate_trace(s.mesh, s.geo, s.dofs, pts, coeffs);
    for (int i = 0; i < pts.size(); ++i)
        CHECK(tr[i] == doctest::Approx(2.0 + pts.x[i].x()).epsilon(1e-13));
}

TEST_CASE("conjugate trace weights: v1=1, v2=0 with kappa1=0.75 gives 0.25") {
    // Single cut cell with kappa1 = 0.75 from the reference configuration.
    TriMesh m;
    m.n = 1;
    m.domain = {Vec2(0, 0), 1.0};
    m.vertices = {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
    m.cells = {{0, 1, 2}};
    m.boundary_vertex = {false, false, false};
    m.cell_diameter = {std::sqrt(2.0)};
    m.h = std::sqrt(2.0);
    const LevelSet ls{[](const Vec2& x) { return x.x() - 0.5; }};
    const CutGeometry geo = build_cut_geometry(m, ls);
    const DofHandler dofs = build_dof_handler(m, geo);
    REQUIRE(geo.cuts.size() == 1);
    REQUIRE(geo.cuts[0].kappa[0] == doctest::Approx(0.75));

    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(dofs.n_dofs);
    for (int v = 0; v < 3; ++v) coeffs[dofs.dof(v, 1)] = 1.0;
    const auto pts = interface_points(geo);
    const auto tr = conjugate_trace(m, geo, dofs, pts, coeffs);
    for (int i = 0; i < pts.size(); ++i) CHECK(tr[i] == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("projection clamps pointwise") {
    Setup s = make_setup("5.1", 8);
    ControlState cs = make_control_state(
        s.geo, [](const Vec2&) { return -1.0; }, [](const Vec2&) { return 1.0; }, 1.0);
    const int n = cs.points.size();

    Eigen::VectorXd trace = Eigen::VectorXd::Zero(n);
    CHECK(project_control(trace, cs).lpNorm<Eigen::Infinity>() == 0.0);

    trace.setConstant(5.0);
    CHECK(project_control(trace, cs).minCoeff() == -1.0);
    CHECK(project_control(trace, cs).maxCoeff() == -1.0);

    cs.alpha = 0.1;
    trace.setConstant(-0.3);
    CHECK(project_control(trace, cs).maxCoeff() == 1.0);
}

TEST_CASE("projection properties: idempotence, feasibility, scale invariance") {
    Setup s = make_setup("5.1", 8);
    ControlState cs = make_control_state(s.geo, s.mc.u_lower, s.mc.u_upper, 0.7);
    const int n = cs.points.size();
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    Eigen::VectorXd trace(n);
    for (int i = 0; i < n; ++i) trace[i] = unif(rng);

    const Eigen::VectorXd u = project_control(trace, cs);
    for (int i = 0; i < n; ++i) {
        CHECK(u[i] >= cs.lower[i]);
        CHECK(u[i] <= cs.upper[i]);
    }
    // Idempotent: projecting the projected values changes nothing.
    CHECK((project_control(-cs.alpha * u, cs) - u).lpNorm<Eigen::Infinity>() == 0.0);

    // Scaling trace and alpha together leaves the output unchanged.
    ControlState cs2 = cs;
    cs2.alpha = 3.0 * cs.alpha;
    CHECK((project_control(3.0 * trace, cs2) - u).lpNorm<Eigen::Infinity>() < 1e-15);
}

TEST_CASE("crossed bounds are rejected") {
    Setup s = make_setup("5.1", 8);
    ControlState cs = make_control_state(
        s.geo, [](const Vec2&) { return 1.0; }, [](const Vec2&) { return -1.0; }, 1.0);
    const Eigen::VectorXd trace = Eigen::VectorXd::Zero(cs.points.size());
    CHECK_THROWS_AS(project_control(trace, cs), std::invalid_argument);
}

TEST_CASE("pinned control converges in one iteration") {
    Setup s = make_setup("5.1", 8);
    s.mc.u_lower = [](const Vec2&) { return 0.0; };
    s.mc.u_upper = [](const Vec2&) { return 0.0; };
    ControlProblem prob = problem_of(s, dirichlet_values(s.mesh, s.dofs, s.mc.y_bc));
    const auto out = fixed_point_solve(prob, Eigen::VectorXd());
    CHECK(out.converged);
    CHECK(out.iterations == 1);
    CHECK(out.control.u.lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("fixed point converges on example 5.1 (alpha=1, C~=50, N=32)") {
    Setup s = make_setup("5.1", 32);
    ControlProblem prob = problem_of(s, dirichlet_values(s.mesh, s.dofs, s.mc.y_bc));
    FixedPointOptions opts;
    opts.tol = 1e-10;
    opts.max_iterations = 100;
    const auto out = fixed_point_solve(prob, Eigen::VectorXd(), opts);
    CHECK(out.converged);
    CHECK(out.final_update < 1e-10);
    CHECK(out.objective > 0.0);

    // Feasibility is exact pointwise.
    for (int i = 0; i < out.control.points.size(); ++i) {
        CHECK(out.control.u[i] >= out.control.lower[i]);
        CHECK(out.control.u[i] <= out.control.upper[i]);
    }

    // Re-running a single sweep from the converged control moves it by < Tol.
    const auto again = fixed_point_solve(prob, out.control.u,
                                         FixedPointOptions{1e-10, 1, 1.0});
    CHECK(again.converged);
    CHECK(again.final_update < 1e-10);
}

TEST_CASE("small alpha converges with damping (example 5.1, N=32)") {
    Setup s = make_setup("5.1", 32, 1e-4);
    ControlProblem prob = problem_of(s, dirichlet_values(s.mesh, s.dofs, s.mc.y_bc));
    FixedPointOptions opts;
    opts.theta = 0.5;
    const auto out = fixed_point_solve(prob, Eigen::VectorXd(), opts);
    CHECK(out.converged);
}

TEST_CASE("non-convergence is a flag, not an error") {
    Setup s = make_setup("5.1", 16);
    ControlProblem prob = problem_of(s, dirichlet_values(s.mesh, s.dofs, s.mc.y_bc));
    FixedPointOptions opts;
    opts.tol = 1e-16;  // unreachable
    opts.max_iterations = 2;
    const auto out = fixed_point_solve(prob, Eigen::VectorXd(), opts);
    CHECK(!out.converged);
    CHECK(out.iterations == 2);
}

TEST_CASE("objective value: zero state against y_d = 1 on the unit square") {
    Setup s = make_setup("5.1", 8);
    const Eigen::VectorXd y = Eigen::VectorXd::Zero(s.dofs.n_dofs);
    const auto pts = interface_points(s.geo);
    const double J = objective_value(s.mesh, s.geo, s.dofs, y,
                                     [](const Vec2&, int) { return 1.0; }, pts,
                                     Eigen::VectorXd::Zero(pts.size()), 1.0);
    CHECK(J == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("fixed point option validation") {
    Setup s = make_setup("5.1", 8);
    ControlProblem prob = problem_of(s, dirichlet_values(s.mesh, s.dofs, s.mc.y_bc));
    CHECK_THROWS_AS(fixed_point_solve(prob, Eigen::VectorXd(), {0.0, 10, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(fixed_point_solve(prob, Eigen::VectorXd(), {1e-10, 0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(fixed_point_solve(prob, Eigen::VectorXd(), {1e-10, 10, 1.5}),
                    std::invalid_argument);
}
