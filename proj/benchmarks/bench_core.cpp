#include <benchmark/benchmark.h>

#include "cutopt/study.hpp"

using namespace cutopt;

namespace {

const ManufacturedCase& segment_case() {
    static const ManufacturedCase mc = make_example("5.1");
    return mc;
}

void BM_cut_geometry(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const TriMesh mesh = build_uniform_mesh(segment_case().domain, n);
    for (auto _ : state) {
        auto geo = build_cut_geometry(mesh, segment_case().level_set);
        benchmark::DoNotOptimize(geo.cuts.size());
    }
}
BENCHMARK(BM_cut_geometry)->Arg(64)->Arg(128);

void BM_assemble(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ManufacturedCase& mc = segment_case();
    const TriMesh mesh = build_uniform_mesh(mc.domain, n);
    const CutGeometry geo = build_cut_geometry(mesh, mc.level_set);
    const DofHandler dofs = build_dof_handler(mesh, geo);
    for (auto _ : state) {
        auto sys = assemble_stiffness(mesh, geo, dofs, mc.a1, mc.a2, 50.0);
        benchmark::DoNotOptimize(sys.A.nonZeros());
    }
}
BENCHMARK(BM_assemble)->Arg(32)->Arg(64)->Arg(128);

void BM_solve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto method = state.range(1) == 0 ? SolveMethod::cg : SolveMethod::direct;
    const ManufacturedCase& mc = segment_case();
    const TriMesh mesh = build_uniform_mesh(mc.domain, n);
    const CutGeometry geo = build_cut_geometry(mesh, mc.level_set);
    const DofHandler dofs = build_dof_handler(mesh, geo);
    const auto sys = assemble_stiffness(mesh, geo, dofs, mc.a1, mc.a2, 50.0);
    auto b = assemble_state_rhs(mesh, geo, dofs, mc.f, mc.g,
                                Eigen::VectorXd::Zero(interface_points(geo).size()));
    b = apply_dirichlet(sys, dofs, std::move(b), dirichlet_values(mesh, dofs, mc.y_bc));
    const SpdSolver solver(sys.A, method, 1e-12);
    for (auto _ : state) {
        auto rep = solver.solve(b);
        benchmark::DoNotOptimize(rep.x[0]);
    }
}
BENCHMARK(BM_solve)->Args({64, 0})->Args({64, 1})->Args({128, 0})->Args({128, 1});

void BM_optimality_loop(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StudySettings settings;
    settings.method = SolveMethod::direct;
    for (auto _ : state) {
        auto cs = solve_case(segment_case(), n, settings);
        benchmark::DoNotOptimize(cs.opt.objective);
    }
}
BENCHMARK(BM_optimality_loop)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
