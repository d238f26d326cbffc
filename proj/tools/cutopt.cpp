// Command-line driver: solve interface control problems on cut meshes, run
// convergence studies, and export fields for visualization.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cutopt/io.hpp"
#include "cutopt/study.hpp"

namespace {

using namespace cutopt;

void add_common_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--example", cfg.example, "Benchmark id: 5.1, 5.2 or 5.3")
        ->capture_default_str();
    sub->add_option("--alpha", cfg.alpha, "Control regularization weight")
        ->capture_default_str();
    sub->add_option("--ctilde", cfg.c_tilde, "Nitsche stabilization constant C~")
        ->capture_default_str();
    sub->add_option("--solver", cfg.solver, "Linear solver: cg or direct")
        ->capture_default_str();
    sub->add_option("--solver-tol", cfg.solver_tol, "Relative residual tolerance")
        ->capture_default_str();
    sub->add_option("--fp-tol", cfg.fp_tol, "Fixed-point update tolerance (max norm)")
        ->capture_default_str();
    sub->add_option("--fp-maxite", cfg.fp_maxite, "Fixed-point iteration budget")
        ->capture_default_str();
    sub->add_option("--fp-theta", cfg.fp_theta, "Fixed-point damping in (0,1]")
        ->capture_default_str();
    sub->add_option("--outdir", cfg.outdir, "Output directory")->capture_default_str();
    sub->add_flag("--allow-nonconverged", cfg.allow_nonconverged,
                  "Exit 0 even if the fixed point did not converge");
    sub->set_config("--config", "", "Key=value configuration file; flags take precedence");
    sub->allow_config_extras(CLI::config_extras_mode::error);  // typo guard
}

int finish_run(const RunConfig& cfg, const CaseSolution& cs) {
    if (!cs.opt.converged && !cfg.allow_nonconverged) {
        std::fprintf(stderr, "error: nonconverged iterations=%d final_update=%.3e\n",
                     cs.opt.iterations, cs.opt.final_update);
        return 1;
    }
    return 0;
}

std::string vtk_path(const RunConfig& cfg) {
    return cfg.outdir + "/fields_ex" + cfg.example + "_N" + std::to_string(cfg.N) + ".vtk";
}

int cmd_run(const RunConfig& cfg, bool with_vtk) {
    const ManufacturedCase mc = make_example(cfg.example, cfg.alpha);
    const CaseSolution cs = solve_case(mc, cfg.N, study_settings(cfg));

    std::printf("example %s N=%d alpha=%g ctilde=%g dofs=%d cut_cells=%zu\n",
                cfg.example.c_str(), cfg.N, cfg.alpha, cfg.c_tilde, cs.dofs.n_dofs,
                cs.geo.cuts.size());
    std::printf("iterations %d converged %s final_update %.3e\n", cs.opt.iterations,
                cs.opt.converged ? "yes" : "no", cs.opt.final_update);
    std::printf("objective %.10e\n", cs.opt.objective);

    if (mc.has_exact) {
        std::printf("y_l2 %.4e  y_h1 %.4e  y_triple %.4e\n",
                    error_l2(cs.mesh, cs.geo, cs.dofs, cs.opt.y, mc.y_exact),
                    error_broken_h1(cs.mesh, cs.geo, cs.dofs, cs.opt.y, mc.grad_y_exact),
                    error_triple_norm(cs.mesh, cs.geo, cs.dofs, cs.opt.y, mc.y_exact,
                                      mc.grad_y_exact));
        std::printf("p_l2 %.4e  p_h1 %.4e  p_triple %.4e\n",
                    error_l2(cs.mesh, cs.geo, cs.dofs, cs.opt.p, mc.p_exact),
                    error_broken_h1(cs.mesh, cs.geo, cs.dofs, cs.opt.p, mc.grad_p_exact),
                    error_triple_norm(cs.mesh, cs.geo, cs.dofs, cs.opt.p, mc.p_exact,
                                      mc.grad_p_exact));
        std::printf("u_l2_gamma %.4e\n",
                    error_control(cs.opt.control.points, cs.opt.control.u, mc.u_exact));
    }

    if (with_vtk) {
        const std::string path = vtk_path(cfg);
        export_vtk(cs.mesh, cs.geo, cs.dofs, cs.opt.y, cs.opt.p, path);
        std::printf("vtk %s\n", path.c_str());
    }
    return finish_run(cfg, cs);
}

int cmd_convergence(const RunConfig& cfg) {
    const ManufacturedCase mc = make_example(cfg.example, cfg.alpha);
    const std::vector<int> ns = cfg.Ns.empty() ? std::vector<int>{16, 32, 64, 128, 256}
                                               : cfg.Ns;
    const ErrorReport report = run_convergence_study(
        mc, ns, study_settings(cfg), [](const ErrorRow& row) {
            if (row.solved)
                std::printf("N=%-4d y_l2 %.4e  u_l2 %.4e  p_l2 %.4e  iters %d%s\n", row.N,
                            row.y_l2, row.u_l2, row.p_l2, row.iterations,
                            row.converged ? "" : " (nonconverged)");
            else
                std::printf("N=%-4d failed: %s\n", row.N, row.failure.c_str());
            std::fflush(stdout);
        });

    const std::string path = cfg.outdir + "/convergence_ex" + cfg.example + ".csv";
    write_convergence_csv(report, path);
    std::printf("csv %s\n", path.c_str());
    if (cfg.pretty) std::fputs(format_report_pretty(report).c_str(), stdout);

    for (const auto& row : report.rows) {
        if (!row.solved) {
            std::fprintf(stderr, "error: row_failed N=%d %s\n", row.N, row.failure.c_str());
            return 1;
        }
        if (!row.converged && !cfg.allow_nonconverged) {
            std::fprintf(stderr, "error: nonconverged N=%d\n", row.N);
            return 1;
        }
    }
    return 0;
}

int cmd_export(const RunConfig& cfg) {
    const ManufacturedCase mc = make_example(cfg.example, cfg.alpha);
    const CaseSolution cs = solve_case(mc, cfg.N, study_settings(cfg));
    const std::string path = vtk_path(cfg);
    export_vtk(cs.mesh, cs.geo, cs.dofs, cs.opt.y, cs.opt.p, path);
    std::printf("vtk %s\n", path.c_str());
    return finish_run(cfg, cs);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cut finite element solver for optimal control of elliptic "
                 "interface equations"};
    app.require_subcommand(1);

    cutopt::RunConfig cfg;
    bool with_vtk = false;

    CLI::App* run = app.add_subcommand("run", "Solve one configuration and print norms");
    add_common_options(run, cfg);
    run->add_option("--N", cfg.N, "Mesh resolution")->capture_default_str();
    run->add_flag("--export-vtk", with_vtk, "Also write the VTK fields");

    CLI::App* conv =
        app.add_subcommand("convergence", "Run an N-refinement study and write CSV");
    add_common_options(conv, cfg);
    conv->add_option("--Ns", cfg.Ns, "Mesh resolutions, e.g. 16,32,64")->delimiter(',');
    conv->add_flag("--pretty", cfg.pretty, "Also print an aligned table");

    CLI::App* exp = app.add_subcommand("export", "Solve and write legacy VTK fields");
    add_common_options(exp, cfg);
    exp->add_option("--N", cfg.N, "Mesh resolution")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        cutopt::validate_config(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    try {
        if (run->parsed()) return cmd_run(cfg, with_vtk);
        if (conv->parsed()) return cmd_convergence(cfg);
        if (exp->parsed()) return cmd_export(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
