#include "cutopt/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cutopt {

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

std::string eoc_str(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

const char* kErrorColumns[] = {"y_l2", "y_h1", "y_triple", "u_l2_gamma", "p_l2",
                               "p_h1", "p_triple", "y_trace", "p_trace"};

double column_value(const ErrorRow& r, int c) {
    switch (c) {
        case 0: return r.y_l2;
        case 1: return r.y_h1;
        case 2: return r.y_triple;
        case 3: return r.u_l2;
        case 4: return r.p_l2;
        case 5: return r.p_h1;
        case 6: return r.p_triple;
        case 7: return r.y_trace;
        default: return r.p_trace;
    }
}

}  // namespace

void validate_config(const RunConfig& cfg) {
    auto positive = [](double v, const char* key) {
        if (!(v > 0.0))
            throw std::invalid_argument(std::string("config: '") + key + "' must be positive");
    };
    if (cfg.example != "5.1" && cfg.example != "5.2" && cfg.example != "5.3")
        throw std::invalid_argument("config: 'example' must be one of 5.1, 5.2, 5.3");
    if (cfg.N < 1) throw std::invalid_argument("config: 'N' must be >= 1");
    positive(cfg.alpha, "alpha");
    positive(cfg.c_tilde, "ctilde");
    positive(cfg.solver_tol, "solver-tol");
    if (cfg.solver_tol > 1e-6)
        throw std::invalid_argument("config: 'solver-tol' must be <= 1e-6");
    if (cfg.solver != "cg" && cfg.solver != "direct")
        throw std::invalid_argument("config: 'solver' must be cg or direct");
    positive(cfg.fp_tol, "fp-tol");
    if (cfg.fp_maxite < 1) throw std::invalid_argument("config: 'fp-maxite' must be >= 1");
    if (!(cfg.fp_theta > 0.0) || cfg.fp_theta > 1.0)
        throw std::invalid_argument("config: 'fp-theta' must lie in (0, 1]");
    for (size_t i = 1; i < cfg.Ns.size(); ++i)
        if (cfg.Ns[i] <= cfg.Ns[i - 1])
            throw std::invalid_argument("config: 'Ns' must be strictly increasing");
    for (int n : cfg.Ns)
        if (n < 1) throw std::invalid_argument("config: 'Ns' entries must be >= 1");

    namespace fs = std::filesystem;
    fs::create_directories(cfg.outdir);
    const fs::path probe = fs::path(cfg.outdir) / ".cutopt_write_probe";
    std::ofstream test(probe);
    if (!test) throw std::invalid_argument("config: 'outdir' is not writable: " + cfg.outdir);
    test.close();
    fs::remove(probe);
}

StudySettings study_settings(const RunConfig& cfg) {
    StudySettings s;
    s.c_tilde = cfg.c_tilde;
    s.method = cfg.solver == "direct" ? SolveMethod::direct : SolveMethod::cg;
    s.solver_tol = cfg.solver_tol;
    s.fp_tol = cfg.fp_tol;
    s.fp_max_iterations = cfg.fp_maxite;
    s.fp_theta = cfg.fp_theta;
    return s;
}

void write_convergence_csv(const ErrorReport& report, const std::string& path) {
    if (report.rows.empty())
        throw std::invalid_argument("write_convergence_csv: empty report");
    std::ofstream out(path, std::ios::binary);  // LF line endings on all platforms
    if (!out) throw std::runtime_error("write_convergence_csv: cannot open " + path);

    out << "N";
    for (const char* col : kErrorColumns) out << "," << col << "," << col << "_eoc";
    out << ",iterations,converged\n";

    const ErrorRow* prev = nullptr;
    for (const auto& row : report.rows) {
        out << row.N;
        for (int c = 0; c < 9; ++c) {
            if (!row.solved) {
                out << ",,";
                continue;
            }
            out << "," << sci(column_value(row, c)) << ",";
            if (prev && prev->solved)
                out << eoc_str(eoc(column_value(*prev, c), column_value(row, c), prev->N, row.N));
        }
        if (row.solved)
            out << "," << row.iterations << "," << (row.converged ? "yes" : "no") << "\n";
        else
            out << ",," << "failed: " << row.failure << "\n";
        prev = &row;
    }
    if (!out) throw std::runtime_error("write_convergence_csv: write failed for " + path);
}

std::string format_report_pretty(const ErrorReport& report) {
    std::ostringstream os;
    os << "example " << report.example_id << "  alpha=" << report.alpha
       << "  C~=" << report.c_tilde << "\n";
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%5s %10s %5s %10s %5s %10s %5s %10s %5s %10s %5s\n", "N",
                  "y_l2", "eoc", "y_h1", "eoc", "u_l2", "eoc", "p_l2", "eoc", "p_h1", "eoc");
    os << buf;
    const ErrorRow* prev = nullptr;
    for (const auto& row : report.rows) {
        if (!row.solved) {
            std::snprintf(buf, sizeof(buf), "%5d failed: %s\n", row.N, row.failure.c_str());
            os << buf;
            prev = nullptr;
            continue;
        }
        auto e = [&](double cur, double prv) {
            return (prev && prev->solved) ? eoc_str(eoc(prv, cur, prev->N, row.N))
                                          : std::string("-");
        };
        std::snprintf(buf, sizeof(buf), "%5d %10.3e %5s %10.3e %5s %10.3e %5s %10.3e %5s %10.3e %5s\n",
                      row.N, row.y_l2, e(row.y_l2, prev ? prev->y_l2 : 0).c_str(), row.y_h1,
                      e(row.y_h1, prev ? prev->y_h1 : 0).c_str(), row.u_l2,
                      e(row.u_l2, prev ? prev->u_l2 : 0).c_str(), row.p_l2,
                      e(row.p_l2, prev ? prev->p_l2 : 0).c_str(), row.p_h1,
                      e(row.p_h1, prev ? prev->p_h1 : 0).c_str());
        os << buf;
        prev = &row;
    }
    return os.str();
}

void export_vtk(const TriMesh& mesh, const CutGeometry& geo, const DofHandler& dofs,
                const Eigen::VectorXd& y, const Eigen::VectorXd& p, const std::string& path) {
    FieldView vy(mesh, geo, dofs, y);
    FieldView vp(mesh, geo, dofs, p);

    // Every output triangle gets its own three points so side-wise values
    // stay discontinuous across the interface.
    struct OutTri {
        std::array<Vec2, 3> v;
        int cell, side;
    };
    std::vector<OutTri> tris;
    for (size_t k = 0; k < mesh.cells.size(); ++k) {
        const int cell = static_cast<int>(k);
        if (!geo.is_cut(cell)) {
            tris.push_back({mesh.cell_coords(cell), cell, geo.side_of(cell)});
        } else {
            const CutCell& cut = geo.cuts[geo.cut_index[cell]];
            for (int side = 1; side <= 2; ++side)
                for (const auto& t : cut.side_tris[side - 1])
                    tris.push_back({t.v, cell, side});
        }
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("export_vtk: cannot open " + path);
    char buf[128];

    out << "# vtk DataFile Version 3.0\n";
    out << "cutopt state and co-state\n";
    out << "ASCII\n";
    out << "DATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << 3 * tris.size() << " double\n";
    for (const auto& t : tris)
        for (const auto& v : t.v) {
            std::snprintf(buf, sizeof(buf), "%.12g %.12g 0\n", v.x(), v.y());
            out << buf;
        }

    out << "CELLS " << tris.size() << " " << 4 * tris.size() << "\n";
    for (size_t i = 0; i < tris.size(); ++i)
        out << "3 " << 3 * i << " " << 3 * i + 1 << " " << 3 * i + 2 << "\n";
    out << "CELL_TYPES " << tris.size() << "\n";
    for (size_t i = 0; i < tris.size(); ++i) out << "5\n";

    out << "POINT_DATA " << 3 * tris.size() << "\n";
    auto write_scalars = [&](const char* name, const FieldView& view) {
        out << "SCALARS " << name << " double 1\n";
        out << "LOOKUP_TABLE default\n";
        for (const auto& t : tris)
            for (const auto& v : t.v) {
                std::snprintf(buf, sizeof(buf), "%.12g\n", view.value(t.cell, t.side, v));
                out << buf;
            }
    };
    write_scalars("y", vy);
    write_scalars("p", vp);
    if (!out) throw std::runtime_error("export_vtk: write failed for " + path);
}

}  // namespace cutopt
