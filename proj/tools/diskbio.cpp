// Batch front end: eigenvalue tables, meshes, Galerkin matrices, identity
// verification suites, and the operator-preconditioning study.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "diskbio/assembly.hpp"
#include "diskbio/config.hpp"
#include "diskbio/io.hpp"
#include "diskbio/kernels.hpp"
#include "diskbio/precond.hpp"
#include "diskbio/spectral.hpp"

using namespace diskbio;
using std::numbers::pi;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

int run_eigs(const RunConfig& cfg) {
    CsvWriter csv(cfg.out);
    for (int l = 0; l <= cfg.lmax; ++l)
        for (int m = -l; m <= l; ++m) {
            double lam = lambda({l, m});
            std::string resid = (l == 0) ? "nan"
                                         : format_double(lambda_recursion_residual({l, m}));
            csv.row({std::to_string(l), std::to_string(m), format_double(lam), resid});
        }
    return kExitOk;
}

int run_mesh(const RunConfig& cfg, const std::string& out_dir) {
    TriangleMesh mesh = mesh_disk(cfg.a, cfg.level);
    std::filesystem::create_directories(out_dir);
    CsvWriter vcsv(out_dir + "/vertices.csv");
    vcsv.row({"id", "x", "y", "boundary"});
    for (int v = 0; v < mesh.num_vertices(); ++v)
        vcsv.row({std::to_string(v), format_double(mesh.vertices[v].x),
                  format_double(mesh.vertices[v].y), mesh.boundary_vertex[v] ? "1" : "0"});
    CsvWriter tcsv(out_dir + "/triangles.csv");
    tcsv.row({"id", "v0", "v1", "v2"});
    for (int t = 0; t < mesh.num_triangles(); ++t)
        tcsv.row({std::to_string(t), std::to_string(mesh.triangles[t][0]),
                  std::to_string(mesh.triangles[t][1]), std::to_string(mesh.triangles[t][2])});
    return kExitOk;
}

int run_assemble(const RunConfig& cfg) {
    TriangleMesh mesh = mesh_disk(cfg.a, cfg.level);
    AssemblyConfig acfg;
    acfg.order_regular = cfg.order_regular;
    acfg.order_singular = cfg.order_singular;
    GalerkinMatrix gm;
    SpaceKind space = space_kind_from(cfg.space);
    if (cfg.op == "mass") {
        gm = assemble_mass(mesh, space, space);
    } else {
        switch (operator_kind_from(cfg.op)) {
            case OperatorKind::V: gm = assemble_single_layer(mesh, space, acfg); break;
            case OperatorKind::Vbar: gm = assemble_mod_single_layer(mesh, space, acfg); break;
            case OperatorKind::W: gm = assemble_hypersingular(mesh, acfg); break;
            case OperatorKind::Wbar: gm = assemble_mod_hypersingular(mesh, acfg); break;
        }
    }
    write_matrix_dbio(cfg.out, gm);
    return kExitOk;
}

struct CheckRow {
    std::vector<std::string> cells;
    double rel_err = 0.0;
    double tol = 1e-3;
};

int emit_checks(const std::string& out, const std::vector<std::string>& header,
                const std::vector<CheckRow>& rows, double tol_override) {
    CsvWriter csv(out);
    csv.row(header);
    bool ok = true;
    for (const auto& r : rows) {
        csv.row(r.cells);
        double tol = tol_override > 0 ? tol_override : r.tol;
        if (!(r.rel_err <= tol)) ok = false;
    }
    return ok ? kExitOk : kExitCheckFailed;
}

CheckRow report_row(const IdentityReport& rep, double tol) {
    return {{rep.identity, std::to_string(rep.l), std::to_string(rep.m), std::to_string(rep.l2),
             std::to_string(rep.m2), format_double(rep.computed), format_double(rep.reference),
             format_double(rep.rel_err)},
            rep.rel_err,
            tol};
}

int run_verify(const RunConfig& cfg, double tol_override) {
    const std::vector<std::string> id_header = {"identity", "l",        "m",        "l2",
                                                "m2",       "computed", "reference", "rel_err"};
    std::vector<CheckRow> rows;

    if (cfg.suite == "kernels") {
        const std::pair<PolarPoint, PolarPoint> pairs[] = {
            {{0.2, 0.0}, {0.6, pi / 2}},  {{0.0, 0.0}, {0.55, 1.0}}, {{0.3, 1.0}, {0.5, 3.5}},
            {{0.45, 2.0}, {0.4, 4.5}},    {{0.5, 0.0}, {0.5, pi}},
        };
        KernelConfig kc;
        for (const auto& [x, y] : pairs) {
            for (auto kind : {OperatorKind::V, OperatorKind::Vbar}) {
                double v = kernel_series_extrapolated(kind, x, y);
                double ref = kernel_eval(kind, kc, x, y);
                double rel = std::abs(v - ref) / ref;
                rows.push_back({{"series_" + to_string(kind), format_double(x.r),
                                 format_double(x.theta), format_double(y.r),
                                 format_double(y.theta), format_double(v), format_double(ref),
                                 format_double(rel)},
                                rel,
                                1e-3});
            }
            double lr = li_rong_alpha1(x, y);
            double lr_ref = 1.0 / (4.0 * pi * distance(x, y));
            double lr_rel = std::abs(lr - lr_ref) / lr_ref;
            rows.push_back({{"li_rong", format_double(x.r), format_double(x.theta),
                             format_double(y.r), format_double(y.theta), format_double(lr),
                             format_double(lr_ref), format_double(lr_rel)},
                            lr_rel,
                            1e-6});
            double closed = s_fun(1.0, x, y) / distance(x, y) / (2.0 * pi);
            double resid = primitive_check_vbar(1.0, x, y);
            double pr_rel = std::abs(resid) / closed;
            rows.push_back({{"primitive", format_double(x.r), format_double(x.theta),
                             format_double(y.r), format_double(y.theta),
                             format_double(closed + resid), format_double(closed),
                             format_double(pr_rel)},
                            pr_rel,
                            1e-5});
        }
        return emit_checks(cfg.out, {"check", "x_r", "x_theta", "y_r", "y_theta", "value",
                                     "reference", "rel_err"},
                           rows, tol_override);
    }

    if (cfg.suite == "wolfe") {
        const std::vector<PolarPoint> pts = {{0.2, 0.4}, {0.45, 2.1}, {0.7, 5.0}};
        for (auto [l, m] : {std::pair{0, 0}, {2, 0}, {2, 2}, {3, 1}, {4, 0}})
            for (const auto& rep : verify_wolfe({l, m}, pts)) rows.push_back(report_row(rep, 1e-4));
    } else if (cfg.suite == "vbar") {
        const std::vector<PolarPoint> pts = {{0.0, 0.0}, {0.4, 0.5}, {0.6, 3.0}};
        for (auto [l, m] : {std::pair{1, 0}, {2, 1}, {2, -1}, {3, 0}, {3, 2}, {4, 1}, {4, 3}})
            for (const auto& rep : verify_vbar({l, m}, pts)) rows.push_back(report_row(rep, 1e-3));
    } else if (cfg.suite == "krenk") {
        rows.push_back(report_row(verify_krenk({1, 0}, {1, 0}), 1e-3));
        rows.push_back(report_row(verify_krenk({1, 0}, {2, 1}), 1e-3));
        rows.push_back(report_row(verify_krenk({1, 1}, {1, 1}), 1e-3));
        rows.push_back(report_row(verify_krenk({2, 1}, {2, 1}), 1e-3));
        rows.push_back(report_row(verify_krenk({3, 0}, {3, 0}), 1e-3));
    } else if (cfg.suite == "wbar") {
        rows.push_back(report_row(verify_wbar_modes({0, 0}, {0, 0}), 1e-3));
        rows.push_back(report_row(verify_wbar_modes({2, 0}, {2, 0}), 1e-3));
        rows.push_back(report_row(verify_wbar_modes({2, 0}, {0, 0}), 1e-3));
        rows.push_back(report_row(verify_wbar_modes({3, 1}, {3, 1}), 1e-3));
        rows.push_back(report_row(verify_wbar_modes({4, 2}, {4, 2}), 1e-3));
    } else if (cfg.suite == "wbar1") {
        rows.push_back(report_row(
            verify_wbar_one([](const PolarPoint&) { return 1.0; }, "v=1"), 1e-8));
        rows.push_back(report_row(
            verify_wbar_one([](const PolarPoint& x) { return psh({2, 0}, x).real(); }, "v=y20"),
            1e-8));
        rows.push_back(report_row(
            verify_wbar_one([](const PolarPoint& x) { return std::exp(-4.0 * x.r * x.r); },
                            "v=bump"),
            1e-8));
    } else if (cfg.suite == "calderon") {
        AssemblyConfig acfg;
        acfg.order_regular = cfg.order_regular;
        acfg.order_singular = cfg.order_singular;
        double kappa0 = -1.0;
        for (int level : {2, 3, 4}) {
            TriangleMesh mesh = mesh_disk(1.0, level);
            GalerkinMatrix V = assemble_single_layer(mesh, SpaceKind::P1, acfg);
            GalerkinMatrix Wb = assemble_mod_hypersingular(mesh, acfg);
            GalerkinMatrix M = assemble_mass(mesh, SpaceKind::P1, SpaceKind::P1);
            SpectrumReport rep = calderon_discrete(V.entries, Wb.entries, M.entries);
            if (kappa0 < 0) kappa0 = rep.kappa;
            double rel = std::abs(rep.kappa - kappa0) / kappa0;
            rows.push_back({{"calderon", std::to_string(level), "0", "0", "0",
                             format_double(rep.kappa), format_double(kappa0),
                             format_double(rel)},
                            rel,
                            0.10});
        }
    } else {
        std::cerr << "unknown verify suite: " << cfg.suite << "\n";
        return kExitUsage;
    }
    return emit_checks(cfg.out, id_header, rows, tol_override);
}

int run_precond(const RunConfig& cfg) {
    OperatorPair pair;
    if (cfg.pair == "VWbar") pair = OperatorPair::V_Wbar;
    else if (cfg.pair == "WVbar") pair = OperatorPair::W_Vbar;
    else {
        std::cerr << "unknown operator pair: " << cfg.pair << "\n";
        return kExitUsage;
    }
    AssemblyConfig acfg;
    acfg.order_regular = cfg.order_regular;
    acfg.order_singular = cfg.order_singular;
    auto rows = precond_study(cfg.levels, pair, [](const Vec2&) { return 1.0; }, cfg.a, acfg);
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows)
        out.push_back({{"level", r.level},
                       {"dofs", r.dofs},
                       {"h", r.h},
                       {"kappa_raw", r.kappa_raw},
                       {"kappa_pre", r.kappa_pre},
                       {"iters_raw", r.iters_raw},
                       {"iters_pre", r.iters_pre}});
    std::ofstream f(cfg.out);
    if (!f) throw std::runtime_error("cannot open " + cfg.out);
    f << out.dump(2) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"boundary integral operators on the disk and their exact inverses"};
    app.require_subcommand(1);

    // load the config file first so parsed flags override its values
    RunConfig cfg;
    std::string config_path;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
    if (!config_path.empty()) {
        try {
            cfg = load_config(config_path);
        } catch (const ConfigError& e) {
            std::cerr << e.what() << "\n";
            return kExitUsage;
        }
    }
    std::string config_opt;
    app.add_option("--config", config_opt, "key = value configuration file");

    double tol_override = -1.0;
    std::string out_dir = ".";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--a", cfg.a, "disk radius");
        sub->add_option("--order-regular", cfg.order_regular, "far-pair quadrature order");
        sub->add_option("--order-singular", cfg.order_singular, "singular-pair quadrature order");
    };

    CLI::App* eigs = app.add_subcommand("eigs", "dump the lambda table as CSV");
    eigs->add_option("--lmax", cfg.lmax, "maximum degree");
    eigs->add_option("--out", cfg.out, "output CSV path")->required();

    CLI::App* mesh = app.add_subcommand("mesh", "write a disk mesh as CSV pair");
    mesh->add_option("--level", cfg.level, "refinement level");
    mesh->add_option("--out-dir", out_dir, "output directory");
    add_common(mesh);

    CLI::App* assemble = app.add_subcommand("assemble", "write a Galerkin matrix");
    assemble->add_option("--operator", cfg.op, "V, W, Vbar, Wbar or mass");
    assemble->add_option("--space", cfg.space, "P0, P1 or P1_0");
    assemble->add_option("--level", cfg.level, "refinement level");
    assemble->add_option("--out", cfg.out, "output file")->required();
    add_common(assemble);

    CLI::App* verify = app.add_subcommand("verify", "run an identity verification suite");
    verify->add_option("--suite", cfg.suite,
                       "kernels, wolfe, krenk, vbar, wbar, wbar1 or calderon")
        ->required();
    verify->add_option("--tol", tol_override, "override the per-check tolerances");
    verify->add_option("--out", cfg.out, "output CSV path");
    add_common(verify);

    CLI::App* precond = app.add_subcommand("precond", "operator preconditioning study");
    precond->add_option("--pair", cfg.pair, "VWbar or WVbar");
    precond->add_option("--levels", [&cfg](const std::vector<std::string>& vals) {
        cfg.levels = diskbio::detail::parse_levels(vals.at(0), "--levels");
        return true;
    }, "comma-separated refinement levels");
    precond->add_option("--out", cfg.out, "output JSON path")->required();
    add_common(precond);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (eigs->parsed()) return run_eigs(cfg);
        if (mesh->parsed()) return run_mesh(cfg, out_dir);
        if (assemble->parsed()) return run_assemble(cfg);
        if (verify->parsed()) {
            if (cfg.out.empty()) cfg.out = "verify_" + cfg.suite + ".csv";
            return run_verify(cfg, tol_override);
        }
        if (precond->parsed()) return run_precond(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}
