#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "szego/cli.hpp"

namespace szego::cli {

/// Parses argv into a RunConfig and runs it. Exit codes follow run().
inline int main_with(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hankel spectral transform and cubic Szego flow toolkit", "szego_lab"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::vector<std::string> tol;
    app.add_option("--tol", tol, "tolerance override key=value (repeatable)");

    std::size_t M = 0, N_max = 0;
    double h = 0, theta = 0, r = 0;
    std::string z, grid, config_path;

    auto* reconstruct = app.add_subcommand("reconstruct", "spectral data -> Taylor coefficients");
    reconstruct->add_option("--data", cfg.data, "spectral data JSON")->required();
    auto* rec_M = reconstruct->add_option("--modes", M, "number of coefficients")->required();
    reconstruct->add_option("--out", cfg.out, "output file (.csv or .json), stdout if omitted");

    auto* spectrum = app.add_subcommand("spectrum", "coefficients -> Hankel singular values");
    spectrum->add_option("--coeffs", cfg.coeffs, "coefficient file (CSV n,re,im or JSON)")->required();
    auto* spec_M = spectrum->add_option("--M", M, "Hankel truncation");
    spectrum->add_option("--out", cfg.out, "spectrum CSV");

    auto* flow = app.add_subcommand("flow", "integrate the cubic Szego equation");
    auto* flow_data = flow->add_option("--data", cfg.data, "spectral data JSON");
    flow->add_option("--coeffs", cfg.coeffs, "initial coefficients instead of spectral data")->excludes(flow_data);
    flow->add_option("--T", cfg.T, "final time")->required();
    flow->add_option("--dt", cfg.dt, "time step")->required();
    auto* flow_M = flow->add_option("--modes", M, "Fourier modes")->required();
    flow->add_option("--samples", cfg.samples, "number of recorded states after t = 0");
    flow->add_option("--out", cfg.out, "trajectory CSV");

    auto* compare = app.add_subcommand("flow-compare", "spectral route vs integrated route");
    compare->add_option("--data", cfg.data, "spectral data JSON")->required();
    compare->add_option("--T", cfg.T, "final time")->required();
    compare->add_option("--dt", cfg.dt, "time step")->required();
    auto* cmp_M = compare->add_option("--modes", M, "Fourier modes")->required();

    auto* certify = app.add_subcommand("certify", "Cauchy-matrix operator bounds");
    certify->add_option("--data", cfg.data, "spectral data JSON")->required();

    auto* geometric = app.add_subcommand("geometric", "totally geometric data: Toeplitz route and F_gamma checks");
    geometric->set_help_flag("--help", "print this help message and exit");
    geometric->add_option("--h", h, "decay rate h > 0")->required();
    geometric->add_option("--theta", theta, "angle slope")->required();
    geometric->add_option("--z", z, "evaluation point RE,IM");
    auto* geo_r = geometric->add_option("--r", r, "Toeplitz radius in (gamma, 1)");
    geometric->add_option("--N-max", N_max, "largest truncation")->required();
    geometric->add_option("--out-dir", cfg.out_dir, "directory for index_profile.csv and stability.csv");

    auto* c1 = app.add_subcommand("c1", "closed-form C^1 norm for vanishing angles");
    c1->add_option("--data", cfg.data, "spectral data JSON")->required();

    auto* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
    sweep->add_option("--kind", cfg.sweep_kind, "zero_gap | operator_bounds | winding")->required();
    sweep->add_option("--grid", grid, "start:stop:step or comma list")->required();
    sweep->add_option("--N", cfg.N, "N for operator_bounds");
    sweep->add_option("--out", cfg.out, "output CSV, stdout if omitted");

    auto* run_cfg = app.add_subcommand("run", "run a JSON config");
    run_cfg->add_option("--config", config_path, "config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (run_cfg->parsed()) {
            cfg = config_from_json(io::parse_json(io::read_file(config_path), config_path));
        } else {
            if (reconstruct->parsed()) cfg.command = Command::reconstruct;
            if (spectrum->parsed()) cfg.command = Command::spectrum;
            if (flow->parsed()) cfg.command = Command::flow;
            if (compare->parsed()) cfg.command = Command::flow_compare;
            if (certify->parsed()) cfg.command = Command::certify;
            if (geometric->parsed()) cfg.command = Command::geometric;
            if (c1->parsed()) cfg.command = Command::c1;
            if (sweep->parsed()) cfg.command = Command::sweep;
            if (rec_M->count() || spec_M->count() || flow_M->count() || cmp_M->count()) cfg.M = M;
            if (geometric->parsed()) {
                cfg.h = h;
                cfg.theta = theta;
                cfg.N_max = N_max;
                if (geo_r->count()) cfg.r = r;
                if (!z.empty()) cfg.z = parse_complex(z);
            }
            if (sweep->parsed()) cfg.grid = parse_grid(grid);
        }
        for (const auto& t : tol) {
            const auto [k, v] = parse_tolerance(t);
            Tolerances probe;
            set_tolerance(probe, k, v);
            cfg.tol_overrides[k] = v;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return is_validation_error(e.kind()) ? 2 : 3;
    }
    return run(cfg, out, err);
}

}  // namespace szego::cli
