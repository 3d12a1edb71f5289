#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "mdbscan/runner.hpp"

namespace {

// "0,1" style pair for --plot-dims.
bool parse_dims(const std::string& text, int* x, int* y) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return false;
    try {
        std::size_t used = 0;
        *x = std::stoi(text.substr(0, comma), &used);
        if (used != comma) return false;
        const std::string rest = text.substr(comma + 1);
        *y = std::stoi(rest, &used);
        if (used != rest.size()) return false;
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"density-based clustering with automatic parameter generation"};

    mdbscan::RunConfig cfg;
    std::string mode_text = "auto";
    std::string split_text = "median";
    std::string dims_text;
    double eps_value = 0.0;
    int min_pts_value = 0;
    std::uint64_t seed_value = 0;

    app.add_option("--input", cfg.input_path, "input CSV path");
    app.add_option("--preset", cfg.preset_name, "built-in dataset preset name");
    app.add_option("--mode", mode_text, "manual or auto")
        ->check(CLI::IsMember({"manual", "auto"}));
    CLI::Option* eps_opt = app.add_option("--eps", eps_value, "manual mode radius");
    CLI::Option* min_pts_opt = app.add_option("--min-pts", min_pts_value, "manual mode density threshold");
    app.add_option("--q", cfg.q, "Minkowski exponent (>= 1)");
    app.add_option("--weights", cfg.weights, "per-dimension weights")->delimiter(',');
    app.add_option("--truth-col", cfg.truth_col, "zero-based truth column index in the input CSV");
    app.add_option("--leaf-capacity", cfg.auto_cfg.leaf_capacity, "kd-tree leaf capacity (0 = derive from n)");
    app.add_option("--split-rule", split_text, "median or mean")
        ->check(CLI::IsMember({"median", "mean"}));
    app.add_option("--merge-tol", cfg.auto_cfg.merge_tol_eps, "relative eps gap below which pairs merge");
    app.add_option("--min-pts-floor", cfg.auto_cfg.min_pts_floor, "lower bound for derived min_pts");
    app.add_option("--seeds-file", cfg.seeds_file, "CSV of seed points restricting parameter generation");
    app.add_option("--out-labels", cfg.out_labels, "labels CSV output path");
    app.add_option("--out-report", cfg.out_report, "quality report output path");
    app.add_option("--out-svg", cfg.out_svg, "scatter plot SVG output path");
    app.add_option("--plot-dims", dims_text, "two comma-separated column indices, default 0,1");
    CLI::Option* seed_opt = app.add_option("--rng-seed", seed_value, "override the preset generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    cfg.mode = mode_text == "manual" ? mdbscan::Mode::MANUAL : mdbscan::Mode::AUTO;
    cfg.auto_cfg.split_rule =
        split_text == "mean" ? mdbscan::SplitRule::MEAN : mdbscan::SplitRule::MEDIAN;
    if (eps_opt->count() > 0) cfg.eps = eps_value;
    if (min_pts_opt->count() > 0) cfg.min_pts = min_pts_value;
    if (seed_opt->count() > 0) cfg.rng_seed = seed_value;
    if (!dims_text.empty()) {
        if (!parse_dims(dims_text, &cfg.plot_dim_x, &cfg.plot_dim_y)) {
            std::cerr << "config error: --plot-dims expects two comma-separated integers\n";
            return 3;
        }
    }

    return mdbscan::run(cfg);
}
