#include "mdbscan/runner.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

#include "mdbscan/csv.hpp"
#include "mdbscan/datagen.hpp"
#include "mdbscan/kdtree.hpp"
#include "mdbscan/svg.hpp"

namespace mdbscan {

namespace {

Dataset load_data(const RunConfig& cfg) {
    const bool have_input = !cfg.input_path.empty();
    const bool have_preset = !cfg.preset_name.empty();
    if (have_input == have_preset) {
        throw config_error("exactly one of input path and preset name must be given");
    }
    if (have_input) {
        return read_csv(cfg.input_path, cfg.truth_col);
    }
    GenSpec spec;
    try {
        spec = preset(cfg.preset_name);
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
    if (cfg.rng_seed) spec.rng_seed = *cfg.rng_seed;
    return generate(spec);
}

DistanceSpec distance_spec(const RunConfig& cfg, int dim) {
    DistanceSpec spec;
    spec.q = cfg.q;
    spec.weights = cfg.weights;
    try {
        spec.validate(dim);
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
    return spec;
}

}  // namespace

RunResult execute(const RunConfig& cfg) {
    if (cfg.mode == Mode::MANUAL) {
        if (!cfg.eps || !cfg.min_pts) {
            throw config_error("manual mode requires both eps and min_pts");
        }
    } else {
        if (cfg.eps || cfg.min_pts) {
            throw config_error("auto mode derives eps and min_pts; do not pass them");
        }
    }

    RunResult result;
    result.data = load_data(cfg);
    const DistanceSpec spec = distance_spec(cfg, result.data.dim);

    AutoConfig auto_cfg = cfg.auto_cfg;
    if (!cfg.seeds_file.empty()) {
        const Dataset seeds = read_csv(cfg.seeds_file, -1);
        if (seeds.dim != result.data.dim) {
            throw config_error("seed points have dimension " + std::to_string(seeds.dim) +
                               " but data has dimension " + std::to_string(result.data.dim));
        }
        for (const Point& p : seeds.points) auto_cfg.seeds.push_back(p.coords);
    }

    const auto start = std::chrono::steady_clock::now();
    if (cfg.mode == Mode::MANUAL) {
        const KdTree tree = KdTree::build(result.data, auto_cfg.leaf_capacity > 0
                                                          ? auto_cfg.leaf_capacity
                                                          : derived_leaf_capacity(
                                                                result.data.size()),
                                          auto_cfg.split_rule);
        Params params;
        params.eps = *cfg.eps;
        params.min_pts = *cfg.min_pts;
        try {
            result.labeling = cluster(result.data, tree, params, spec);
        } catch (const std::invalid_argument& e) {
            throw config_error(e.what());
        }
        ParamPair pair;
        pair.eps = params.eps;
        pair.min_pts = params.min_pts;
        pair.population = result.data.size();
        pair.priority = 0;
        result.pairs.push_back(pair);
    } else {
        AutoResult auto_result = cluster_auto(result.data, spec, auto_cfg);
        result.labeling = std::move(auto_result.labeling);
        result.pairs = std::move(auto_result.pairs);
    }
    const auto stop = std::chrono::steady_clock::now();
    const double runtime_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(stop - start)
            .count();

    result.report = evaluate(result.labeling,
                             result.data.has_truth() ? &*result.data.truth : nullptr,
                             static_cast<int>(result.pairs.size()), runtime_ms);

    if (!cfg.out_labels.empty()) {
        write_labels_csv(cfg.out_labels, result.data, result.labeling);
    }
    if (!cfg.out_report.empty()) {
        std::ofstream out(cfg.out_report);
        if (!out) {
            throw input_error("cannot open output file: " + cfg.out_report);
        }
        out << result.report.to_text();
        out << "pairs:\n";
        for (const ParamPair& pair : result.pairs) {
            out << "  eps=" << format_value(pair.eps) << " min_pts=" << pair.min_pts
                << " population=" << pair.population << " priority=" << pair.priority << "\n";
        }
    }
    if (!cfg.out_svg.empty()) {
        write_svg(cfg.out_svg, result.data, result.labeling, cfg.plot_dim_x, cfg.plot_dim_y);
    }
    return result;
}

int run(const RunConfig& cfg) {
    try {
        const RunResult result = execute(cfg);
        std::cout << result.report.to_text();
        return 0;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace mdbscan
