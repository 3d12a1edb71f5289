#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mdbscan/autoparams.hpp"
#include "mdbscan/dbscan.hpp"
#include "mdbscan/geometry.hpp"
#include "mdbscan/metrics.hpp"

namespace mdbscan {

enum class Mode { MANUAL, AUTO };

/// Everything one batch invocation needs. Exactly one of input_path /
/// preset_name must be set.
struct RunConfig {
    std::string input_path;
    std::string preset_name;
    Mode mode = Mode::AUTO;
    std::optional<double> eps;
    std::optional<int> min_pts;
    double q = 2.0;
    std::vector<double> weights;
    int truth_col = -1;
    AutoConfig auto_cfg;
    std::string seeds_file;
    std::string out_labels;
    std::string out_report;
    std::string out_svg;
    int plot_dim_x = 0;
    int plot_dim_y = 1;
    std::optional<std::uint64_t> rng_seed;
};

struct RunResult {
    Dataset data;
    Labeling labeling;
    std::vector<ParamPair> pairs;
    QualityReport report;
};

/// Load data, cluster, score, and write any requested outputs. Throws
/// config_error / input_error on bad configuration or unreadable input.
RunResult execute(const RunConfig& cfg);

/// execute() wrapped for process use: prints diagnostics to stderr and maps
/// outcomes to exit codes (0 ok, 2 input error, 3 config error, 4 internal).
int run(const RunConfig& cfg);

}  // namespace mdbscan
