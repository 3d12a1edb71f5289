#pragma once

#include <string>
#include <vector>

#include "mdbscan/dbscan.hpp"

namespace mdbscan {

struct QualityReport {
    double ari = 0.0;
    double purity = 0.0;
    double noise_ratio = 0.0;
    int cluster_count = 0;
    int pair_count = 0;
    double runtime_ms = 0.0;
    bool has_truth = false;
    bool all_noise = false;  // no clustered point was available for purity

    std::string to_text() const;           // flat key=value lines
    static std::string csv_header();
    std::string to_csv_row() const;
};

/// Adjusted Rand index between two label vectors. NOISE entries count as
/// singleton classes on both sides, so a correctly recognized noise point
/// agrees with the ground truth and a scattered cluster is penalized.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

/// Fraction of clustered (non-NOISE) points whose cluster's majority truth
/// class matches their own. Returns 0 and sets *all_noise when nothing was
/// clustered.
double purity(const std::vector<int>& pred, const std::vector<int>& truth,
              bool* all_noise = nullptr);

QualityReport evaluate(const Labeling& labeling, const std::vector<int>* truth,
                       int pair_count, double runtime_ms);

}  // namespace mdbscan
