#pragma once

#include <algorithm>
#include <vector>

#include "mdbscan/dbscan.hpp"

namespace mdbscan {

/// Leaf capacity used when a config leaves leaf_capacity at zero. Cells need
/// a few dozen members for stable neighbor-distance statistics, and the n/64
/// term keeps the cell count bounded on large inputs.
inline int derived_leaf_capacity(int n) { return std::max(32, (n + 63) / 64); }

struct ParamPair {
    double eps = 0.0;
    int min_pts = 0;
    int population = 0;            // points contributing to this pair
    double priority = 0.0;         // equal to eps; lower runs first
    std::vector<int> source_cells; // leaf cell ids absorbed into this pair
};

struct AutoConfig {
    int leaf_capacity = 0;         // 0 derives max(32, ceil(n/64))
    SplitRule split_rule = SplitRule::MEDIAN;
    double merge_tol_eps = 0.55;   // relative eps gap allowed when merging
    int min_pts_floor = 4;
    /// Density contrast a cell must show against a uniform background spread
    /// over the data extent before it may propose a pair; 0 disables the test.
    double background_rejection = 1.1;
    /// Non-empty switches to seeded mode: only leaf cells containing at least
    /// one of these locations propose pairs. All points stay clusterable.
    std::vector<std::vector<double>> seeds;

    int seed_count() const { return static_cast<int>(seeds.size()); }
};

struct AutoResult {
    Labeling labeling;
    std::vector<ParamPair> pairs;  // the prioritized list the passes ran with
};

/// Per-point distance to its rank-th nearest member of the same cell, the
/// point itself counting at rank 1. rank is clamped to the cell size.
std::vector<double> cell_kdists(const std::vector<int>& cell_points, const Dataset& data,
                                const DistanceSpec& spec, int rank);

/// Derives the (eps, min_pts) proposal of one leaf cell: min_pts from the
/// cell's population, eps from an upper quantile of the members' min_pts-th
/// neighbor distances inside the cell. Cells of identical points fall back to
/// the smallest positive inter-point distance of the whole dataset.
ParamPair cell_params(const std::vector<int>& cell_points, const Dataset& data,
                      const KdTree& tree, const DistanceSpec& spec, const AutoConfig& cfg);

/// Greedy merge of parameter pairs: repeatedly fuses the two pairs of equal
/// min_pts with the smallest relative eps gap while that gap stays within
/// merge_tol_eps. The merged eps is the population-weighted mean; populations
/// add; source cells accumulate. Output is sorted by eps ascending.
std::vector<ParamPair> merge_pairs(std::vector<ParamPair> pairs, const AutoConfig& cfg);

/// Sorts pairs for execution: eps ascending, ties broken by larger
/// population, then smaller min_pts.
std::vector<ParamPair> prioritize(std::vector<ParamPair> pairs);

/// Full pipeline: build the tree, derive one pair per eligible leaf cell,
/// merge and order them, then run one clustering pass per pair over the
/// points no earlier pass claimed. Cluster ids are globally renumbered in
/// pass order; points never claimed end as NOISE.
AutoResult cluster_auto(const Dataset& data, const DistanceSpec& spec, const AutoConfig& cfg);

}  // namespace mdbscan
