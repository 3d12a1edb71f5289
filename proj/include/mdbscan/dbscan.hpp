#pragma once

#include <vector>

#include "mdbscan/kdtree.hpp"

namespace mdbscan {

struct Params {
    double eps = 0.0;
    int min_pts = 0;  // neighborhood count threshold, the point itself included
};

enum class Role : unsigned char { CORE, BORDER, NOISE_PT };

struct Labeling {
    std::vector<int> label;                    // NOISE or cluster id
    std::vector<Role> role;
    std::vector<unsigned char> border_ambiguous;  // border point reachable from 2+ clusters
    int cluster_count = 0;
};

const char* role_name(Role r);

/// Density clustering over a kd-tree. Cluster ids are assigned in order of the
/// first core point met by the ascending index scan; seed queues are FIFO with
/// neighborhoods sorted by index, so the labeling is deterministic. When an
/// active set is given, both seeds and neighborhoods are restricted to it and
/// points outside it come back as NOISE.
Labeling cluster(const Dataset& data, const KdTree& tree, const Params& params,
                 const DistanceSpec& spec, const std::vector<int>* active = nullptr);

/// Reference implementation without any spatial index: full distance matrix
/// and explicit transitive closure over core points. Border points go to the
/// cluster of their lowest-index core neighbor, which may differ from
/// cluster() only on points flagged border_ambiguous. Refuses datasets larger
/// than max_points.
Labeling brute_force_reference(const Dataset& data, const Params& params,
                               const DistanceSpec& spec,
                               const std::vector<int>* active = nullptr,
                               int max_points = 2000);

}  // namespace mdbscan
