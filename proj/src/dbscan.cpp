#include "mdbscan/dbscan.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

namespace mdbscan {

namespace {

constexpr int UNVISITED = -2;

void check_params(const Params& params) {
    if (!(params.eps > 0.0) || !std::isfinite(params.eps)) {
        throw std::invalid_argument("dbscan: eps must be positive and finite");
    }
    if (params.min_pts < 1) {
        throw std::invalid_argument("dbscan: min_pts must be at least 1");
    }
}

std::vector<char> active_mask(int n, const std::vector<int>* active) {
    if (!active) return std::vector<char>(n, 1);
    std::vector<char> mask(n, 0);
    for (int idx : *active) {
        if (idx < 0 || idx >= n) {
            throw std::invalid_argument("dbscan: active index " + std::to_string(idx) +
                                        " out of range");
        }
        mask[idx] = 1;
    }
    return mask;
}

}  // namespace

const char* role_name(Role r) {
    switch (r) {
        case Role::CORE: return "core";
        case Role::BORDER: return "border";
        case Role::NOISE_PT: return "noise";
    }
    return "noise";
}

Labeling cluster(const Dataset& data, const KdTree& tree, const Params& params,
                 const DistanceSpec& spec, const std::vector<int>* active) {
    check_params(params);
    spec.validate(data.dim);
    const int n = data.size();
    const std::vector<char> mask = active_mask(n, active);

    Labeling out;
    out.label.assign(n, UNVISITED);
    out.role.assign(n, Role::NOISE_PT);
    out.border_ambiguous.assign(n, 0);

    const auto neighborhood = [&](int idx) {
        std::vector<int> hood = tree.range_query(data.points[idx], params.eps, spec);
        if (active) {
            hood.erase(std::remove_if(hood.begin(), hood.end(),
                                      [&](int j) { return !mask[j]; }),
                       hood.end());
        }
        return hood;  // ascending, includes idx itself
    };

    for (int i = 0; i < n; ++i) {
        if (!mask[i]) {
            out.label[i] = NOISE;
            continue;
        }
        if (out.label[i] != UNVISITED) continue;
        const std::vector<int> hood = neighborhood(i);
        if (static_cast<int>(hood.size()) < params.min_pts) {
            continue;  // provisionally noise; may become border later
        }
        const int cid = out.cluster_count++;
        std::deque<int> queue(hood.begin(), hood.end());
        out.label[i] = cid;
        out.role[i] = Role::CORE;
        while (!queue.empty()) {
            const int j = queue.front();
            queue.pop_front();
            if (out.label[j] == cid) continue;  // seed or already expanded
            if (out.label[j] >= 0) {
                // Claimed by an earlier cluster; a border point reached from a
                // second cluster is ambiguous by definition.
                if (out.role[j] == Role::BORDER) out.border_ambiguous[j] = 1;
                continue;
            }
            out.label[j] = cid;
            const std::vector<int> hood_j = neighborhood(j);
            if (static_cast<int>(hood_j.size()) < params.min_pts) {
                if (out.role[j] != Role::CORE) out.role[j] = Role::BORDER;
                continue;
            }
            out.role[j] = Role::CORE;
            for (int q : hood_j) {
                if (out.label[q] == UNVISITED) {
                    queue.push_back(q);
                } else if (out.label[q] >= 0 && out.label[q] != cid &&
                           out.role[q] == Role::BORDER) {
                    out.border_ambiguous[q] = 1;
                }
            }
        }
    }

    for (int i = 0; i < n; ++i) {
        if (out.label[i] == UNVISITED) out.label[i] = NOISE;
    }
    return out;
}

Labeling brute_force_reference(const Dataset& data, const Params& params,
                               const DistanceSpec& spec, const std::vector<int>* active,
                               int max_points) {
    check_params(params);
    spec.validate(data.dim);
    const int n = data.size();
    if (n > max_points) {
        throw std::invalid_argument("dbscan: reference labeler refuses " + std::to_string(n) +
                                    " points (limit " + std::to_string(max_points) + ")");
    }
    const std::vector<char> mask = active_mask(n, active);

    std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = distance(data.points[i], data.points[j], spec);
            dist[static_cast<std::size_t>(i) * n + j] = d;
            dist[static_cast<std::size_t>(j) * n + i] = d;
        }
    }
    const auto within = [&](int i, int j) {
        return dist[static_cast<std::size_t>(i) * n + j] <= params.eps;
    };

    std::vector<char> core(n, 0);
    for (int i = 0; i < n; ++i) {
        if (!mask[i]) continue;
        int count = 0;
        for (int j = 0; j < n; ++j) {
            if (mask[j] && within(i, j)) ++count;
        }
        core[i] = count >= params.min_pts;
    }

    Labeling out;
    out.label.assign(n, NOISE);
    out.role.assign(n, Role::NOISE_PT);
    out.border_ambiguous.assign(n, 0);

    // Transitive closure over core points, components numbered by their
    // lowest core index.
    for (int i = 0; i < n; ++i) {
        if (!core[i] || out.label[i] != NOISE) continue;
        const int cid = out.cluster_count++;
        std::deque<int> queue{i};
        out.label[i] = cid;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            out.role[u] = Role::CORE;
            for (int v = 0; v < n; ++v) {
                if (core[v] && out.label[v] == NOISE && within(u, v)) {
                    out.label[v] = cid;
                    queue.push_back(v);
                }
            }
        }
    }

    std::vector<int> reaching;
    for (int i = 0; i < n; ++i) {
        if (!mask[i] || core[i]) continue;
        reaching.clear();
        for (int j = 0; j < n; ++j) {
            if (!core[j] || !within(i, j)) continue;
            if (std::find(reaching.begin(), reaching.end(), out.label[j]) == reaching.end()) {
                reaching.push_back(out.label[j]);
            }
        }
        if (!reaching.empty()) {
            out.label[i] = reaching.front();  // cluster of the lowest-index core neighbor
            out.role[i] = Role::BORDER;
            out.border_ambiguous[i] = reaching.size() > 1;
        }
    }
    return out;
}

}  // namespace mdbscan
