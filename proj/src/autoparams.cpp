#include "mdbscan/autoparams.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mdbscan {

namespace {

// Order statistic used as the cell eps: high enough that nearly every cell
// member satisfies the core premise at the proposed radius.
constexpr double EPS_QUANTILE = 0.90;

int derive_min_pts(int cell_size, int floor) {
    const long rounded = std::lround(std::log2(static_cast<double>(cell_size)));
    return std::max(floor, static_cast<int>(rounded));
}

double smallest_positive_pairwise(const Dataset& data, const DistanceSpec& spec) {
    double best = 0.0;
    for (int i = 0; i < data.size(); ++i) {
        for (int j = i + 1; j < data.size(); ++j) {
            const double d = distance(data.points[i], data.points[j], spec);
            if (d > 0.0 && (best == 0.0 || d < best)) best = d;
        }
    }
    return best;  // 0 when every point coincides
}

// Mean distance to the k-th nearest neighbor expected from a homogeneous
// point field at the dataset's overall density, under the active metric.
// Returns 0 when no background model applies (degenerate extent).
double expected_background_kdist(const Dataset& data, const DistanceSpec& spec, int k) {
    if (k < 1) return 0.0;
    const int dim = data.dim;
    const bool weighted = !spec.weights.empty();
    double log_volume = 0.0;
    double log_ball = 0.0;
    int d_eff = 0;
    for (int j = 0; j < dim; ++j) {
        const double w = weighted ? spec.weights[j] : 1.0;
        if (w <= 0.0) continue;
        double lo = data.points[0].coords[j];
        double hi = lo;
        for (const Point& p : data.points) {
            lo = std::min(lo, p.coords[j]);
            hi = std::max(hi, p.coords[j]);
        }
        if (hi <= lo) continue;
        log_volume += std::log(hi - lo);
        log_ball += -std::log(w) / spec.q;
        ++d_eff;
    }
    if (d_eff == 0) return 0.0;
    // Unit ball volume of the weighted q-norm restricted to the effective axes.
    log_ball += d_eff * std::log(2.0 * std::tgamma(1.0 + 1.0 / spec.q)) -
                std::lgamma(1.0 + static_cast<double>(d_eff) / spec.q);
    const double log_lambda = std::log(static_cast<double>(data.size())) - log_volume;
    const double gamma_ratio = std::exp(std::lgamma(k + 1.0 / d_eff) - std::lgamma(static_cast<double>(k)));
    return gamma_ratio * std::exp(-(log_lambda + log_ball) / d_eff);
}

double mean_of(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

double upper_quantile(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto n = static_cast<double>(v.size());
    const auto rank = static_cast<std::size_t>(std::ceil(EPS_QUANTILE * n));
    return v[std::max<std::size_t>(rank, 1) - 1];
}

bool mergeable(const ParamPair& a, const ParamPair& b, double tol, double* gap) {
    if (a.min_pts != b.min_pts) return false;
    *gap = std::abs(a.eps - b.eps) / std::max(a.eps, b.eps);
    return *gap <= tol;
}

void canonical_sort(std::vector<ParamPair>& pairs) {
    std::stable_sort(pairs.begin(), pairs.end(), [](const ParamPair& a, const ParamPair& b) {
        if (a.eps != b.eps) return a.eps < b.eps;
        if (a.min_pts != b.min_pts) return a.min_pts < b.min_pts;
        return a.population < b.population;
    });
}

}  // namespace

std::vector<double> cell_kdists(const std::vector<int>& cell_points, const Dataset& data,
                                const DistanceSpec& spec, int rank) {
    const int s = static_cast<int>(cell_points.size());
    if (s < 1) throw std::invalid_argument("autoparams: empty cell");
    rank = std::clamp(rank, 1, s);
    std::vector<double> kdists;
    kdists.reserve(s);
    std::vector<double> dists(s);
    for (int a = 0; a < s; ++a) {
        for (int b = 0; b < s; ++b) {
            dists[b] = distance(data.points[cell_points[a]], data.points[cell_points[b]], spec);
        }
        std::nth_element(dists.begin(), dists.begin() + (rank - 1), dists.end());
        kdists.push_back(dists[rank - 1]);
    }
    return kdists;
}

ParamPair cell_params(const std::vector<int>& cell_points, const Dataset& data,
                      const KdTree& /*tree*/, const DistanceSpec& spec, const AutoConfig& cfg) {
    if (cell_points.size() < 2) {
        throw std::invalid_argument("autoparams: cell_params needs at least 2 points");
    }
    spec.validate(data.dim);
    const int s = static_cast<int>(cell_points.size());
    ParamPair pair;
    pair.min_pts = derive_min_pts(s, cfg.min_pts_floor);
    pair.population = s;

    const int rank = std::min(pair.min_pts, s);
    std::vector<double> kdists = cell_kdists(cell_points, data, spec, rank);
    pair.eps = upper_quantile(kdists);
    if (pair.eps <= 0.0) {
        // Duplicate-dominated cell: use the smallest positive neighbor gap in
        // the cell, falling back to the dataset, then to 1.
        double candidate = 0.0;
        for (double d : kdists) {
            if (d > 0.0 && (candidate == 0.0 || d < candidate)) candidate = d;
        }
        if (candidate == 0.0) candidate = smallest_positive_pairwise(data, spec);
        pair.eps = candidate > 0.0 ? candidate : 1.0;
    }
    pair.priority = pair.eps;
    return pair;
}

std::vector<ParamPair> merge_pairs(std::vector<ParamPair> pairs, const AutoConfig& cfg) {
    if (cfg.merge_tol_eps < 0.0) {
        throw std::invalid_argument("autoparams: merge tolerance must be non-negative");
    }
    canonical_sort(pairs);
    while (pairs.size() > 1) {
        double best_gap = std::numeric_limits<double>::infinity();
        std::size_t best_i = 0, best_j = 0;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            for (std::size_t j = i + 1; j < pairs.size(); ++j) {
                double gap = 0.0;
                if (mergeable(pairs[i], pairs[j], cfg.merge_tol_eps, &gap) && gap < best_gap) {
                    best_gap = gap;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (!std::isfinite(best_gap)) break;
        ParamPair& a = pairs[best_i];
        const ParamPair& b = pairs[best_j];
        const double pop_a = a.population, pop_b = b.population;
        a.eps = (a.eps * pop_a + b.eps * pop_b) / (pop_a + pop_b);
        a.population += b.population;
        a.source_cells.insert(a.source_cells.end(), b.source_cells.begin(), b.source_cells.end());
        std::sort(a.source_cells.begin(), a.source_cells.end());
        a.priority = a.eps;
        pairs.erase(pairs.begin() + best_j);
        canonical_sort(pairs);
    }
    canonical_sort(pairs);
    return pairs;
}

std::vector<ParamPair> prioritize(std::vector<ParamPair> pairs) {
    std::stable_sort(pairs.begin(), pairs.end(), [](const ParamPair& a, const ParamPair& b) {
        if (a.priority != b.priority) return a.priority < b.priority;
        if (a.population != b.population) return a.population > b.population;
        return a.min_pts < b.min_pts;
    });
    return pairs;
}

AutoResult cluster_auto(const Dataset& data, const DistanceSpec& spec, const AutoConfig& cfg) {
    data.validate();
    spec.validate(data.dim);
    if (cfg.min_pts_floor < 1) {
        throw std::invalid_argument("autoparams: min_pts floor must be at least 1");
    }
    const int n = data.size();

    AutoResult result;
    result.labeling.label.assign(n, NOISE);
    result.labeling.role.assign(n, Role::NOISE_PT);
    result.labeling.border_ambiguous.assign(n, 0);
    result.labeling.cluster_count = 0;
    if (n < 2) return result;

    const int capacity = cfg.leaf_capacity > 0 ? cfg.leaf_capacity
                                               : derived_leaf_capacity(n);
    const KdTree tree = KdTree::build(data, capacity, cfg.split_rule);
    const std::vector<KdTree::LeafCell> cells = tree.leaf_cells();
    const int cell_count = static_cast<int>(cells.size());

    std::vector<char> eligible(cell_count, 1);
    if (cfg.seed_count() > 0) {
        eligible.assign(cell_count, 0);
        for (const std::vector<double>& seed : cfg.seeds) {
            eligible[tree.leaf_for(seed)] = 1;
        }
    }

    // One proposal per eligible multi-point cell; singleton cells hand their
    // point to the proposal of the nearest proposing cell.
    std::vector<int> proposing;      // cell ids
    std::vector<int> singletons;     // cell ids
    for (int c = 0; c < cell_count; ++c) {
        if (!eligible[c]) continue;
        (cells[c].indices.size() >= 2 ? proposing : singletons).push_back(c);
    }
    if (proposing.empty()) return result;

    int max_population = 0;
    for (int c : proposing) {
        max_population = std::max(max_population, static_cast<int>(cells[c].indices.size()));
    }

    std::vector<ParamPair> pairs;
    std::vector<int> pair_cell;  // proposing cell of pairs[i]
    for (int c : proposing) {
        ParamPair pair = cell_params(cells[c].indices, data, tree, spec, cfg);
        pair.min_pts = std::min(pair.min_pts, max_population);
        pair.source_cells = {c};
        pairs.push_back(std::move(pair));
        pair_cell.push_back(c);
    }

    for (int c : singletons) {
        const int point = cells[c].indices.front();
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_pair = 0;
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            for (int idx : cells[pair_cell[p]].indices) {
                const double d = distance(data.points[point], data.points[idx], spec);
                if (d < best) {
                    best = d;
                    best_pair = p;
                }
            }
        }
        pairs[best_pair].population += 1;
        pairs[best_pair].source_cells.push_back(c);
        std::sort(pairs[best_pair].source_cells.begin(), pairs[best_pair].source_cells.end());
    }

    if (cfg.background_rejection > 0.0) {
        std::vector<ParamPair> kept;
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const std::vector<int>& members = cells[pair_cell[p]].indices;
            const int rank = std::min(pairs[p].min_pts, static_cast<int>(members.size()));
            const double measured = mean_of(cell_kdists(members, data, spec, rank));
            const double expected = expected_background_kdist(data, spec, rank - 1);
            if (measured <= 0.0 || expected <= 0.0 ||
                expected / measured >= cfg.background_rejection) {
                kept.push_back(std::move(pairs[p]));
            }
        }
        pairs = std::move(kept);
        if (pairs.empty()) return result;
    }

    pairs = prioritize(merge_pairs(std::move(pairs), cfg));

    std::vector<char> claimed(n, 0);
    std::vector<int> active;
    for (const ParamPair& pair : pairs) {
        active.clear();
        for (int i = 0; i < n; ++i) {
            if (!claimed[i]) active.push_back(i);
        }
        if (active.empty()) break;
        const Labeling pass = cluster(data, tree, Params{pair.eps, pair.min_pts}, spec, &active);
        const int base = result.labeling.cluster_count;
        for (int i = 0; i < n; ++i) {
            if (pass.label[i] == NOISE) continue;
            result.labeling.label[i] = base + pass.label[i];
            result.labeling.role[i] = pass.role[i];
            result.labeling.border_ambiguous[i] = pass.border_ambiguous[i];
            claimed[i] = 1;
        }
        result.labeling.cluster_count += pass.cluster_count;
    }
    result.pairs = pairs;
    return result;
}

}  // namespace mdbscan
