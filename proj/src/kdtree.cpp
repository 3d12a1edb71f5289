#include "mdbscan/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

namespace mdbscan {

namespace {

BoundingBox tight_box(const Dataset& data, const std::vector<int>& order, int first, int count) {
    BoundingBox box;
    const int dim = data.dim;
    box.min.assign(dim, 0.0);
    box.max.assign(dim, 0.0);
    for (int j = 0; j < dim; ++j) {
        double lo = data.points[order[first]].coords[j];
        double hi = lo;
        for (int i = first + 1; i < first + count; ++i) {
            const double c = data.points[order[i]].coords[j];
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        box.min[j] = lo;
        box.max[j] = hi;
    }
    return box;
}

// Accumulated Minkowski sum (before the 1/q root) of per-axis gaps.
double weighted_power_sum(const std::vector<double>& gaps, const DistanceSpec& spec) {
    const bool weighted = !spec.weights.empty();
    double sum = 0.0;
    if (spec.q == 2.0) {
        for (std::size_t j = 0; j < gaps.size(); ++j)
            sum += (weighted ? spec.weights[j] : 1.0) * gaps[j] * gaps[j];
    } else if (spec.q == 1.0) {
        for (std::size_t j = 0; j < gaps.size(); ++j)
            sum += (weighted ? spec.weights[j] : 1.0) * gaps[j];
    } else {
        for (std::size_t j = 0; j < gaps.size(); ++j)
            sum += (weighted ? spec.weights[j] : 1.0) * std::pow(gaps[j], spec.q);
    }
    return sum;
}

double finish_root(double sum, double q) {
    if (q == 2.0) return std::sqrt(sum);
    if (q == 1.0) return sum;
    return std::pow(sum, 1.0 / q);
}

}  // namespace

KdTree KdTree::build(const Dataset& data, int leaf_capacity, SplitRule rule) {
    data.validate();
    if (data.size() == 0) {
        throw std::invalid_argument("kdtree: cannot build from an empty dataset");
    }
    if (leaf_capacity < 1) {
        throw std::invalid_argument("kdtree: leaf capacity must be at least 1");
    }
    KdTree tree;
    tree.data_ = &data;
    tree.leaf_capacity_ = leaf_capacity;
    tree.rule_ = rule;
    tree.order_.resize(data.size());
    std::iota(tree.order_.begin(), tree.order_.end(), 0);
    tree.nodes_.reserve(2 * (data.size() / leaf_capacity + 1));
    tree.root_ = tree.build_node(0, data.size());
    return tree;
}

int KdTree::build_node(int first, int count) {
    const Dataset& data = *data_;
    KdNode node;
    node.box = tight_box(data, order_, first, count);
    node.first = first;
    node.count = count;

    int split_dim = -1;
    if (count > leaf_capacity_) {
        // Longest dimension with actual spread; if every dimension is
        // degenerate the points are all identical and the node stays a leaf.
        double best_extent = 0.0;
        for (int j = 0; j < data.dim; ++j) {
            const double extent = node.box.max[j] - node.box.min[j];
            if (extent > best_extent) {
                best_extent = extent;
                split_dim = j;
            }
        }
    }
    if (split_dim < 0) {
        const int id = static_cast<int>(nodes_.size());
        nodes_.push_back(std::move(node));
        return id;
    }

    double split_value = 0.0;
    if (rule_ == SplitRule::MEDIAN) {
        // Lower median: the ceil(count/2)-th smallest coordinate.
        std::vector<double> coords(count);
        for (int i = 0; i < count; ++i) coords[i] = data.points[order_[first + i]].coords[split_dim];
        const int rank = (count + 1) / 2 - 1;
        std::nth_element(coords.begin(), coords.begin() + rank, coords.end());
        split_value = coords[rank];
    } else {
        double sum = 0.0;
        for (int i = 0; i < count; ++i) sum += data.points[order_[first + i]].coords[split_dim];
        split_value = sum / count;
    }
    // A split value at (or beyond) the maximum would leave the right side
    // empty; fall back to the largest coordinate strictly below the maximum.
    if (split_value >= node.box.max[split_dim]) {
        double fallback = node.box.min[split_dim];
        for (int i = 0; i < count; ++i) {
            const double c = data.points[order_[first + i]].coords[split_dim];
            if (c < node.box.max[split_dim]) fallback = std::max(fallback, c);
        }
        split_value = fallback;
    }

    // Stable partition keeps ascending dataset order inside each side.
    std::vector<int> left_side, right_side;
    left_side.reserve(count);
    right_side.reserve(count);
    for (int i = first; i < first + count; ++i) {
        const int idx = order_[i];
        if (data.points[idx].coords[split_dim] <= split_value) {
            left_side.push_back(idx);
        } else {
            right_side.push_back(idx);
        }
    }
    const int left_count = static_cast<int>(left_side.size());
    std::copy(left_side.begin(), left_side.end(), order_.begin() + first);
    std::copy(right_side.begin(), right_side.end(), order_.begin() + first + left_count);

    node.split_dim = split_dim;
    node.split_value = split_value;
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(node));
    const int left_id = build_node(first, left_count);
    const int right_id = build_node(first + left_count, count - left_count);
    nodes_[id].left = left_id;
    nodes_[id].right = right_id;
    return id;
}

int KdTree::size() const { return data_ ? data_->size() : 0; }

double KdTree::box_lower_bound(const std::vector<double>& center, const BoundingBox& box,
                               const DistanceSpec& spec) const {
    std::vector<double> gaps(center.size(), 0.0);
    for (std::size_t j = 0; j < center.size(); ++j) {
        if (center[j] < box.min[j]) {
            gaps[j] = box.min[j] - center[j];
        } else if (center[j] > box.max[j]) {
            gaps[j] = center[j] - box.max[j];
        }
    }
    return finish_root(weighted_power_sum(gaps, spec), spec.q);
}

std::vector<int> KdTree::range_query(const std::vector<double>& center, double eps,
                                     const DistanceSpec& spec) const {
    if (static_cast<int>(center.size()) != data_->dim) {
        throw std::invalid_argument("kdtree: query center dimension mismatch");
    }
    spec.validate(data_->dim);
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw std::invalid_argument("kdtree: eps must be positive and finite");
    }
    std::vector<int> result;
    std::vector<int> stack{root_};
    while (!stack.empty()) {
        const int id = stack.back();
        stack.pop_back();
        const KdNode& node = nodes_[id];
        if (box_lower_bound(center, node.box, spec) > eps) continue;
        if (node.is_leaf()) {
            for (int i = node.first; i < node.first + node.count; ++i) {
                const int idx = order_[i];
                if (distance(center, data_->points[idx].coords, spec) <= eps) {
                    result.push_back(idx);
                }
            }
        } else {
            stack.push_back(node.right);
            stack.push_back(node.left);
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

std::vector<int> KdTree::range_query(const Point& center, double eps,
                                     const DistanceSpec& spec) const {
    return range_query(center.coords, eps, spec);
}

std::vector<std::pair<int, double>> KdTree::knn_query(const std::vector<double>& center, int k,
                                                      const DistanceSpec& spec) const {
    if (static_cast<int>(center.size()) != data_->dim) {
        throw std::invalid_argument("kdtree: query center dimension mismatch");
    }
    spec.validate(data_->dim);
    if (k < 1 || k > data_->size()) {
        throw std::invalid_argument("kdtree: k must be in [1, " + std::to_string(data_->size()) +
                                    "], got " + std::to_string(k));
    }
    // Max-heap of (distance, index); lexicographic order implements the
    // distance-then-lower-index tie rule. Prune a subtree only when its bound
    // is strictly worse than the current k-th best, so equal-distance points
    // with lower indices are still reachable.
    std::priority_queue<std::pair<double, int>> heap;
    std::vector<int> stack{root_};
    while (!stack.empty()) {
        const int id = stack.back();
        stack.pop_back();
        const KdNode& node = nodes_[id];
        if (static_cast<int>(heap.size()) == k &&
            box_lower_bound(center, node.box, spec) > heap.top().first) {
            continue;
        }
        if (node.is_leaf()) {
            for (int i = node.first; i < node.first + node.count; ++i) {
                const int idx = order_[i];
                const double d = distance(center, data_->points[idx].coords, spec);
                if (static_cast<int>(heap.size()) < k) {
                    heap.emplace(d, idx);
                } else if (std::make_pair(d, idx) < heap.top()) {
                    heap.pop();
                    heap.emplace(d, idx);
                }
            }
            continue;
        }
        const bool left_first = center[node.split_dim] <= node.split_value;
        stack.push_back(left_first ? node.right : node.left);   // farther, visited second
        stack.push_back(left_first ? node.left : node.right);   // nearer, visited first
    }

    std::vector<std::pair<int, double>> result(heap.size());
    for (int i = static_cast<int>(heap.size()) - 1; i >= 0; --i) {
        result[i] = {heap.top().second, heap.top().first};
        heap.pop();
    }
    return result;
}

std::vector<std::pair<int, double>> KdTree::knn_query(const Point& center, int k,
                                                      const DistanceSpec& spec) const {
    return knn_query(center.coords, k, spec);
}

std::vector<KdTree::LeafCell> KdTree::leaf_cells() const {
    std::vector<LeafCell> out;
    collect_leaves(root_, out);
    return out;
}

void KdTree::collect_leaves(int id, std::vector<LeafCell>& out) const {
    const KdNode& node = nodes_[id];
    if (node.is_leaf()) {
        LeafCell cell;
        cell.box = node.box;
        cell.indices.assign(order_.begin() + node.first, order_.begin() + node.first + node.count);
        out.push_back(std::move(cell));
        return;
    }
    collect_leaves(node.left, out);
    collect_leaves(node.right, out);
}

int KdTree::count_leaves(int id) const {
    const KdNode& node = nodes_[id];
    if (node.is_leaf()) return 1;
    return count_leaves(node.left) + count_leaves(node.right);
}

int KdTree::leaf_for(const std::vector<double>& coords) const {
    if (static_cast<int>(coords.size()) != data_->dim) {
        throw std::invalid_argument("kdtree: query dimension mismatch");
    }
    int id = root_;
    int leaf_index = 0;
    while (!nodes_[id].is_leaf()) {
        const KdNode& node = nodes_[id];
        if (coords[node.split_dim] <= node.split_value) {
            id = node.left;
        } else {
            // Every leaf under the left sibling precedes this subtree in
            // left-to-right order.
            leaf_index += count_leaves(node.left);
            id = node.right;
        }
    }
    return leaf_index;
}

}  // namespace mdbscan
