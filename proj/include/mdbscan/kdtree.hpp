#pragma once

#include <utility>
#include <vector>

#include "mdbscan/geometry.hpp"

namespace mdbscan {

struct BoundingBox {
    std::vector<double> min;
    std::vector<double> max;
};

enum class SplitRule { MEDIAN, MEAN };

struct KdNode {
    BoundingBox box;        // tight box of the points in this node
    int split_dim = -1;     // -1 marks a leaf
    double split_value = 0.0;
    int left = -1;
    int right = -1;
    int first = 0;          // leaf: slice [first, first+count) of the index table
    int count = 0;

    bool is_leaf() const { return split_dim < 0; }
};

/// Bucketed kd-tree over a dataset. Internal nodes split the longest box
/// dimension; points with coordinate <= split_value go left, the rest right.
/// The tree does not own the dataset; it must outlive the tree.
class KdTree {
public:
    struct LeafCell {
        BoundingBox box;
        std::vector<int> indices;  // ascending dataset indices
    };

    static KdTree build(const Dataset& data, int leaf_capacity, SplitRule rule);

    /// Dataset indices of all points within eps of center (inclusive), ascending.
    std::vector<int> range_query(const std::vector<double>& center, double eps,
                                 const DistanceSpec& spec) const;
    std::vector<int> range_query(const Point& center, double eps, const DistanceSpec& spec) const;

    /// The k nearest points as (index, distance), ordered by distance then index.
    /// Throws std::invalid_argument if k < 1 or k > size().
    std::vector<std::pair<int, double>> knn_query(const std::vector<double>& center, int k,
                                                  const DistanceSpec& spec) const;
    std::vector<std::pair<int, double>> knn_query(const Point& center, int k,
                                                  const DistanceSpec& spec) const;

    /// Leaf cells in left-to-right traversal order.
    std::vector<LeafCell> leaf_cells() const;

    /// Index (into leaf_cells() order) of the leaf whose region contains the
    /// given coordinates, following split comparisons from the root.
    int leaf_for(const std::vector<double>& coords) const;

    int size() const;
    int leaf_capacity() const { return leaf_capacity_; }
    SplitRule split_rule() const { return rule_; }
    const std::vector<KdNode>& nodes() const { return nodes_; }
    const Dataset& data() const { return *data_; }

private:
    const Dataset* data_ = nullptr;
    std::vector<KdNode> nodes_;
    std::vector<int> order_;  // dataset indices grouped by leaf, ascending within each leaf
    int root_ = -1;
    int leaf_capacity_ = 0;
    SplitRule rule_ = SplitRule::MEDIAN;

    int build_node(int first, int count);
    int count_leaves(int node) const;
    void collect_leaves(int node, std::vector<LeafCell>& out) const;
    double box_lower_bound(const std::vector<double>& center, const BoundingBox& box,
                           const DistanceSpec& spec) const;
};

}  // namespace mdbscan
