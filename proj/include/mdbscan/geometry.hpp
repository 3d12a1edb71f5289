#pragma once

#include <optional>
#include <vector>

namespace mdbscan {

// Label value for points that belong to no cluster. Cluster ids are 0,1,2,...
inline constexpr int NOISE = -1;

struct Point {
    int index = 0;
    std::vector<double> coords;
};

struct Dataset {
    std::vector<Point> points;
    int dim = 0;
    std::optional<std::vector<int>> truth;  // per-point class id, NOISE for background

    int size() const { return static_cast<int>(points.size()); }
    bool has_truth() const { return truth.has_value(); }

    /// Builds a dataset from raw coordinate rows, assigning indices 0..n-1.
    static Dataset from_rows(std::vector<std::vector<double>> rows,
                             std::optional<std::vector<int>> truth = std::nullopt);

    /// Throws std::invalid_argument if any structural invariant is broken.
    void validate() const;
};

/// Weighted Minkowski distance parameters: d(a,b) = (sum_j w_j * |a_j - b_j|^q)^(1/q).
/// An empty weight vector means all weights are 1.
struct DistanceSpec {
    double q = 2.0;
    std::vector<double> weights;

    /// Throws std::invalid_argument if q < 1, a weight is negative or non-finite,
    /// all weights are zero, or the weight count does not match dim.
    void validate(int dim) const;
};

double distance(const std::vector<double>& a, const std::vector<double>& b,
                const DistanceSpec& spec);
double distance(const Point& a, const Point& b, const DistanceSpec& spec);

}  // namespace mdbscan
