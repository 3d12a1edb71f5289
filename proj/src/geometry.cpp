#include "mdbscan/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mdbscan {

Dataset Dataset::from_rows(std::vector<std::vector<double>> rows,
                           std::optional<std::vector<int>> truth) {
    Dataset d;
    d.dim = rows.empty() ? 0 : static_cast<int>(rows.front().size());
    d.points.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        d.points.push_back(Point{static_cast<int>(i), std::move(rows[i])});
    }
    d.truth = std::move(truth);
    d.validate();
    return d;
}

void Dataset::validate() const {
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Point& p = points[i];
        if (p.index != static_cast<int>(i)) {
            throw std::invalid_argument("dataset: point index " + std::to_string(p.index) +
                                        " does not match position " + std::to_string(i));
        }
        if (static_cast<int>(p.coords.size()) != dim) {
            throw std::invalid_argument("dataset: point " + std::to_string(i) +
                                        " has dimension " + std::to_string(p.coords.size()) +
                                        ", expected " + std::to_string(dim));
        }
        for (double c : p.coords) {
            if (!std::isfinite(c)) {
                throw std::invalid_argument("dataset: point " + std::to_string(i) +
                                            " has a non-finite coordinate");
            }
        }
    }
    if (!points.empty() && dim < 1) {
        throw std::invalid_argument("dataset: dimension must be at least 1");
    }
    if (truth && truth->size() != points.size()) {
        throw std::invalid_argument("dataset: truth label count does not match point count");
    }
}

void DistanceSpec::validate(int dim) const {
    if (!std::isfinite(q) || q < 1.0) {
        throw std::invalid_argument("distance: order q must be finite and >= 1");
    }
    if (weights.empty()) return;
    if (static_cast<int>(weights.size()) != dim) {
        throw std::invalid_argument("distance: weight count " + std::to_string(weights.size()) +
                                    " does not match dimension " + std::to_string(dim));
    }
    bool any_positive = false;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) {
            throw std::invalid_argument("distance: weights must be finite and non-negative");
        }
        if (w > 0.0) any_positive = true;
    }
    if (!any_positive) {
        throw std::invalid_argument("distance: at least one weight must be positive");
    }
}

double distance(const std::vector<double>& a, const std::vector<double>& b,
                const DistanceSpec& spec) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("distance: dimension mismatch (" + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()) + ")");
    }
    const std::size_t m = a.size();
    for (std::size_t j = 0; j < m; ++j) {
        if (!std::isfinite(a[j]) || !std::isfinite(b[j])) {
            throw std::invalid_argument("distance: non-finite coordinate");
        }
    }
    const bool weighted = !spec.weights.empty();
    double sum = 0.0;
    if (spec.q == 2.0) {
        for (std::size_t j = 0; j < m; ++j) {
            const double d = a[j] - b[j];
            sum += (weighted ? spec.weights[j] : 1.0) * d * d;
        }
        return std::sqrt(sum);
    }
    if (spec.q == 1.0) {
        for (std::size_t j = 0; j < m; ++j) {
            sum += (weighted ? spec.weights[j] : 1.0) * std::abs(a[j] - b[j]);
        }
        return sum;
    }
    for (std::size_t j = 0; j < m; ++j) {
        sum += (weighted ? spec.weights[j] : 1.0) * std::pow(std::abs(a[j] - b[j]), spec.q);
    }
    return std::pow(sum, 1.0 / spec.q);
}

double distance(const Point& a, const Point& b, const DistanceSpec& spec) {
    return distance(a.coords, b.coords, spec);
}

}  // namespace mdbscan
