#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "mdbscan/geometry.hpp"

using mdbscan::Dataset;
using mdbscan::DistanceSpec;
using mdbscan::distance;

namespace {

DistanceSpec spec_of(double q, std::vector<double> weights = {}) {
    DistanceSpec s;
    s.q = q;
    s.weights = std::move(weights);
    return s;
}

}  // namespace

TEST_CASE("distance identity") {
    const std::vector<double> a{1.5, -2.0};
    CHECK(distance(a, a, spec_of(2.0)) == 0.0);
    CHECK(distance(a, a, spec_of(1.0, {2.0, 3.0})) == 0.0);
    CHECK(distance(a, a, spec_of(3.5)) == 0.0);
}

TEST_CASE("distance euclidean 3-4-5") {
    CHECK(distance({0.0, 0.0}, {3.0, 4.0}, spec_of(2.0)) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("distance weighted manhattan") {
    // 2*|1-4| + 1*|2-6| = 10
    CHECK(distance({1.0, 2.0}, {4.0, 6.0}, spec_of(1.0, {2.0, 1.0})) ==
          doctest::Approx(10.0).epsilon(1e-15));
}

TEST_CASE("distance cube root case") {
    // (1 + 1)^(1/3), reference value computed independently at high precision
    CHECK(distance({0.0, 0.0}, {1.0, 1.0}, spec_of(3.0)) ==
          doctest::Approx(1.2599210498948732).epsilon(1e-14));
}

TEST_CASE("distance symmetry on random vectors") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> a(3), b(3);
        for (int j = 0; j < 3; ++j) {
            a[j] = u(rng);
            b[j] = u(rng);
        }
        const DistanceSpec s = spec_of(1.0 + 3.0 * std::abs(u(rng)) / 10.0, {0.5, 1.0, 2.0});
        CHECK(distance(a, b, s) == distance(b, a, s));
    }
}

TEST_CASE("distance weight monotonicity") {
    const std::vector<double> a{0.0, 0.0};
    const std::vector<double> b{1.0, 2.0};
    double previous = 0.0;
    for (double w = 0.5; w <= 4.0; w += 0.5) {
        const double d = distance(a, b, spec_of(2.0, {w, 1.0}));
        CHECK(d > previous);
        previous = d;
    }
}

TEST_CASE("distance q2 matches naive euclidean") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a(5), b(5);
        double sum = 0.0;
        for (int j = 0; j < 5; ++j) {
            a[j] = u(rng);
            b[j] = u(rng);
            sum += (a[j] - b[j]) * (a[j] - b[j]);
        }
        const double naive = std::sqrt(sum);
        const double got = distance(a, b, spec_of(2.0));
        CHECK(std::abs(got - naive) <= 1e-12 * std::max(1.0, naive));
    }
}

TEST_CASE("distance rejects mismatched dimensions") {
    CHECK_THROWS_AS(distance({0.0, 0.0}, {1.0, 2.0, 3.0}, spec_of(2.0)), std::invalid_argument);
}

TEST_CASE("distance rejects non-finite coordinates") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(distance({nan, 0.0}, {1.0, 2.0}, spec_of(2.0)), std::invalid_argument);
    CHECK_THROWS_AS(distance({0.0, 0.0}, {inf, 2.0}, spec_of(2.0)), std::invalid_argument);
}

TEST_CASE("distance spec validation") {
    CHECK_THROWS_AS(spec_of(0.5).validate(2), std::invalid_argument);
    CHECK_THROWS_AS(spec_of(2.0, {1.0, -1.0}).validate(2), std::invalid_argument);
    CHECK_THROWS_AS(spec_of(2.0, {0.0, 0.0}).validate(2), std::invalid_argument);
    CHECK_THROWS_AS(spec_of(2.0, {1.0}).validate(2), std::invalid_argument);
    CHECK_NOTHROW(spec_of(2.0).validate(2));
    CHECK_NOTHROW(spec_of(1.0, {0.0, 1.0}).validate(2));
}

TEST_CASE("zero weight erases a dimension") {
    // with the second axis weighted 0, points differing only there coincide
    CHECK(distance({1.0, 5.0}, {1.0, -5.0}, spec_of(2.0, {1.0, 0.0})) == 0.0);
}

TEST_CASE("dataset construction and validation") {
    Dataset data = Dataset::from_rows({{0.0, 0.0}, {1.0, 1.0}});
    CHECK(data.size() == 2);
    CHECK(data.dim == 2);
    CHECK(data.points[0].index == 0);
    CHECK(data.points[1].index == 1);
    CHECK_FALSE(data.has_truth());
    CHECK_NOTHROW(data.validate());

    CHECK_THROWS_AS(Dataset::from_rows({{0.0, 0.0}, {1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Dataset::from_rows({{0.0}}, std::vector<int>{0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Dataset::from_rows({{std::numeric_limits<double>::quiet_NaN()}}),
                    std::invalid_argument);
}
