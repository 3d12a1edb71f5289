#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "mdbscan/metrics.hpp"

using mdbscan::NOISE;
using mdbscan::adjusted_rand_index;
using mdbscan::purity;

TEST_CASE("ari identical partitions") {
    const std::vector<int> labels{0, 0, 1, 1, 2, 2, 2};
    CHECK(adjusted_rand_index(labels, labels) == 1.0);
    // relabeled copy scores 1 as well
    const std::vector<int> renamed{5, 5, 9, 9, 1, 1, 1};
    CHECK(adjusted_rand_index(labels, renamed) == 1.0);
}

TEST_CASE("ari single cluster vs two equal classes") {
    // hand-computed: all pairs together vs 2x4 split gives exactly 0
    const std::vector<int> pred(8, 0);
    const std::vector<int> truth{0, 0, 0, 0, 1, 1, 1, 1};
    CHECK(adjusted_rand_index(pred, truth) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("ari random labels hover near zero") {
    std::mt19937_64 rng(5150);
    const int n = 100;
    std::vector<int> truth(n);
    for (int i = 0; i < n; ++i) truth[i] = i % 4;
    double total = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> pred = truth;
        std::shuffle(pred.begin(), pred.end(), rng);
        total += std::abs(adjusted_rand_index(pred, truth));
    }
    CHECK(total / 50.0 < 0.1);
}

TEST_CASE("ari symmetry") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> a(40), b(40);
        for (int i = 0; i < 40; ++i) {
            a[i] = int(rng() % 5) - 1;  // includes NOISE
            b[i] = int(rng() % 5) - 1;
        }
        CHECK(adjusted_rand_index(a, b) == adjusted_rand_index(b, a));
    }
}

TEST_CASE("ari noise convention rewards matched noise") {
    // one two-point cluster plus two noise points on both sides
    const std::vector<int> pred{0, 0, NOISE, NOISE};
    const std::vector<int> truth{3, 3, NOISE, NOISE};
    CHECK(adjusted_rand_index(pred, truth) == 1.0);

    // clustering the noise lowers the score below 1
    const std::vector<int> lumped{0, 0, 0, 0};
    CHECK(adjusted_rand_index(lumped, truth) < 1.0);
}

TEST_CASE("ari length mismatch") {
    CHECK_THROWS_AS(adjusted_rand_index({0, 1}, {0, 1, 2}), std::invalid_argument);
}

TEST_CASE("purity basics") {
    const std::vector<int> truth{0, 0, 0, 1};
    const std::vector<int> one_cluster{0, 0, 0, 0};
    CHECK(purity(one_cluster, truth) == doctest::Approx(0.75));

    const std::vector<int> perfect{0, 0, 0, 1};
    CHECK(purity(perfect, truth) == 1.0);
}

TEST_CASE("purity ignores noise and flags all-noise") {
    const std::vector<int> truth{0, 0, 1, 1};
    const std::vector<int> pred{0, 0, NOISE, NOISE};
    CHECK(purity(pred, truth) == 1.0);

    bool all_noise = false;
    const std::vector<int> nothing(4, NOISE);
    CHECK(purity(nothing, truth, &all_noise) == 0.0);
    CHECK(all_noise);
}

TEST_CASE("purity equals exhaustive majority recount") {
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 30;
        std::vector<int> pred(n), truth(n);
        for (int i = 0; i < n; ++i) {
            pred[i] = int(rng() % 4) - 1;
            truth[i] = int(rng() % 3);
        }
        // recount: per predicted cluster, count the best truth class
        double best_total = 0.0;
        int clustered = 0;
        for (int c = 0; c < 3; ++c) {
            int counts[3] = {0, 0, 0};
            for (int i = 0; i < n; ++i) {
                if (pred[i] == c) ++counts[truth[i]];
            }
            best_total += *std::max_element(counts, counts + 3);
            clustered += counts[0] + counts[1] + counts[2];
        }
        const double expected = clustered == 0 ? 0.0 : best_total / clustered;
        CHECK(purity(pred, truth) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("purity never decreases under splitting") {
    std::mt19937_64 rng(7117);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 40;
        std::vector<int> pred(n), truth(n);
        for (int i = 0; i < n; ++i) {
            pred[i] = int(rng() % 3);
            truth[i] = int(rng() % 3);
        }
        const double before = purity(pred, truth);
        // split cluster 0 into 0 and 3 by parity of index
        std::vector<int> split = pred;
        for (int i = 0; i < n; ++i) {
            if (split[i] == 0 && i % 2 == 0) split[i] = 3;
        }
        CHECK(purity(split, truth) >= before - 1e-12);
    }
}

TEST_CASE("report serialization") {
    mdbscan::QualityReport report;
    report.ari = 0.5;
    report.purity = 0.25;
    report.noise_ratio = 0.1;
    report.cluster_count = 3;
    report.pair_count = 2;
    report.runtime_ms = 12.5;
    report.has_truth = true;
    const std::string text = report.to_text();
    CHECK(text.find("ari=") != std::string::npos);
    CHECK(text.find("cluster_count=3") != std::string::npos);
    const std::string header = mdbscan::QualityReport::csv_header();
    const std::string row = report.to_csv_row();
    CHECK(std::count(header.begin(), header.end(), ',') ==
          std::count(row.begin(), row.end(), ','));
}
