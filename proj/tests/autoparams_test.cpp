#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "mdbscan/autoparams.hpp"
#include "mdbscan/datagen.hpp"

using mdbscan::AutoConfig;
using mdbscan::AutoResult;
using mdbscan::BlobSpec;
using mdbscan::Dataset;
using mdbscan::DistanceSpec;
using mdbscan::GenSpec;
using mdbscan::KdTree;
using mdbscan::NOISE;
using mdbscan::ParamPair;
using mdbscan::SplitRule;
using mdbscan::cell_params;
using mdbscan::cluster_auto;
using mdbscan::merge_pairs;
using mdbscan::prioritize;

namespace {

ParamPair make_pair_of(double eps, int min_pts, int population) {
    ParamPair pair;
    pair.eps = eps;
    pair.min_pts = min_pts;
    pair.population = population;
    pair.priority = eps;
    return pair;
}

}  // namespace

TEST_CASE("cell params on a unit square") {
    const Dataset data =
        Dataset::from_rows({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
    const KdTree tree = KdTree::build(data, 8, SplitRule::MEDIAN);
    AutoConfig cfg;
    cfg.min_pts_floor = 2;
    const ParamPair pair = cell_params({0, 1, 2, 3}, data, tree, DistanceSpec{}, cfg);
    // with self counting at rank 1, each corner's rank-2 distance is the unit edge
    CHECK(pair.min_pts == 2);
    CHECK(pair.eps == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pair.population == 4);
}

TEST_CASE("cell params on a 2-point cell") {
    const Dataset data = Dataset::from_rows({{0.0, 0.0}, {3.0, 4.0}});
    const KdTree tree = KdTree::build(data, 8, SplitRule::MEDIAN);
    AutoConfig cfg;
    cfg.min_pts_floor = 2;
    const ParamPair pair = cell_params({0, 1}, data, tree, DistanceSpec{}, cfg);
    CHECK(pair.min_pts == 2);
    CHECK(pair.eps == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("cell params on a gaussian cell") {
    GenSpec spec;
    spec.dim = 2;
    spec.rng_seed = 404;
    spec.blobs.push_back(BlobSpec{{0.0, 0.0}, 1.0, 64, 0});
    const Dataset data = generate(spec);
    const KdTree tree = KdTree::build(data, 64, SplitRule::MEDIAN);
    AutoConfig cfg;  // floor 4
    std::vector<int> all(64);
    for (int i = 0; i < 64; ++i) all[i] = i;
    const ParamPair pair = cell_params(all, data, tree, DistanceSpec{}, cfg);
    CHECK(pair.min_pts == 6);  // max(4, log2 64)
    CHECK(pair.eps > 0.0);

    // independent check: eps is among the computed per-point neighbor distances
    const std::vector<double> kdists = mdbscan::cell_kdists(all, data, DistanceSpec{}, 6);
    CHECK(std::find(kdists.begin(), kdists.end(), pair.eps) != kdists.end());
}

TEST_CASE("cell params rejects tiny cells") {
    const Dataset data = Dataset::from_rows({{0.0, 0.0}});
    const KdTree tree = KdTree::build(data, 8, SplitRule::MEDIAN);
    CHECK_THROWS_AS(cell_params({0}, data, tree, DistanceSpec{}, AutoConfig{}),
                    std::invalid_argument);
}

TEST_CASE("identical-point cell falls back to a positive eps") {
    const Dataset data = Dataset::from_rows(
        {{5.0, 5.0}, {5.0, 5.0}, {5.0, 5.0}, {5.0, 5.0}, {0.0, 0.0}, {1.0, 0.0}});
    const KdTree tree = KdTree::build(data, 8, SplitRule::MEDIAN);
    AutoConfig cfg;
    cfg.min_pts_floor = 2;
    const ParamPair pair = cell_params({0, 1, 2, 3}, data, tree, DistanceSpec{}, cfg);
    // smallest positive distance anywhere in the dataset is the (0,0)-(1,0) edge
    CHECK(pair.eps == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("merge fuses close pairs by weighted mean") {
    AutoConfig cfg;  // tol 0.2
    std::vector<ParamPair> pairs{make_pair_of(1.00, 4, 10), make_pair_of(1.05, 4, 30)};
    pairs[0].source_cells = {0};
    pairs[1].source_cells = {1};
    const auto merged = merge_pairs(pairs, cfg);
    REQUIRE(merged.size() == 1);
    CHECK(merged[0].eps == doctest::Approx(1.0375).epsilon(1e-12));
    CHECK(merged[0].min_pts == 4);
    CHECK(merged[0].population == 40);
    CHECK(merged[0].source_cells == std::vector<int>{0, 1});
}

TEST_CASE("merge keeps distant pairs apart") {
    AutoConfig cfg;
    const auto merged =
        merge_pairs({make_pair_of(1.0, 4, 10), make_pair_of(10.0, 4, 10)}, cfg);
    REQUIRE(merged.size() == 2);
    CHECK(merged[0].eps == 1.0);
    CHECK(merged[1].eps == 10.0);
}

TEST_CASE("merge requires matching min_pts") {
    AutoConfig cfg;
    const auto merged =
        merge_pairs({make_pair_of(1.0, 4, 10), make_pair_of(1.01, 5, 10)}, cfg);
    CHECK(merged.size() == 2);
}

TEST_CASE("single pair merges to itself") {
    AutoConfig cfg;
    const auto merged = merge_pairs({make_pair_of(2.5, 4, 7)}, cfg);
    REQUIRE(merged.size() == 1);
    CHECK(merged[0].eps == 2.5);
    CHECK(merged[0].population == 7);
}

TEST_CASE("merge conserves population and never grows the list") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<ParamPair> pairs;
        long long total = 0;
        const int count = 2 + int(rng() % 8);
        for (int i = 0; i < count; ++i) {
            const double eps = 0.5 + double(rng() % 1000) / 200.0;
            const int pop = 2 + int(rng() % 50);
            pairs.push_back(make_pair_of(eps, 4 + int(rng() % 2), pop));
            total += pop;
        }
        AutoConfig cfg;
        const auto merged = merge_pairs(pairs, cfg);
        CHECK(merged.size() <= pairs.size());
        long long after = 0;
        for (const auto& pair : merged) after += pair.population;
        CHECK(after == total);
        // output sorted by eps ascending, all gaps above tolerance within equal min_pts
        for (std::size_t i = 1; i < merged.size(); ++i) {
            CHECK(merged[i].eps >= merged[i - 1].eps);
        }
    }
}

TEST_CASE("prioritize orders by eps then population then min_pts") {
    std::vector<ParamPair> pairs{make_pair_of(3.0, 4, 10), make_pair_of(1.0, 4, 10),
                                 make_pair_of(2.0, 4, 10)};
    auto ordered = prioritize(pairs);
    CHECK(ordered[0].eps == 1.0);
    CHECK(ordered[1].eps == 2.0);
    CHECK(ordered[2].eps == 3.0);

    std::vector<ParamPair> tie{make_pair_of(2.0, 4, 5), make_pair_of(2.0, 4, 50)};
    ordered = prioritize(tie);
    CHECK(ordered[0].population == 50);

    std::vector<ParamPair> tie2{make_pair_of(2.0, 6, 5), make_pair_of(2.0, 4, 5)};
    ordered = prioritize(tie2);
    CHECK(ordered[0].min_pts == 4);

    // idempotence and agreement with an independent sort
    std::mt19937_64 rng(11);
    std::vector<ParamPair> random_pairs;
    for (int i = 0; i < 15; ++i) {
        random_pairs.push_back(
            make_pair_of(1.0 + double(rng() % 5), 4 + int(rng() % 3), 1 + int(rng() % 9)));
    }
    const auto once = prioritize(random_pairs);
    const auto twice = prioritize(once);
    for (std::size_t i = 0; i < once.size(); ++i) {
        CHECK(once[i].eps == twice[i].eps);
        CHECK(once[i].population == twice[i].population);
    }
    std::vector<std::array<double, 3>> keys;
    for (const auto& pair : once) {
        keys.push_back({pair.priority, double(-pair.population), double(pair.min_pts)});
    }
    CHECK(std::is_sorted(keys.begin(), keys.end()));
}

TEST_CASE("auto pipeline separates two densities") {
    // tight blob plus a much sparser one far away
    GenSpec gen;
    gen.dim = 2;
    gen.rng_seed = 71;
    gen.blobs.push_back(BlobSpec{{0.0, 0.0}, 1.0, 100, 0});
    gen.blobs.push_back(BlobSpec{{200.0, 0.0}, 20.0, 100, 1});
    const Dataset data = generate(gen);

    const AutoResult result = cluster_auto(data, DistanceSpec{}, AutoConfig{});
    CHECK(result.labeling.cluster_count >= 2);

    // each blob concentrates in a single cluster
    for (int blob = 0; blob < 2; ++blob) {
        std::map<int, int> votes;
        for (int i = blob * 100; i < (blob + 1) * 100; ++i) {
            ++votes[result.labeling.label[i]];
        }
        int best = 0;
        for (const auto& [label, count] : votes) {
            if (label != NOISE) best = std::max(best, count);
        }
        CHECK(best >= 90);
    }
}

TEST_CASE("auto pipeline leaves sparse uniform noise unclustered") {
    GenSpec gen;
    gen.dim = 2;
    gen.rng_seed = 12;
    gen.noise_count = 50;
    gen.noise_box.min = {0.0, 0.0};
    gen.noise_box.max = {10000.0, 10000.0};
    const Dataset data = generate(gen);

    const AutoResult result = cluster_auto(data, DistanceSpec{}, AutoConfig{});
    const int noise =
        int(std::count(result.labeling.label.begin(), result.labeling.label.end(), NOISE));
    CHECK(noise > 25);
}

TEST_CASE("auto pipeline exhaustiveness and pair sanity") {
    const Dataset data = generate(mdbscan::preset("paper_ds1"));
    const AutoResult result = cluster_auto(data, DistanceSpec{}, AutoConfig{});

    double diameter = 0.0;
    for (int i = 0; i < data.size(); ++i) {
        for (int j = i + 1; j < data.size(); ++j) {
            diameter = std::max(diameter, distance(data.points[i], data.points[j], DistanceSpec{}));
        }
    }
    for (const ParamPair& pair : result.pairs) {
        CHECK(pair.eps > 0.0);
        CHECK(pair.eps <= diameter);
        CHECK(pair.min_pts >= 1);
    }
    for (int i = 0; i < data.size(); ++i) {
        const int label = result.labeling.label[i];
        CHECK((label == NOISE || (label >= 0 && label < result.labeling.cluster_count)));
    }
}

TEST_CASE("tiny datasets come back as all noise") {
    const Dataset data = Dataset::from_rows({{0.0, 0.0}});
    const AutoResult result = cluster_auto(data, DistanceSpec{}, AutoConfig{});
    CHECK(result.labeling.cluster_count == 0);
    CHECK(result.pairs.empty());
    CHECK(result.labeling.label[0] == NOISE);
}

TEST_CASE("seeded mode restricts proposing cells") {
    // a tight blob and a much sparser one; seeds only in the tight one
    GenSpec gen;
    gen.dim = 2;
    gen.rng_seed = 9;
    gen.blobs.push_back(BlobSpec{{0.0, 0.0}, 1.0, 60, 0});
    gen.blobs.push_back(BlobSpec{{300.0, 0.0}, 30.0, 60, 1});
    const Dataset data = generate(gen);

    AutoConfig cfg;
    cfg.seeds.push_back({0.0, 0.0});
    const AutoResult seeded = cluster_auto(data, DistanceSpec{}, cfg);
    CHECK(seeded.labeling.cluster_count >= 1);

    // without a proposal of its own, the sparse blob sees only tight-scale
    // parameters and stays unclustered
    int sparse_clustered = 0;
    for (int i = 60; i < 120; ++i) {
        if (seeded.labeling.label[i] != NOISE) ++sparse_clustered;
    }
    CHECK(sparse_clustered == 0);

    // unseeded, the sparse blob proposes loose parameters and is found
    const AutoResult open = cluster_auto(data, DistanceSpec{}, AutoConfig{});
    int sparse_open = 0;
    for (int i = 60; i < 120; ++i) {
        if (open.labeling.label[i] != NOISE) ++sparse_open;
    }
    CHECK(sparse_open > 30);
}
