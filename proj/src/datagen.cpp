#include "mdbscan/datagen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mdbscan {

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_in(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double Rng::gaussian() {
    // Box-Muller, cosine branch only; u1 is shifted into (0, 1] for the log.
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Dataset generate(const GenSpec& spec) {
    if (spec.dim < 1) {
        throw std::invalid_argument("datagen: dimension must be at least 1");
    }
    long long total = spec.noise_count;
    for (const BlobSpec& blob : spec.blobs) {
        if (static_cast<int>(blob.center.size()) != spec.dim) {
            throw std::invalid_argument("datagen: blob center dimension mismatch");
        }
        if (!(blob.spread > 0.0)) {
            throw std::invalid_argument("datagen: blob spread must be positive");
        }
        if (blob.count < 1) {
            throw std::invalid_argument("datagen: blob count must be at least 1");
        }
        if (blob.label < 0) {
            throw std::invalid_argument("datagen: blob label must be non-negative");
        }
        total += blob.count;
    }
    if (spec.noise_count < 0) {
        throw std::invalid_argument("datagen: noise count must be non-negative");
    }
    if (spec.noise_count > 0) {
        if (static_cast<int>(spec.noise_box.min.size()) != spec.dim ||
            static_cast<int>(spec.noise_box.max.size()) != spec.dim) {
            throw std::invalid_argument("datagen: noise box dimension mismatch");
        }
        for (int j = 0; j < spec.dim; ++j) {
            if (!(spec.noise_box.min[j] <= spec.noise_box.max[j])) {
                throw std::invalid_argument("datagen: noise box is inverted");
            }
        }
    }
    if (total == 0) {
        throw std::invalid_argument("datagen: spec produces no points");
    }

    Rng rng(spec.rng_seed);
    std::vector<std::vector<double>> rows;
    std::vector<int> truth;
    rows.reserve(total);
    truth.reserve(total);
    for (const BlobSpec& blob : spec.blobs) {
        for (int i = 0; i < blob.count; ++i) {
            std::vector<double> coords(spec.dim);
            for (int j = 0; j < spec.dim; ++j) {
                coords[j] = blob.center[j] + blob.spread * rng.gaussian();
            }
            rows.push_back(std::move(coords));
            truth.push_back(blob.label);
        }
    }
    for (int i = 0; i < spec.noise_count; ++i) {
        std::vector<double> coords(spec.dim);
        for (int j = 0; j < spec.dim; ++j) {
            coords[j] = rng.uniform_in(spec.noise_box.min[j], spec.noise_box.max[j]);
        }
        rows.push_back(std::move(coords));
        truth.push_back(NOISE);
    }
    return Dataset::from_rows(std::move(rows), std::move(truth));
}

GenSpec preset(const std::string& name) {
    GenSpec spec;
    if (name == "paper_ds1") {
        // Three well separated Gaussian classes in the plane, 250 points.
        spec.dim = 2;
        spec.rng_seed = 811201;
        spec.blobs = {
            {{0.0, 0.0}, 2.0, 84, 0},
            {{30.0, 0.0}, 2.0, 83, 1},
            {{15.0, 26.0}, 2.0, 83, 2},
        };
    } else if (name == "paper_ds2") {
        // Four Gaussian clusters in five dimensions, 500 points.
        spec.dim = 5;
        spec.rng_seed = 811202;
        spec.blobs = {
            {{0.0, 0.0, 0.0, 0.0, 0.0}, 2.5, 125, 0},
            {{40.0, 0.0, 0.0, 0.0, 0.0}, 2.5, 125, 1},
            {{0.0, 40.0, 0.0, 0.0, 0.0}, 2.5, 125, 2},
            {{0.0, 0.0, 40.0, 0.0, 0.0}, 2.5, 125, 3},
        };
    } else if (name == "two_density") {
        // A tight and a sparse blob whose spreads differ tenfold, plus a thin
        // strip of background noise beside the tight blob.
        spec.dim = 2;
        spec.rng_seed = 811203;
        spec.blobs = {
            {{0.0, 0.0}, 0.5, 100, 0},
            {{100.0, 0.0}, 5.0, 100, 1},
        };
        spec.noise_count = 30;
        spec.noise_box = {{2.5, -5.0}, {11.0, 5.0}};
    } else if (name == "pure_noise") {
        // Uniform background only.
        spec.dim = 2;
        spec.rng_seed = 811204;
        spec.noise_count = 48;
        spec.noise_box = {{0.0, 0.0}, {1000.0, 1000.0}};
    } else {
        std::string names;
        for (const std::string& n : preset_names()) {
            if (!names.empty()) names += ", ";
            names += n;
        }
        throw std::invalid_argument("datagen: unknown preset '" + name + "' (available: " +
                                    names + ")");
    }
    return spec;
}

std::vector<std::string> preset_names() {
    return {"paper_ds1", "paper_ds2", "two_density", "pure_noise"};
}

}  // namespace mdbscan
