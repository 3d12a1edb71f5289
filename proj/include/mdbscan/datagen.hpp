#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mdbscan/kdtree.hpp"

namespace mdbscan {

/// Deterministic draw source: mt19937_64 under the hood, with uniform doubles
/// taken as (x >> 11) * 2^-53 and normal deviates from the Box-Muller cosine
/// branch. Every normal deviate consumes exactly two 64-bit draws, so the
/// stream layout is easy to reproduce in another language.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();                      // [0, 1)
    double uniform_in(double lo, double hi);
    double gaussian();                     // standard normal

private:
    std::mt19937_64 engine_;
};

struct BlobSpec {
    std::vector<double> center;
    double spread = 1.0;   // per-axis standard deviation
    int count = 0;
    int label = 0;
};

struct GenSpec {
    int dim = 0;
    std::vector<BlobSpec> blobs;
    int noise_count = 0;
    BoundingBox noise_box;   // required when noise_count > 0
    std::uint64_t rng_seed = 0;
};

/// Samples blob points (each axis independently normal) in blob order, then
/// uniform noise points in the noise box. Truth labels follow the blob specs;
/// noise points carry NOISE.
Dataset generate(const GenSpec& spec);

/// Named, seed-frozen dataset recipes: paper_ds1, paper_ds2, two_density,
/// pure_noise. Throws std::invalid_argument for unknown names.
GenSpec preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace mdbscan
