#pragma once
// Synthetic binary fingerprints: seed vectors plus noisy copies.
//
// Stream layout under SynthSpec::rng_seed: seed vector c draws from child
// stream c*(k+1), its j-th sample from stream c*(k+1)+1+j. Output order is
// seed 0, its k samples, seed 1, ... so n = num_clusters*(k+1).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "classix/data.hpp"
#include "classix/rng.hpp"

namespace classix {

enum class FlipMode {
    Scaled,  // p = 0.1 * seed score / d
    Fixed,
};

enum class SeedScores {
    Random,      // fair coin per bit
    Arithmetic,  // seed c has exactly alpha_min + c*beta set bits
};

struct SynthSpec {
    std::size_t num_clusters = 10;
    std::size_t k = 100;
    std::size_t d = 1000;
    FlipMode flip_mode = FlipMode::Scaled;
    double fixed_p = 0.0;
    SeedScores seed_scores = SeedScores::Random;
    std::size_t alpha_min = 0;
    std::size_t beta = 0;
    std::uint64_t rng_seed = 0;
};

// Throws InvalidInput describing the first violated constraint.
void validate(const SynthSpec& spec);

std::string describe(const SynthSpec& spec);

struct SyntheticData {
    FingerprintSet data;
    std::vector<std::int64_t> labels;
    std::vector<std::uint32_t> seed_scores;
    std::vector<double> flip_probability;  // per seed
};

SyntheticData generate(const SynthSpec& spec);

// words_for(d) words; each of the d bits is set independently with
// probability p. Padding bits stay zero.
std::vector<std::uint64_t> flip_mask(std::size_t d, double p, Rng& rng);

}  // namespace classix
