#include "classix/synthgen.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "classix/error.hpp"

namespace classix {

namespace {

constexpr std::size_t kWordBits = FingerprintSet::kWordBits;

void set_bit(std::vector<std::uint64_t>& words, std::size_t b) {
    words[b / kWordBits] |= std::uint64_t{1} << (b % kWordBits);
}

std::vector<std::uint64_t> random_seed(std::size_t d, Rng& rng) {
    std::vector<std::uint64_t> words(FingerprintSet::words_for(d), 0);
    for (std::size_t b = 0; b < d; ++b) {
        if (rng.next() >> 63) set_bit(words, b);
    }
    return words;
}

std::vector<std::uint64_t> seed_with_score(std::size_t d, std::size_t score, Rng& rng) {
    std::vector<std::size_t> idx(d);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::vector<std::uint64_t> words(FingerprintSet::words_for(d), 0);
    for (std::size_t t = 0; t < score; ++t) {
        const std::size_t pick = t + static_cast<std::size_t>(rng.below(d - t));
        std::swap(idx[t], idx[pick]);
        set_bit(words, idx[t]);
    }
    return words;
}

std::uint32_t popcount(const std::vector<std::uint64_t>& words) {
    std::uint32_t s = 0;
    for (auto w : words) s += static_cast<std::uint32_t>(std::popcount(w));
    return s;
}

}  // namespace

void validate(const SynthSpec& spec) {
    if (spec.num_clusters == 0) throw InvalidInput("num_clusters must be positive");
    if (spec.d == 0) throw InvalidInput("dimension d must be positive");
    if (spec.d > std::numeric_limits<std::uint32_t>::max()) throw InvalidInput("dimension too large");
    if (spec.flip_mode == FlipMode::Fixed &&
        !(spec.fixed_p >= 0.0 && spec.fixed_p <= 1.0)) {
        throw InvalidInput("flip probability must lie in [0, 1]");
    }
    if (spec.seed_scores == SeedScores::Arithmetic) {
        const std::size_t steps = spec.num_clusters - 1;
        if (spec.beta != 0 && steps > (spec.d - std::min(spec.alpha_min, spec.d)) / spec.beta) {
            throw InvalidInput("alpha_min + (num_clusters-1)*beta exceeds d");
        }
        if (spec.alpha_min > spec.d) throw InvalidInput("alpha_min exceeds d");
    }
    const std::size_t per = spec.k + 1;
    if (per == 0 || spec.num_clusters > std::numeric_limits<std::size_t>::max() / per) {
        throw InvalidInput("num_clusters*(k+1) overflows");
    }
}

std::string describe(const SynthSpec& spec) {
    std::ostringstream os;
    os << "num_clusters=" << spec.num_clusters << " k=" << spec.k << " d=" << spec.d
       << " flip=" << (spec.flip_mode == FlipMode::Scaled ? "scaled" : "fixed");
    if (spec.flip_mode == FlipMode::Fixed) os << " p=" << spec.fixed_p;
    if (spec.seed_scores == SeedScores::Arithmetic) {
        os << " seeds=arithmetic alpha_min=" << spec.alpha_min << " beta=" << spec.beta;
    } else {
        os << " seeds=random";
    }
    os << " rng_seed=" << spec.rng_seed;
    return os.str();
}

std::vector<std::uint64_t> flip_mask(std::size_t d, double p, Rng& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("flip probability must lie in [0, 1]");
    std::vector<std::uint64_t> words(FingerprintSet::words_for(d), 0);
    if (p == 0.0 || d == 0) return words;
    if (p == 1.0) {
        for (std::size_t b = 0; b < d; ++b) set_bit(words, b);
        return words;
    }
    if (p <= 0.25) {
        // Gaps between set bits are geometric.
        const double log_q = std::log1p(-p);
        std::size_t b = 0;
        while (true) {
            const double u = 1.0 - rng.uniform();  // (0, 1]
            const double gap = std::floor(std::log(u) / log_q);
            if (gap >= static_cast<double>(d - b)) break;
            b += static_cast<std::size_t>(gap);
            set_bit(words, b);
            if (++b >= d) break;
        }
        return words;
    }
    for (std::size_t b = 0; b < d; ++b) {
        if (rng.uniform() < p) set_bit(words, b);
    }
    return words;
}

SyntheticData generate(const SynthSpec& spec) {
    validate(spec);
    const std::size_t per = spec.k + 1;
    const std::size_t n = spec.num_clusters * per;
    const std::size_t wpr = FingerprintSet::words_for(spec.d);
    std::vector<std::uint64_t> words;
    words.reserve(n * wpr);
    std::vector<std::int64_t> labels;
    labels.reserve(n);
    std::vector<std::uint32_t> seed_scores;
    std::vector<double> flip_p;

    for (std::size_t c = 0; c < spec.num_clusters; ++c) {
        const std::uint64_t base = static_cast<std::uint64_t>(c * per);
        Rng seed_rng = Rng::child(spec.rng_seed, base);
        const auto seed = spec.seed_scores == SeedScores::Arithmetic
                              ? seed_with_score(spec.d, spec.alpha_min + c * spec.beta, seed_rng)
                              : random_seed(spec.d, seed_rng);
        const std::uint32_t score = popcount(seed);
        const double p = spec.flip_mode == FlipMode::Scaled
                             ? 0.1 * static_cast<double>(score) / static_cast<double>(spec.d)
                             : spec.fixed_p;
        seed_scores.push_back(score);
        flip_p.push_back(p);

        words.insert(words.end(), seed.begin(), seed.end());
        labels.push_back(static_cast<std::int64_t>(c));
        for (std::size_t j = 0; j < spec.k; ++j) {
            Rng rng = Rng::child(spec.rng_seed, base + 1 + j);
            const auto mask = flip_mask(spec.d, p, rng);
            for (std::size_t w = 0; w < wpr; ++w) words.push_back(seed[w] ^ mask[w]);
            labels.push_back(static_cast<std::int64_t>(c));
        }
    }
    return {FingerprintSet(n, spec.d, std::move(words)), std::move(labels), std::move(seed_scores),
            std::move(flip_p)};
}

}  // namespace classix
