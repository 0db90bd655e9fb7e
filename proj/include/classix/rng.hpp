#pragma once
// Portable random streams.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. Distributions are implemented here rather than taken from
// <random>, because the standard library ones differ between vendors.
// Child streams are derived from a master seed with the splitmix64
// finalizer, so stream k is the same no matter which thread draws it.

#include <cstdint>
#include <random>

namespace classix {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Seed of child stream `stream` under `master`.
std::uint64_t child_seed(std::uint64_t master, std::uint64_t stream) noexcept;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng child(std::uint64_t master, std::uint64_t stream) {
        return Rng(child_seed(master, stream));
    }

    std::uint64_t next() { return engine_(); }
    // Uniform in [0, 1) with 53 random bits.
    double uniform();
    // Uniform in [0, bound); bound > 0. Unbiased (rejection sampling).
    std::uint64_t below(std::uint64_t bound);
    bool bernoulli(double p);

private:
    std::mt19937_64 engine_;
};

}  // namespace classix
