#pragma once
// Distance kernels.
//
// Tanimoto distances are computed from integer statistics (pop-counts and the
// pop-count of the AND) and only divided at the very end, so batch and
// pointwise evaluation agree bit-for-bit.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "classix/data.hpp"

namespace classix {

// Returned by batch_tanimoto for a pair of all-zero vectors.
inline constexpr double kUndefinedDistance = std::numeric_limits<double>::quiet_NaN();

double manhattan_distance(std::span<const double> u, std::span<const double> v);

std::uint32_t popcount(std::span<const std::uint64_t> x) noexcept;
// Pop-count of u AND v, i.e. the dot product of two binary vectors.
std::uint32_t dot(std::span<const std::uint64_t> u, std::span<const std::uint64_t> v) noexcept;

// 1 - |u and v| / |u or v|. Throws InvalidInput on a word-count mismatch and
// UndefinedDistance when both vectors are all-zero.
double tanimoto_distance(std::span<const std::uint64_t> u, std::span<const std::uint64_t> v);

// 1 - dot / (alpha_i + alpha_j - dot). Throws InvalidInput unless
// 0 <= dot <= min(alpha_i, alpha_j) and alpha_i + alpha_j > 0.
double tanimoto_from_dot(std::int64_t dot, std::int64_t alpha_i, std::int64_t alpha_j);

// Tanimoto distance with the clustering convention for empty fingerprints:
// two all-zero vectors are at distance 0, all-zero vs nonzero at distance 1.
double tanimoto_distance_total(std::uint32_t dot, std::uint32_t alpha_i,
                               std::uint32_t alpha_j) noexcept;

// Half-open range of row indices.
struct IndexRange {
    std::size_t first = 0;
    std::size_t last = 0;
};

// Distances from row `query` to every row in `candidates`. Entries for an
// all-zero query against an all-zero candidate are kUndefinedDistance.
std::vector<double> batch_tanimoto(std::size_t query, IndexRange candidates,
                                   const FingerprintSet& fps);

// out[t] = dot(row(query), row(candidates[t])). Work is split over up to
// `threads` workers; each entry is computed independently so the result does
// not depend on the thread count.
void batch_dot(const FingerprintSet& fps, std::size_t query,
               std::span<const std::size_t> candidates, std::span<std::uint32_t> out,
               unsigned threads = 1);

// out[t] = manhattan_distance(row(query), row(candidates[t])).
void batch_manhattan(const DenseDataset& data, std::size_t query,
                     std::span<const std::size_t> candidates, std::span<double> out,
                     unsigned threads = 1);

// A Tanimoto radius prepared for exact integer comparisons.
//
// When the radius is (to within 1e-15) a fraction num/den with den <= 2^20 the
// tests below are evaluated by cross-multiplication in 64-bit integers.
// Otherwise they fall back to floating point with 1e-12 slack toward
// inclusion.
class TanimotoThreshold {
public:
    // radius must be > 0. A radius >= 1 admits every pair.
    explicit TanimotoThreshold(double radius);

    double value() const noexcept { return radius_; }
    bool is_exact() const noexcept { return exact_; }
    bool admits_everything() const noexcept { return radius_ >= 1.0; }
    std::int64_t numerator() const noexcept { return num_; }
    std::int64_t denominator() const noexcept { return den_; }

    // tanimoto_distance_total(dot, alpha_i, alpha_j) <= radius.
    bool within(std::uint32_t dot, std::uint32_t alpha_i, std::uint32_t alpha_j) const noexcept;

    // Score cutoff for alpha_j >= alpha_i: alpha_j * (1 - radius) <= alpha_i.
    // Every alpha_j failing this test is farther than radius from any vector
    // with pop-count alpha_i.
    bool score_admits(std::uint32_t alpha_i, std::uint32_t alpha_j) const noexcept;

private:
    double radius_;
    bool exact_ = false;
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace classix
