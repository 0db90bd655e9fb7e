#pragma once
// Dataset containers, scoring and sorting.
//
// DenseDataset holds real-valued points row-major. FingerprintSet holds
// binary vectors packed LSB-first into 64-bit words (bit b of a row lives in
// word b / 64 at position b % 64); the tail of the last word is always zero.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "classix/distance_kind.hpp"

namespace classix {

class DenseDataset {
public:
    // values is row-major n x d. Throws InvalidInput for n == 0, d == 0,
    // a size mismatch, or a non-finite entry.
    DenseDataset(std::size_t n, std::size_t d, std::vector<double> values);

    // A dataset that has already been translated by `shift`. Every entry must
    // be nonnegative and shift.size() must equal d.
    DenseDataset(std::size_t n, std::size_t d, std::vector<double> values,
                 std::vector<double> shift);

    static DenseDataset from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const noexcept { return n_; }
    std::size_t dims() const noexcept { return d_; }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * d_, d_};
    }
    const std::vector<double>& values() const noexcept { return values_; }

    // The shift c that was subtracted from every point, if any.
    const std::optional<std::vector<double>>& shift() const noexcept { return shift_; }
    bool is_shifted() const noexcept { return shift_.has_value(); }

    // Row i in the coordinates the data had before shifting.
    std::vector<double> original_row(std::size_t i) const;

private:
    std::size_t n_;
    std::size_t d_;
    std::vector<double> values_;
    std::optional<std::vector<double>> shift_;
};

struct OrthantShiftResult {
    DenseDataset dataset;
    std::vector<double> shift;
};

// Translates every point by the component-wise minimum c so that all entries
// become nonnegative. The returned dataset records c. Throws InvalidInput if
// the input was already shifted.
OrthantShiftResult orthant_shift(const DenseDataset& dataset);

class FingerprintSet {
public:
    static constexpr std::size_t kWordBits = 64;

    // words holds n rows of words_for(d) words each. Throws InvalidInput for
    // n == 0, d == 0, a size mismatch or nonzero padding bits.
    FingerprintSet(std::size_t n, std::size_t d, std::vector<std::uint64_t> words);

    // Each string is one row of '0'/'1' characters.
    static FingerprintSet from_strings(const std::vector<std::string>& rows);

    static constexpr std::size_t words_for(std::size_t d) noexcept {
        return (d + kWordBits - 1) / kWordBits;
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t dims() const noexcept { return d_; }
    std::size_t words_per_row() const noexcept { return words_per_row_; }

    std::span<const std::uint64_t> row(std::size_t i) const {
        return {words_.data() + i * words_per_row_, words_per_row_};
    }
    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    bool bit(std::size_t i, std::size_t b) const {
        return (words_[i * words_per_row_ + b / kWordBits] >> (b % kWordBits)) & 1u;
    }

    // Pop-count of row i.
    std::uint32_t score(std::size_t i) const { return scores_[i]; }
    const std::vector<std::uint32_t>& scores() const noexcept { return scores_; }

    std::string row_string(std::size_t i) const;

private:
    std::size_t n_;
    std::size_t d_;
    std::size_t words_per_row_;
    std::vector<std::uint64_t> words_;
    std::vector<std::uint32_t> scores_;
};

// perm[k] is the original index of the point at sorted position k.
template <class Score>
struct ScoredOrder {
    std::vector<std::size_t> perm;
    std::vector<Score> sorted_scores;

    std::size_t size() const noexcept { return perm.size(); }
};

using DenseOrder = ScoredOrder<double>;
using FingerprintOrder = ScoredOrder<std::uint32_t>;

// Manhattan norm of each point, stable-sorted ascending.
DenseOrder score_and_sort(const DenseDataset& data, DistanceKind kind = DistanceKind::Manhattan);
// Pop-count of each fingerprint, stable-sorted ascending.
FingerprintOrder score_and_sort(const FingerprintSet& data,
                                DistanceKind kind = DistanceKind::Tanimoto);

// Manhattan norm of one vector; uses pairwise summation above 4096 entries.
double manhattan_norm(std::span<const double> x);

}  // namespace classix
