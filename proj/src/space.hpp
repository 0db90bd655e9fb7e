#pragma once
// Metric adapters used by the generic aggregation / merging code. Each space
// exposes the score window, a batched membership test, a pointwise distance
// and a score-based lower bound on distance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "classix/aggregation.hpp"
#include "classix/data.hpp"
#include "classix/metrics.hpp"

namespace classix::detail {

class FingerprintSpace {
public:
    using Score = std::uint32_t;
    using Threshold = TanimotoThreshold;

    FingerprintSpace(const FingerprintSet& fps, unsigned threads) : fps_(fps), threads_(threads) {}

    std::size_t size() const { return fps_.size(); }
    Score score(std::size_t i) const { return fps_.score(i); }

    std::size_t window(std::span<const Score> sorted, std::size_t pos, const Threshold& t) const {
        return candidate_window_tanimoto(sorted[pos], sorted, pos, t);
    }

    // dist[t] and within[t] for each candidate.
    void evaluate(std::size_t query, std::span<const std::size_t> candidates, const Threshold& t,
                  std::vector<double>& dist, std::vector<char>& within) const {
        dots_.resize(candidates.size());
        batch_dot(fps_, query, candidates, dots_, threads_);
        dist.resize(candidates.size());
        within.resize(candidates.size());
        const Score aq = fps_.score(query);
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            const Score aj = fps_.score(candidates[k]);
            dist[k] = tanimoto_distance_total(dots_[k], aq, aj);
            within[k] = t.within(dots_[k], aq, aj) ? 1 : 0;
        }
    }

    double distance(std::size_t a, std::size_t b) const {
        return tanimoto_distance_total(dot(fps_.row(a), fps_.row(b)), fps_.score(a), fps_.score(b));
    }

    // Smallest distance two vectors with these pop-counts can have.
    static double lower_bound(Score a, Score b) {
        const Score lo = std::min(a, b);
        const Score hi = std::max(a, b);
        if (hi == 0) return 0.0;
        return 1.0 - static_cast<double>(lo) / static_cast<double>(hi);
    }

private:
    const FingerprintSet& fps_;
    unsigned threads_;
    mutable std::vector<std::uint32_t> dots_;
};

class DenseSpace {
public:
    using Score = double;
    using Threshold = double;

    DenseSpace(const DenseDataset& data, unsigned threads) : data_(data), threads_(threads) {}

    std::size_t size() const { return data_.size(); }
    Score score(std::size_t i) const { return manhattan_norm(data_.row(i)); }

    std::size_t window(std::span<const Score> sorted, std::size_t pos, const Threshold& t) const {
        return candidate_window_norm(sorted[pos], sorted, pos, t);
    }

    void evaluate(std::size_t query, std::span<const std::size_t> candidates, const Threshold& t,
                  std::vector<double>& dist, std::vector<char>& within) const {
        dist.resize(candidates.size());
        within.resize(candidates.size());
        batch_manhattan(data_, query, candidates, dist, threads_);
        for (std::size_t k = 0; k < candidates.size(); ++k) within[k] = dist[k] <= t ? 1 : 0;
    }

    double distance(std::size_t a, std::size_t b) const {
        return manhattan_distance(data_.row(a), data_.row(b));
    }

    // Reverse triangle inequality, loosened by the same rounding slack the
    // window uses.
    static double lower_bound(Score a, Score b) {
        const double gap = std::abs(a - b);
        return gap - 1e-12 * (std::abs(a) + std::abs(b) + 1.0);
    }

private:
    const DenseDataset& data_;
    unsigned threads_;
};

}  // namespace classix::detail
