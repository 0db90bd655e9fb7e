#pragma once
// Greedy aggregation over score-sorted data.
//
// Points are visited in ascending score order. The first unassigned point
// starts a new group; every unassigned point in its candidate window whose
// distance is <= radius joins the group. The candidate window is the run of
// sorted positions whose score passes a bound that no point within `radius`
// can violate:
//
//   Manhattan:  alpha_j <= alpha_i + radius        (reverse triangle inequality)
//   Tanimoto:   alpha_j <= alpha_i / (1 - radius)  (intersection bound)

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "classix/data.hpp"
#include "classix/metrics.hpp"

namespace classix {

struct AggregationStats {
    std::uint64_t distance_evals = 0;
    // Window positions visited after the starting point, assigned or not.
    std::uint64_t candidates_scanned = 0;
};

struct AggregateOptions {
    // false forces every window to [i, n-1]; the result must not change.
    bool prune = true;
    unsigned threads = 1;
};

// Group structure shared by both metrics. Groups are numbered in the order
// they were opened, which is ascending sorted position of their starting
// point.
struct Grouping {
    std::vector<std::size_t> group_of_point;      // by original index
    std::vector<std::size_t> starting_points;     // original index, by group
    std::vector<std::size_t> starting_positions;  // sorted position, by group
    std::vector<std::size_t> group_sizes;
    std::vector<double> distance_to_start;        // by original index
    AggregationStats stats;

    std::size_t num_groups() const noexcept { return starting_points.size(); }
};

template <class Score>
struct AggregationResult : Grouping {
    ScoredOrder<Score> order;
};

using DenseAggregation = AggregationResult<double>;
using FingerprintAggregation = AggregationResult<std::uint32_t>;

// Largest position p >= start_pos with sorted_scores[p] <= alpha_i + radius.
// A relative slack of 1e-12 is added toward inclusion to absorb rounding in
// the score sums.
std::size_t candidate_window_norm(double alpha_i, std::span<const double> sorted_scores,
                                  std::size_t start_pos, double radius);

// Largest position p >= start_pos with sorted_scores[p] * (1 - radius) <= alpha_i.
// radius >= 1 returns n - 1; radius <= 0 throws InvalidInput.
std::size_t candidate_window_tanimoto(std::uint32_t alpha_i,
                                      std::span<const std::uint32_t> sorted_scores,
                                      std::size_t start_pos, double radius);
std::size_t candidate_window_tanimoto(std::uint32_t alpha_i,
                                      std::span<const std::uint32_t> sorted_scores,
                                      std::size_t start_pos, const TanimotoThreshold& radius);

// Window from the reverse triangle inequality with the all-ones reference
// vector: (alpha_j - alpha_i) / d <= radius. Never smaller than the
// intersection-bound window; kept for comparison.
std::size_t candidate_window_tanimoto_triangle(std::uint32_t alpha_i,
                                               std::span<const std::uint32_t> sorted_scores,
                                               std::size_t start_pos,
                                               const TanimotoThreshold& radius, std::size_t d);

// `order` must come from score_and_sort on the same data. radius > 0.
DenseAggregation aggregate(const DenseDataset& data, const DenseOrder& order, double radius,
                           const AggregateOptions& options = {});
// Requires 0 < radius < 1.
FingerprintAggregation aggregate(const FingerprintSet& data, const FingerprintOrder& order,
                                 double radius, const AggregateOptions& options = {});

}  // namespace classix
