#include "classix/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "classix/error.hpp"
#include "space.hpp"

namespace classix {

namespace {

constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();

template <class Space>
AggregationResult<typename Space::Score> aggregate_in(const Space& space,
                                                      const ScoredOrder<typename Space::Score>& order,
                                                      const typename Space::Threshold& radius,
                                                      const AggregateOptions& options) {
    const std::size_t n = space.size();
    if (order.size() != n || order.sorted_scores.size() != n) {
        throw InvalidInput("aggregate: order does not match the data");
    }

    AggregationResult<typename Space::Score> result;
    result.order = order;
    result.group_of_point.assign(n, kUnassigned);
    result.distance_to_start.assign(n, 0.0);

    std::vector<std::size_t> candidates;
    std::vector<double> dist;
    std::vector<char> within;
    const std::span<const typename Space::Score> scores(order.sorted_scores);

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t start = order.perm[i];
        if (result.group_of_point[start] != kUnassigned) continue;

        const std::size_t group = result.starting_points.size();
        result.starting_points.push_back(start);
        result.starting_positions.push_back(i);
        result.group_of_point[start] = group;
        std::size_t members = 1;

        const std::size_t last = options.prune ? space.window(scores, i, radius) : n - 1;
        result.stats.candidates_scanned += last - i;

        candidates.clear();
        for (std::size_t j = i + 1; j <= last; ++j) {
            const std::size_t p = order.perm[j];
            if (result.group_of_point[p] == kUnassigned) candidates.push_back(p);
        }
        space.evaluate(start, candidates, radius, dist, within);
        result.stats.distance_evals += candidates.size();

        for (std::size_t k = 0; k < candidates.size(); ++k) {
            if (!within[k]) continue;
            result.group_of_point[candidates[k]] = group;
            result.distance_to_start[candidates[k]] = dist[k];
            ++members;
        }
        result.group_sizes.push_back(members);
    }
    return result;
}

}  // namespace

std::size_t candidate_window_norm(double alpha_i, std::span<const double> sorted_scores,
                                  std::size_t start_pos, double radius) {
    if (start_pos >= sorted_scores.size()) throw InvalidInput("window start out of range");
    const double bound = alpha_i + radius + 1e-12 * (std::abs(alpha_i) + std::abs(radius));
    auto it = std::upper_bound(sorted_scores.begin() + static_cast<std::ptrdiff_t>(start_pos),
                               sorted_scores.end(), bound);
    const auto pos = static_cast<std::size_t>(it - sorted_scores.begin());
    return pos == start_pos ? start_pos : pos - 1;
}

std::size_t candidate_window_tanimoto(std::uint32_t alpha_i,
                                      std::span<const std::uint32_t> sorted_scores,
                                      std::size_t start_pos, const TanimotoThreshold& radius) {
    if (start_pos >= sorted_scores.size()) throw InvalidInput("window start out of range");
    if (radius.admits_everything()) return sorted_scores.size() - 1;
    auto it = std::partition_point(sorted_scores.begin() + static_cast<std::ptrdiff_t>(start_pos),
                                   sorted_scores.end(), [&](std::uint32_t alpha_j) {
                                       return radius.score_admits(alpha_i, alpha_j);
                                   });
    const auto pos = static_cast<std::size_t>(it - sorted_scores.begin());
    return pos == start_pos ? start_pos : pos - 1;
}

std::size_t candidate_window_tanimoto(std::uint32_t alpha_i,
                                      std::span<const std::uint32_t> sorted_scores,
                                      std::size_t start_pos, double radius) {
    return candidate_window_tanimoto(alpha_i, sorted_scores, start_pos, TanimotoThreshold(radius));
}

std::size_t candidate_window_tanimoto_triangle(std::uint32_t alpha_i,
                                               std::span<const std::uint32_t> sorted_scores,
                                               std::size_t start_pos,
                                               const TanimotoThreshold& radius, std::size_t d) {
    if (start_pos >= sorted_scores.size()) throw InvalidInput("window start out of range");
    if (d == 0) throw InvalidInput("dimension must be positive");
    if (radius.admits_everything()) return sorted_scores.size() - 1;
    auto admits = [&](std::uint32_t alpha_j) {
        if (alpha_j <= alpha_i) return true;
        const std::int64_t gap = std::int64_t{alpha_j} - alpha_i;
        if (radius.is_exact()) {
            // gap / d <= num / den
            return gap * radius.denominator() <= radius.numerator() * static_cast<std::int64_t>(d);
        }
        return static_cast<double>(gap) <= radius.value() * static_cast<double>(d) + 1e-12;
    };
    auto it = std::partition_point(sorted_scores.begin() + static_cast<std::ptrdiff_t>(start_pos),
                                   sorted_scores.end(), admits);
    const auto pos = static_cast<std::size_t>(it - sorted_scores.begin());
    return pos == start_pos ? start_pos : pos - 1;
}

DenseAggregation aggregate(const DenseDataset& data, const DenseOrder& order, double radius,
                           const AggregateOptions& options) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw InvalidInput("radius must be a positive finite number");
    }
    return aggregate_in(detail::DenseSpace(data, options.threads), order, radius, options);
}

FingerprintAggregation aggregate(const FingerprintSet& data, const FingerprintOrder& order,
                                 double radius, const AggregateOptions& options) {
    if (!(radius > 0.0 && radius < 1.0)) {
        throw InvalidInput("tanimoto radius must lie in (0, 1)");
    }
    return aggregate_in(detail::FingerprintSpace(data, options.threads), order,
                        TanimotoThreshold(radius), options);
}

}  // namespace classix
