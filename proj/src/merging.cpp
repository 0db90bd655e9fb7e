#include "classix/merging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "classix/error.hpp"
#include "space.hpp"

namespace classix {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

template <class Score>
std::vector<Score> group_scores(const AggregationResult<Score>& agg) {
    std::vector<Score> out(agg.num_groups());
    for (std::size_t g = 0; g < out.size(); ++g) {
        out[g] = agg.order.sorted_scores[agg.starting_positions[g]];
    }
    return out;
}

template <class Space>
MergeResult merge_in(const Space& space, const AggregationResult<typename Space::Score>& agg,
                     const typename Space::Threshold& threshold, double threshold_value,
                     const AggregateOptions& options) {
    const std::size_t groups = agg.num_groups();
    const auto scores = group_scores(agg);
    DisjointSets sets(groups);

    MergeResult result;
    result.threshold = threshold_value;

    std::vector<std::size_t> candidate_groups;
    std::vector<std::size_t> candidates;
    std::vector<double> dist;
    std::vector<char> within;

    for (std::size_t g = 0; g < groups; ++g) {
        const std::size_t last = options.prune ? space.window(scores, g, threshold) : groups - 1;
        candidate_groups.clear();
        candidates.clear();
        const std::size_t root = sets.find(g);
        for (std::size_t h = g + 1; h <= last; ++h) {
            if (sets.find(h) == root) continue;
            candidate_groups.push_back(h);
            candidates.push_back(agg.starting_points[h]);
        }
        space.evaluate(agg.starting_points[g], candidates, threshold, dist, within);
        result.distance_evals += candidates.size();
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            if (within[k] && sets.unite(g, candidate_groups[k])) {
                result.edges.push_back({g, candidate_groups[k], dist[k]});
            }
        }
    }

    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> id_of_root(groups, kNone);
    std::size_t next = 0;
    result.cluster_of_group.assign(groups, kNone);
    for (std::size_t i = 0; i < agg.group_of_point.size(); ++i) {
        const std::size_t root = sets.find(agg.group_of_point[i]);
        if (id_of_root[root] == kNone) id_of_root[root] = next++;
    }
    for (std::size_t g = 0; g < groups; ++g) result.cluster_of_group[g] = id_of_root[sets.find(g)];
    return result;
}

template <class Space>
MinPtsResult min_pts_in(const Space& space, const AggregationResult<typename Space::Score>& agg,
                        const MergeResult& merged, std::size_t min_pts) {
    if (min_pts == 0) throw InvalidInput("minPts must be at least 1");
    const std::size_t groups = agg.num_groups();
    if (merged.cluster_of_group.size() != groups) {
        throw InvalidInput("apply_min_pts: merge result does not match the aggregation");
    }

    MinPtsResult result;
    result.cluster_of_group = merged.cluster_of_group;
    if (min_pts <= 1) return result;

    const std::size_t clusters = merged.num_clusters();
    std::vector<std::size_t> size(clusters, 0);
    for (std::size_t g = 0; g < groups; ++g) size[merged.cluster_of_group[g]] += agg.group_sizes[g];

    std::vector<char> qualifies(clusters, 0);
    bool any = false;
    for (std::size_t c = 0; c < clusters; ++c) {
        qualifies[c] = size[c] >= min_pts ? 1 : 0;
        any = any || qualifies[c];
    }
    if (!any) {
        result.fallback = true;
        return result;
    }

    // Cluster ids follow first appearance in original index order, so the id
    // also orders clusters by their smallest member index.
    std::vector<std::size_t> small;
    for (std::size_t c = 0; c < clusters; ++c) {
        if (!qualifies[c]) small.push_back(c);
    }
    std::stable_sort(small.begin(), small.end(),
                     [&](std::size_t a, std::size_t b) { return size[a] < size[b]; });

    std::vector<std::vector<std::size_t>> groups_of(clusters);
    for (std::size_t g = 0; g < groups; ++g) groups_of[merged.cluster_of_group[g]].push_back(g);

    // Candidate targets, ascending group id, hence nondecreasing score.
    const auto scores = group_scores(agg);
    std::vector<std::size_t> targets;
    std::vector<typename Space::Score> target_scores;
    for (std::size_t g = 0; g < groups; ++g) {
        if (qualifies[merged.cluster_of_group[g]]) {
            targets.push_back(g);
            target_scores.push_back(scores[g]);
        }
    }

    for (std::size_t c : small) {
        for (std::size_t g : groups_of[c]) {
            const std::size_t sp = agg.starting_points[g];
            const auto score = scores[g];
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_t = 0;
            auto consider = [&](std::size_t t) {
                const double d = space.distance(sp, agg.starting_points[targets[t]]);
                ++result.distance_evals;
                if (d < best || (d == best && agg.starting_points[targets[t]] <
                                                  agg.starting_points[targets[best_t]])) {
                    best = d;
                    best_t = t;
                }
            };
            // Walk outward from the score position; stop each side once the
            // score gap alone exceeds the best distance found.
            const auto mid = static_cast<std::size_t>(
                std::lower_bound(target_scores.begin(), target_scores.end(), score) -
                target_scores.begin());
            std::size_t up = mid;
            std::size_t down = mid;
            bool up_open = up < targets.size();
            bool down_open = down > 0;
            while (up_open || down_open) {
                if (up_open) {
                    if (Space::lower_bound(score, target_scores[up]) > best) {
                        up_open = false;
                    } else {
                        consider(up);
                        up_open = ++up < targets.size();
                    }
                }
                if (down_open) {
                    if (Space::lower_bound(score, target_scores[down - 1]) > best) {
                        down_open = false;
                    } else {
                        consider(down - 1);
                        down_open = --down > 0;
                    }
                }
            }
            const std::size_t target = targets[best_t];
            const std::size_t new_cluster = merged.cluster_of_group[target];
            result.cluster_of_group[g] = new_cluster;
            result.log.push_back({g, c, new_cluster, target, agg.starting_points[target], best});
        }
    }

    for (std::size_t e = 0; e < merged.edges.size(); ++e) {
        if (!qualifies[merged.cluster_of_group[merged.edges[e].group_a]]) {
            result.invalidated_edges.push_back(e);
        }
    }
    return result;
}

double tanimoto_merge_threshold(double radius, double scale) {
    return std::min(scale * radius, 1.0);
}

void check_scale(double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidInput("scale must be positive");
}

}  // namespace

std::size_t MergeResult::num_clusters() const {
    if (cluster_of_group.empty()) return 0;
    return *std::max_element(cluster_of_group.begin(), cluster_of_group.end()) + 1;
}

MergeResult merge_groups(const DenseAggregation& agg, const DenseDataset& data, double radius,
                         double scale, const AggregateOptions& options) {
    check_scale(scale);
    if (!(radius > 0.0)) throw InvalidInput("radius must be positive");
    const double threshold = scale * radius;
    return merge_in(detail::DenseSpace(data, options.threads), agg, threshold, threshold, options);
}

MergeResult merge_groups(const FingerprintAggregation& agg, const FingerprintSet& data,
                         double radius, double scale, const AggregateOptions& options) {
    check_scale(scale);
    if (!(radius > 0.0)) throw InvalidInput("radius must be positive");
    const double threshold = tanimoto_merge_threshold(radius, scale);
    return merge_in(detail::FingerprintSpace(data, options.threads), agg,
                    TanimotoThreshold(threshold), threshold, options);
}

MinPtsResult apply_min_pts(const DenseAggregation& agg, const MergeResult& merged,
                           std::size_t min_pts, const DenseDataset& data) {
    return min_pts_in(detail::DenseSpace(data, 1), agg, merged, min_pts);
}

MinPtsResult apply_min_pts(const FingerprintAggregation& agg, const MergeResult& merged,
                           std::size_t min_pts, const FingerprintSet& data) {
    return min_pts_in(detail::FingerprintSpace(data, 1), agg, merged, min_pts);
}

}  // namespace classix
