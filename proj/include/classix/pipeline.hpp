#pragma once
// End-to-end clustering: score and sort, aggregate, merge, minPts, explain.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "classix/aggregation.hpp"
#include "classix/data.hpp"
#include "classix/explain.hpp"
#include "classix/merging.hpp"

namespace classix {

struct ClusterParams {
    DistanceKind metric = DistanceKind::Tanimoto;
    double radius = 0.4;
    double scale = 1.5;
    std::size_t min_pts = 1;
    // Manhattan only: translate by the component-wise minimum first.
    bool orthant_shift = true;
    bool prune = true;
    unsigned threads = 1;
};

// Throws InvalidInput with a message naming the offending parameter.
void validate(const ClusterParams& params);

struct PhaseTimings {
    double sort_s = 0.0;
    double aggregate_s = 0.0;
    double merge_s = 0.0;
    double min_pts_s = 0.0;
};

struct ClusterModel {
    // Final cluster per point, numbered 0..C-1 by first appearance in
    // original index order.
    std::vector<std::int64_t> labels;
    std::vector<std::size_t> group_of_point;
    std::vector<std::size_t> starting_points;
    std::vector<std::size_t> cluster_of_group;  // final numbering
    ClusterParams params;
    ExplainGraph explain;
    // Cluster ids here use the numbering right after merging.
    std::vector<Reassignment> reassignment_log;
    bool min_pts_fallback = false;

    AggregationStats aggregation_stats;
    std::uint64_t merge_distance_evals = 0;
    std::uint64_t min_pts_distance_evals = 0;
    PhaseTimings timings;

    std::size_t num_groups() const noexcept { return starting_points.size(); }
    std::size_t num_clusters() const;
};

// params.metric must be Tanimoto.
ClusterModel cluster(const FingerprintSet& data, const ClusterParams& params);
// params.metric must be Manhattan. Shifts the data unless params.orthant_shift
// is false or the data is already shifted.
ClusterModel cluster(const DenseDataset& data, const ClusterParams& params);

// Convenience wrapper around explain_pair for a finished model.
Explanation explain(const ClusterModel& model, std::size_t i, std::size_t j);

// Relabels so that clusters are numbered by first appearance.
std::vector<std::int64_t> canonical_labels(const std::vector<std::int64_t>& labels);

}  // namespace classix
