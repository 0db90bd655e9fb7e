#pragma once
// Group merging and minPts redistribution.
//
// Clusters are the connected components of the graph on starting points
// with an edge wherever two starting points lie within scale * radius. The
// search for neighbours reuses the score window of the aggregation phase.
// Afterwards, clusters with fewer than minPts points are dissolved and each
// of their groups moves to the cluster owning the nearest starting point
// among clusters that meet the threshold.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "classix/aggregation.hpp"

namespace classix {

// A merge that joined two previously separate components.
struct MergeEdge {
    std::size_t group_a;
    std::size_t group_b;
    double distance;
};

struct MergeResult {
    // Cluster ids are numbered by first appearance in original index order.
    std::vector<std::size_t> cluster_of_group;
    std::vector<MergeEdge> edges;
    double threshold = 0.0;
    std::uint64_t distance_evals = 0;

    std::size_t num_clusters() const;
};

// For Tanimoto the threshold is min(scale * radius, 1).
MergeResult merge_groups(const DenseAggregation& agg, const DenseDataset& data, double radius,
                         double scale = 1.5, const AggregateOptions& options = {});
MergeResult merge_groups(const FingerprintAggregation& agg, const FingerprintSet& data,
                         double radius, double scale = 1.5, const AggregateOptions& options = {});

struct Reassignment {
    std::size_t group;
    std::size_t old_cluster;  // merge numbering
    std::size_t new_cluster;  // merge numbering
    std::size_t target_group;
    std::size_t target_starting_point;
    double distance;
};

struct MinPtsResult {
    // Cluster ids still use the merge numbering; dissolved ids disappear.
    std::vector<std::size_t> cluster_of_group;
    std::vector<Reassignment> log;
    // Indices into MergeResult::edges whose clusters were dissolved.
    std::vector<std::size_t> invalidated_edges;
    // Set when no cluster reached min_pts and the clustering was left as is.
    bool fallback = false;
    std::uint64_t distance_evals = 0;
};

// Small clusters are processed in increasing size (ties: smallest member
// index); within a cluster, groups go in ascending group id. Targets are
// chosen against the cluster map as it stood before this pass. Nearest ties
// go to the smaller original index.
MinPtsResult apply_min_pts(const DenseAggregation& agg, const MergeResult& merged,
                           std::size_t min_pts, const DenseDataset& data);
MinPtsResult apply_min_pts(const FingerprintAggregation& agg, const MergeResult& merged,
                           std::size_t min_pts, const FingerprintSet& data);

}  // namespace classix
