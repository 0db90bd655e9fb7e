#include "classix/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>

#include "classix/error.hpp"

namespace classix {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

template <class Data>
ClusterModel run(const Data& data, const ClusterParams& params) {
    ClusterModel model;
    model.params = params;
    const AggregateOptions options{params.prune, params.threads};

    auto t0 = Clock::now();
    auto order = score_and_sort(data, params.metric);
    model.timings.sort_s = seconds_since(t0);

    t0 = Clock::now();
    auto agg = aggregate(data, order, params.radius, options);
    model.timings.aggregate_s = seconds_since(t0);

    t0 = Clock::now();
    auto merged = merge_groups(agg, data, params.radius, params.scale, options);
    model.timings.merge_s = seconds_since(t0);

    t0 = Clock::now();
    auto refined = apply_min_pts(agg, merged, params.min_pts, data);
    model.timings.min_pts_s = seconds_since(t0);

    model.explain = build_explain_graph(agg, merged, refined);

    const std::size_t n = agg.group_of_point.size();
    std::vector<std::int64_t> raw(n);
    for (std::size_t i = 0; i < n; ++i) {
        raw[i] = static_cast<std::int64_t>(refined.cluster_of_group[agg.group_of_point[i]]);
    }
    model.labels = canonical_labels(raw);
    model.cluster_of_group.assign(agg.num_groups(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        model.cluster_of_group[agg.group_of_point[i]] = static_cast<std::size_t>(model.labels[i]);
    }

    model.group_of_point = std::move(agg.group_of_point);
    model.starting_points = std::move(agg.starting_points);
    model.reassignment_log = std::move(refined.log);
    model.min_pts_fallback = refined.fallback;
    model.aggregation_stats = agg.stats;
    model.merge_distance_evals = merged.distance_evals;
    model.min_pts_distance_evals = refined.distance_evals;
    return model;
}

}  // namespace

void validate(const ClusterParams& params) {
    if (!std::isfinite(params.radius) || !(params.radius > 0.0)) {
        throw InvalidInput("radius must be a positive number");
    }
    if (params.metric == DistanceKind::Tanimoto && !(params.radius < 1.0)) {
        throw InvalidInput("tanimoto radius must lie in (0, 1); got " +
                           std::to_string(params.radius));
    }
    if (!std::isfinite(params.scale) || !(params.scale > 0.0)) {
        throw InvalidInput("scale must be a positive number");
    }
    if (params.min_pts == 0) throw InvalidInput("minPts must be at least 1");
    if (params.threads == 0) throw InvalidInput("threads must be at least 1");
}

std::size_t ClusterModel::num_clusters() const {
    if (labels.empty()) return 0;
    return static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end())) + 1;
}

ClusterModel cluster(const FingerprintSet& data, const ClusterParams& params) {
    if (params.metric != DistanceKind::Tanimoto) {
        throw InvalidInput("fingerprint data must be clustered with the tanimoto metric");
    }
    validate(params);
    return run(data, params);
}

ClusterModel cluster(const DenseDataset& data, const ClusterParams& params) {
    if (params.metric != DistanceKind::Manhattan) {
        throw InvalidInput("dense data must be clustered with the manhattan metric");
    }
    validate(params);
    if (params.orthant_shift && !data.is_shifted()) {
        const auto shifted = orthant_shift(data);
        return run(shifted.dataset, params);
    }
    return run(data, params);
}

Explanation explain(const ClusterModel& model, std::size_t i, std::size_t j) {
    return explain_pair(model.explain, model.labels, i, j);
}

std::vector<std::int64_t> canonical_labels(const std::vector<std::int64_t>& labels) {
    std::map<std::int64_t, std::int64_t> ids;
    std::vector<std::int64_t> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = ids.try_emplace(labels[i], static_cast<std::int64_t>(ids.size()));
        out[i] = it->second;
    }
    return out;
}

}  // namespace classix
