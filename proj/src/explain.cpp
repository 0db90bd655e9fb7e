#include "classix/explain.hpp"

#include <algorithm>
#include <deque>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "classix/error.hpp"

namespace classix {

std::string_view to_string(EdgeKind kind) {
    switch (kind) {
        case EdgeKind::Aggregation: return "aggregation";
        case EdgeKind::Merge: return "merge";
        case EdgeKind::Reassignment: return "reassignment";
    }
    return "unknown";
}

EdgeKind parse_edge_kind(std::string_view name) {
    if (name == "aggregation") return EdgeKind::Aggregation;
    if (name == "merge") return EdgeKind::Merge;
    if (name == "reassignment") return EdgeKind::Reassignment;
    throw InvalidInput("unknown edge kind '" + std::string(name) + "'");
}

ExplainGraph::ExplainGraph(std::vector<std::size_t> group_of_point,
                           std::vector<std::size_t> starting_points,
                           std::vector<ExplainEdge> edges)
    : group_of_point_(std::move(group_of_point)),
      starting_points_(std::move(starting_points)),
      edges_(std::move(edges)) {
    const std::size_t n = group_of_point_.size();
    is_start_.assign(n, 0);
    for (std::size_t sp : starting_points_) {
        if (sp >= n) throw InvalidInput("starting point out of range");
        is_start_[sp] = 1;
    }
    offsets_.assign(n + 1, 0);
    for (const auto& e : edges_) {
        if (e.u >= n || e.v >= n) throw InvalidInput("explain edge out of range");
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    for (std::size_t k = 0; k < n; ++k) offsets_[k + 1] += offsets_[k];
    adjacency_.resize(offsets_[n]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t idx = 0; idx < edges_.size(); ++idx) {
        adjacency_[fill[edges_[idx].u]++] = {edges_[idx].v, idx};
        adjacency_[fill[edges_[idx].v]++] = {edges_[idx].u, idx};
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[k]),
                  adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[k + 1]),
                  [](const Neighbor& a, const Neighbor& b) {
                      return a.node != b.node ? a.node < b.node : a.edge < b.edge;
                  });
    }
}

std::vector<ExplainEdge> ExplainGraph::a1_edges() const {
    std::vector<ExplainEdge> out;
    std::copy_if(edges_.begin(), edges_.end(), std::back_inserter(out),
                 [](const ExplainEdge& e) { return e.kind != EdgeKind::Reassignment; });
    return out;
}

std::vector<ExplainEdge> ExplainGraph::a2_edges() const {
    std::vector<ExplainEdge> out;
    std::copy_if(edges_.begin(), edges_.end(), std::back_inserter(out),
                 [](const ExplainEdge& e) { return e.kind == EdgeKind::Reassignment; });
    return out;
}

std::span<const ExplainGraph::Neighbor> ExplainGraph::neighbors(std::size_t node) const {
    return {adjacency_.data() + offsets_[node], offsets_[node + 1] - offsets_[node]};
}

ExplainGraph build_explain_graph(const Grouping& grouping, const MergeResult& merged,
                                 const MinPtsResult& min_pts) {
    std::vector<ExplainEdge> edges;
    const std::size_t n = grouping.group_of_point.size();
    edges.reserve(n + merged.edges.size() + min_pts.log.size());
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t sp = grouping.starting_points[grouping.group_of_point[i]];
        if (sp != i) edges.push_back({i, sp, EdgeKind::Aggregation, grouping.distance_to_start[i]});
    }
    std::vector<char> invalid(merged.edges.size(), 0);
    for (std::size_t e : min_pts.invalidated_edges) invalid[e] = 1;
    for (std::size_t e = 0; e < merged.edges.size(); ++e) {
        if (invalid[e]) continue;
        const auto& m = merged.edges[e];
        edges.push_back({grouping.starting_points[m.group_a], grouping.starting_points[m.group_b],
                         EdgeKind::Merge, m.distance});
    }
    for (const auto& r : min_pts.log) {
        edges.push_back({grouping.starting_points[r.group], r.target_starting_point,
                         EdgeKind::Reassignment, r.distance});
    }
    return ExplainGraph(grouping.group_of_point, grouping.starting_points, std::move(edges));
}

std::string_view Hop::relation() const {
    switch (kind) {
        case EdgeKind::Aggregation: return forward ? "joined-group-of" : "has-member";
        case EdgeKind::Merge: return "merged-with";
        case EdgeKind::Reassignment: return forward ? "reassigned-to" : "absorbed";
    }
    return "unknown";
}

Explanation explain_pair(const ExplainGraph& graph, std::span<const std::int64_t> labels,
                         std::size_t i, std::size_t j) {
    const std::size_t n = graph.num_nodes();
    if (labels.size() != n) throw InvalidInput("explain_pair: label count does not match graph");
    if (i >= n || j >= n) throw InvalidInput("explain_pair: index out of range");

    Explanation out;
    out.i = i;
    out.j = j;
    out.label_i = labels[i];
    out.label_j = labels[j];
    out.same_cluster = labels[i] == labels[j];
    if (!out.same_cluster || i == j) return out;

    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> via_edge(n, kNone);
    std::vector<std::size_t> prev(n, kNone);
    std::vector<char> seen(n, 0);
    std::deque<std::size_t> queue{i};
    seen[i] = 1;
    while (!queue.empty() && !seen[j]) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (const auto& nb : graph.neighbors(u)) {
            if (seen[nb.node]) continue;
            seen[nb.node] = 1;
            prev[nb.node] = u;
            via_edge[nb.node] = nb.edge;
            queue.push_back(nb.node);
        }
    }
    if (!seen[j]) {
        throw InvariantViolation("points " + std::to_string(i) + " and " + std::to_string(j) +
                                 " share a label but are not connected in the explain graph");
    }
    for (std::size_t v = j; v != i; v = prev[v]) {
        const auto& e = graph.edge(via_edge[v]);
        out.path.push_back({prev[v], v, e.kind, e.distance, e.u == prev[v]});
    }
    std::reverse(out.path.begin(), out.path.end());
    return out;
}

std::string format_explanation(const Explanation& explanation) {
    std::ostringstream os;
    os << std::setprecision(6);
    for (const auto& hop : explanation.path) {
        os << hop.from << " -[" << hop.relation() << ", " << hop.distance << "]-> " << hop.to
           << '\n';
    }
    if (!explanation.same_cluster) {
        os << "verdict: " << explanation.i << " and " << explanation.j
           << " are in different clusters (" << explanation.label_i << " vs "
           << explanation.label_j << ")\n";
    } else {
        os << "verdict: " << explanation.i << " and " << explanation.j << " are in cluster "
           << explanation.label_i << " (path length " << explanation.path.size() << ")\n";
    }
    return os.str();
}

std::string format_explanation_jsonl(const Explanation& explanation) {
    std::string out;
    for (std::size_t k = 0; k < explanation.path.size(); ++k) {
        const auto& hop = explanation.path[k];
        nlohmann::json rec = {{"type", "hop"},
                              {"step", k},
                              {"from", hop.from},
                              {"to", hop.to},
                              {"kind", to_string(hop.kind)},
                              {"relation", hop.relation()},
                              {"distance", hop.distance}};
        out += rec.dump();
        out += '\n';
    }
    nlohmann::json verdict = {{"type", "verdict"},
                              {"i", explanation.i},
                              {"j", explanation.j},
                              {"label_i", explanation.label_i},
                              {"label_j", explanation.label_j},
                              {"same_cluster", explanation.same_cluster},
                              {"path_length", explanation.path.size()}};
    out += verdict.dump();
    out += '\n';
    return out;
}

}  // namespace classix
