#pragma once
// Provenance graph for clustering decisions.
//
// Nodes are data points (original indices). Group membership is stored as a
// star from each member to its group's starting point; merges and minPts
// reassignments connect starting points. Connected components of the whole
// graph are exactly the final clusters.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "classix/aggregation.hpp"
#include "classix/merging.hpp"

namespace classix {

enum class EdgeKind {
    Aggregation,   // member -- starting point
    Merge,         // starting point -- starting point
    Reassignment,  // reassigned starting point -- target starting point (minPts)
};

std::string_view to_string(EdgeKind kind);
EdgeKind parse_edge_kind(std::string_view name);

struct ExplainEdge {
    std::size_t u;
    std::size_t v;
    EdgeKind kind;
    double distance;
};

class ExplainGraph {
public:
    struct Neighbor {
        std::size_t node;
        std::size_t edge;
    };

    ExplainGraph() = default;
    ExplainGraph(std::vector<std::size_t> group_of_point, std::vector<std::size_t> starting_points,
                 std::vector<ExplainEdge> edges);

    std::size_t num_nodes() const noexcept { return group_of_point_.size(); }
    const std::vector<ExplainEdge>& edges() const noexcept { return edges_; }
    const ExplainEdge& edge(std::size_t e) const { return edges_[e]; }

    // Aggregation and merge edges; minPts edges.
    std::vector<ExplainEdge> a1_edges() const;
    std::vector<ExplainEdge> a2_edges() const;

    // Sorted by neighbour node, then edge index.
    std::span<const Neighbor> neighbors(std::size_t node) const;

    std::size_t group_of(std::size_t node) const { return group_of_point_[node]; }
    bool is_starting_point(std::size_t node) const { return is_start_[node] != 0; }
    const std::vector<std::size_t>& group_of_point() const noexcept { return group_of_point_; }
    const std::vector<std::size_t>& starting_points() const noexcept { return starting_points_; }

private:
    std::vector<std::size_t> group_of_point_;
    std::vector<std::size_t> starting_points_;
    std::vector<char> is_start_;
    std::vector<ExplainEdge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<Neighbor> adjacency_;
};

// Star edges for every non-starting member, the merge edges that survived
// minPts, and one reassignment edge per log entry.
ExplainGraph build_explain_graph(const Grouping& grouping, const MergeResult& merged,
                                 const MinPtsResult& min_pts);

struct Hop {
    std::size_t from;
    std::size_t to;
    EdgeKind kind;
    double distance;
    // True when the hop runs from the edge's u endpoint to its v endpoint.
    bool forward;

    // "joined-group-of", "has-member", "merged-with", "reassigned-to" or
    // "absorbed", depending on kind and direction.
    std::string_view relation() const;
};

struct Explanation {
    std::size_t i = 0;
    std::size_t j = 0;
    std::int64_t label_i = 0;
    std::int64_t label_j = 0;
    bool same_cluster = false;
    std::vector<Hop> path;  // empty when different clusters or i == j
};

// Breadth-first search from i to j when both carry the same label. Neighbour
// order is ascending node index, so the path is deterministic. Throws
// InvalidInput for out-of-range indices and InvariantViolation if two points
// share a label but are not connected.
Explanation explain_pair(const ExplainGraph& graph, std::span<const std::int64_t> labels,
                         std::size_t i, std::size_t j);

// One line per hop, "<from> -[relation, distance]-> <to>", then a verdict
// line.
std::string format_explanation(const Explanation& explanation);

// JSON Lines: one {"type":"hop",...} record per hop and a final
// {"type":"verdict",...} record.
std::string format_explanation_jsonl(const Explanation& explanation);

}  // namespace classix
