#include <gtest/gtest.h>

#include <random>

#include <json.hpp>

#include "classix/error.hpp"
#include "classix/explain.hpp"
#include "classix/pipeline.hpp"
#include "support.hpp"

using namespace classix;

TEST(ExplainGraph, SingleGroupIsAStar) {
    const auto f = FingerprintSet::from_strings({"1110", "1111", "0111", "1101"});
    ClusterParams p;
    p.radius = 0.5;
    const auto model = cluster(f, p);
    ASSERT_EQ(model.num_groups(), 1u);
    EXPECT_EQ(model.explain.a1_edges().size(), 3u);
    EXPECT_TRUE(model.explain.a2_edges().empty());
    for (const auto& e : model.explain.edges()) EXPECT_EQ(e.kind, EdgeKind::Aggregation);

    const auto e = explain(model, 2, 3);
    ASSERT_EQ(e.path.size(), 2u);
    EXPECT_EQ(e.path[0].to, 0u);
    EXPECT_EQ(e.path[0].relation(), "joined-group-of");
    EXPECT_EQ(e.path[1].relation(), "has-member");
    for (const auto& h : e.path) EXPECT_LE(h.distance, 0.5);
}

TEST(ExplainGraph, MergedGroupsGetOneMergeEdge) {
    const auto x = DenseDataset::from_rows({{0.0}, {0.5}, {1.0}, {1.5}});
    ClusterParams p;
    p.metric = DistanceKind::Manhattan;
    p.radius = 0.7;
    const auto model = cluster(x, p);
    ASSERT_EQ(model.num_groups(), 2u);
    ASSERT_EQ(model.num_clusters(), 1u);
    std::size_t merges = 0, stars = 0;
    for (const auto& e : model.explain.edges()) {
        merges += e.kind == EdgeKind::Merge;
        stars += e.kind == EdgeKind::Aggregation;
    }
    EXPECT_EQ(merges, 1u);
    EXPECT_EQ(stars, 2u);
}

TEST(ExplainGraph, ReassignmentReplacesMergeEdge) {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 6; ++i) rows.push_back({0.1 * i});
    rows.push_back({3.0});
    rows.push_back({4.2});  // two groups merged into a 2-point cluster
    const auto x = DenseDataset::from_rows(rows);
    ClusterParams p;
    p.metric = DistanceKind::Manhattan;
    p.radius = 1.0;
    p.min_pts = 5;
    p.orthant_shift = false;
    const auto model = cluster(x, p);
    EXPECT_EQ(model.num_clusters(), 1u);
    ASSERT_EQ(model.reassignment_log.size(), 2u);
    EXPECT_EQ(model.explain.a2_edges().size(), 2u);
    for (const auto& e : model.explain.edges()) EXPECT_NE(e.kind, EdgeKind::Merge);
}

TEST(ExplainPair, BasicCases) {
    const auto f = FingerprintSet::from_strings({"111000", "110000", "111100", "000111", "000011"});
    ClusterParams p;
    p.radius = 0.4;
    const auto model = cluster(f, p);
    const auto self = explain(model, 2, 2);
    EXPECT_TRUE(self.same_cluster);
    EXPECT_TRUE(self.path.empty());

    const auto same = explain(model, 0, 2);
    ASSERT_TRUE(same.same_cluster);
    ASSERT_EQ(same.path.size(), 2u);
    EXPECT_EQ(same.path[0].relation(), "joined-group-of");
    EXPECT_EQ(same.path[0].to, 1u);
    EXPECT_DOUBLE_EQ(same.path[0].distance, 1.0 / 3.0);
    EXPECT_EQ(same.path[1].relation(), "merged-with");
    EXPECT_EQ(same.path[1].distance, 0.5);

    const auto apart = explain(model, 0, 3);
    EXPECT_FALSE(apart.same_cluster);
    EXPECT_TRUE(apart.path.empty());
    EXPECT_THROW(explain(model, 0, 9), InvalidInput);
}

TEST(ExplainPair, TextAndJsonLines) {
    const auto f = FingerprintSet::from_strings({"111000", "110000", "111100", "000111"});
    ClusterParams p;
    p.radius = 0.4;
    const auto model = cluster(f, p);
    const auto e = explain(model, 0, 2);
    const auto text = format_explanation(e);
    EXPECT_NE(text.find("0 -[joined-group-of, 0.333333]-> 1\n"), std::string::npos);
    EXPECT_NE(text.find("verdict: 0 and 2 are in cluster 0"), std::string::npos);

    std::istringstream lines(format_explanation_jsonl(e));
    std::string line;
    std::vector<nlohmann::json> recs;
    while (std::getline(lines, line)) recs.push_back(nlohmann::json::parse(line));
    ASSERT_EQ(recs.size(), 3u);
    EXPECT_EQ(recs[0]["type"], "hop");
    EXPECT_EQ(recs[0]["kind"], "aggregation");
    EXPECT_EQ(recs[1]["from"], 1);
    EXPECT_EQ(recs[2]["type"], "verdict");
    EXPECT_EQ(recs[2]["same_cluster"], true);

    const auto apart = format_explanation(explain(model, 0, 3));
    EXPECT_NE(apart.find("different clusters"), std::string::npos);
}

TEST(ExplainPair, ComponentsEqualLabels) {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 10; ++rep) {
        const auto f = oracle::clustered_fingerprints(120, 32, 5, 0.1, rng);
        ClusterParams p;
        p.radius = 0.3;
        p.min_pts = 1 + rep % 6;
        const auto model = cluster(f, p);
        const auto comp = oracle::components(f.size(), [&](std::size_t a, std::size_t b) {
            for (const auto& nb : model.explain.neighbors(a)) {
                if (nb.node == b) return true;
            }
            return false;
        });
        EXPECT_EQ(oracle::canonical(comp), model.labels);
    }
}
