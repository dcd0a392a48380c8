#include <gtest/gtest.h>

#include <random>

#include "ctxdiv/anchor.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using ctxdiv::Area;
using ctxdiv::AreaKind;
using ctxdiv::DeweyId;
using ctxdiv::NodeList;
using ctxdiv::SearchParams;

namespace {

SearchParams params(std::size_t k, std::size_t m)
{
    SearchParams p;
    p.k = k;
    p.m = m;
    return p;
}

} // namespace

TEST(Anchor, FourWayPartition)
{
    std::vector<NodeList> lists{{{1}, {1, 1}, {1, 2, 1}, {1, 3}}};
    auto parts = ctxdiv::partition_by_anchor(lists, DeweyId{1, 2});
    EXPECT_EQ(parts.pre[0], (NodeList{{1, 1}}));
    EXPECT_EQ(parts.des[0], (NodeList{{1, 2, 1}}));
    EXPECT_EQ(parts.next[0], (NodeList{{1, 3}}));
    EXPECT_EQ(parts.discarded, 1u);
}

TEST(Anchor, AnchorItselfIsDiscarded)
{
    std::vector<NodeList> lists{{{1, 1}, {1, 2}, {1, 2, 3}}};
    auto parts = ctxdiv::partition_by_anchor(lists, DeweyId{1, 2});
    EXPECT_EQ(parts.pre[0], (NodeList{{1, 1}}));
    EXPECT_EQ(parts.des[0], (NodeList{{1, 2, 3}}));
    EXPECT_TRUE(parts.next[0].empty());
    EXPECT_EQ(parts.discarded, 1u);
}

TEST(Anchor, PartitionCoversEveryNodeOnce)
{
    std::mt19937_64 rng(3);
    for (int round = 0; round < 200; ++round) {
        auto tree = oracle::random_tree(rng, 60);
        auto lists = oracle::random_lists(rng, tree, 2, 0.3);
        const auto& anchor = tree[rng() % tree.size()];
        auto parts = ctxdiv::partition_by_anchor(lists, anchor);
        std::size_t kept = 0;
        for (std::size_t s = 0; s < lists.size(); ++s) {
            for (const auto& n : parts.pre[s]) {
                EXPECT_EQ(ctxdiv::relation(n, anchor), ctxdiv::DeweyRelation::precedes);
            }
            for (const auto& n : parts.des[s]) {
                EXPECT_TRUE(anchor.is_ancestor_of(n));
            }
            for (const auto& n : parts.next[s]) {
                EXPECT_EQ(ctxdiv::relation(n, anchor), ctxdiv::DeweyRelation::follows);
                EXPECT_FALSE(anchor.is_ancestor_of(n));
            }
            kept += parts.pre[s].size() + parts.des[s].size() + parts.next[s].size();
        }
        EXPECT_EQ(kept + parts.discarded, lists[0].size() + lists[1].size());
    }
}

TEST(Anchor, AreaResultsStayInsideTheirArea)
{
    // 1.1 and 1.3 only meet at the root, which lies outside the pre area of 1.2.
    Area pre{AreaKind::pre, 0, {{{1, 1}}, {{1, 3}}}};
    std::vector<DeweyId> anchors{{1, 2}};
    EXPECT_TRUE(ctxdiv::evaluate_area(pre, anchors).empty());

    Area same{AreaKind::pre, 0, {{{1, 1}}, {{1, 1}}}};
    EXPECT_EQ(ctxdiv::evaluate_area(same, anchors), (NodeList{{1, 1}}));
}

TEST(Anchor, EmptyAreasArePruned)
{
    std::vector<NodeList> lists{{{1, 1}, {1, 3}}, {{1, 3}}};
    std::vector<DeweyId> anchors{{1, 2}};
    auto split = ctxdiv::partition_by_anchors(lists, anchors);
    ctxdiv::EvalStats stats;
    auto kept = ctxdiv::prune_empty_areas(split.areas, stats);
    ASSERT_EQ(kept.size(), 1u);
    EXPECT_EQ(kept[0].kind, AreaKind::next);
    EXPECT_EQ(stats.nodes_pruned, 1u);
    EXPECT_EQ(stats.areas_skipped, 2u);
}

TEST(Anchor, AnchorBoundCountMatchesFullSlca)
{
    std::mt19937_64 rng(17);
    for (int round = 0; round < 300; ++round) {
        auto tree = oracle::random_tree(rng, 60);
        auto phi_lists = oracle::random_lists(rng, tree, 1, 0.1);
        auto anchors = oracle::brute_slca(phi_lists);
        auto lists = oracle::random_lists(rng, tree, 1 + rng() % 3, 0.2);
        auto full = oracle::brute_slca(lists);

        ctxdiv::DiversifiedSet phi;
        ctxdiv::merge_distinct(phi, anchors, 0);
        ctxdiv::EvalStats stats;
        auto outcome = ctxdiv::evaluate_with_anchors(lists, 1.0, phi, stats, ctxdiv::run_areas_sequentially);
        auto plan = ctxdiv::plan_merge(phi, full);

        EXPECT_EQ(outcome.slca_count, full.size()) << "round " << round;
        EXPECT_EQ(outcome.fresh, plan.inserted);
        EXPECT_EQ(outcome.displaced, plan.displaced);
        std::size_t total = 0;
        for (const auto& list : lists) {
            total += list.size();
        }
        EXPECT_EQ(stats.nodes_visited + stats.nodes_pruned, total);
    }
}

TEST(Anchored, ToyMatchesBaseline)
{
    auto index = fixture::toy_index();
    auto baseline = ctxdiv::diversify_baseline({"database", "query"}, params(2, 2), index);
    auto anchored = ctxdiv::diversify_anchored({"database", "query"}, params(2, 2), index);
    EXPECT_EQ(baseline.topk, anchored.topk);
    EXPECT_LT(anchored.stats.nodes_visited, baseline.stats.nodes_visited);
}

TEST(Anchored, MatchesBaselineAndNeverVisitsMore)
{
    std::mt19937_64 rng(31);
    for (int round = 0; round < 200; ++round) {
        auto config = oracle::config_for({"e"});
        auto index = ctxdiv::build_index(ctxdiv::parse_corpus(oracle::random_corpus_xml(rng, 200, 15), config), config);
        auto query = fixture::random_query(rng, index, 2, 3);
        auto p = params(1 + rng() % 5, 3 + rng() % 3);
        auto baseline = ctxdiv::diversify_baseline(query, p, index);
        auto anchored = ctxdiv::diversify_anchored(query, p, index);
        EXPECT_EQ(baseline.topk, anchored.topk) << "round " << round;
        EXPECT_LE(anchored.stats.nodes_visited, baseline.stats.nodes_visited);
        EXPECT_EQ(anchored.stats.nodes_visited + anchored.stats.nodes_pruned,
                  baseline.stats.nodes_visited + baseline.stats.nodes_pruned);
    }
}
