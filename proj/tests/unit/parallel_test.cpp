#include <gtest/gtest.h>

#include <atomic>
#include <random>
#include <set>
#include <thread>

#include "ctxdiv/parallel.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using ctxdiv::IntentQuery;
using ctxdiv::SearchParams;
using ctxdiv::SegmentKey;
using ctxdiv::SharedSegmentTable;

namespace {

SearchParams params(std::size_t k, std::size_t m)
{
    SearchParams p;
    p.k = k;
    p.m = m;
    return p;
}

} // namespace

TEST(SharedSegments, CountsSegmentsUsedTwice)
{
    std::vector<IntentQuery> intents{{{{"a", "f1"}, {"b", "g1"}}, 0.0}, {{{"a", "f1"}, {"b", "g2"}}, 0.0}};
    auto table = SharedSegmentTable::plan(intents);
    EXPECT_EQ(table->size(), 1u);
    ASSERT_TRUE(table->contains({"a", "f1"}));
    EXPECT_EQ(table->find({"a", "f1"})->uses, 2u);
    EXPECT_FALSE(table->contains({"b", "g1"}));
}

TEST(SharedSegments, DisjointIntentsShareNothing)
{
    std::vector<IntentQuery> intents{{{{"a", "f1"}}, 0.0}, {{{"a", "f2"}}, 0.0}};
    EXPECT_EQ(SharedSegmentTable::plan(intents)->size(), 0u);
}

TEST(SharedSegments, EntryIsEvictedAfterLastConsumer)
{
    std::vector<IntentQuery> intents{{{{"a", "f1"}, {"b", "g1"}}, 0.0}, {{{"a", "f1"}, {"b", "g2"}}, 0.0}};
    auto table = SharedSegmentTable::plan(intents);
    table->release(intents[0]);
    ASSERT_TRUE(table->contains({"a", "f1"}));
    EXPECT_EQ(table->find({"a", "f1"})->uses, 1u);
    table->release(intents[1]);
    EXPECT_FALSE(table->contains({"a", "f1"}));
}

TEST(SharedSegments, SecondUseReadsNoPostings)
{
    auto index = fixture::toy_index();
    std::vector<IntentQuery> intents{{{{"query", "language"}, {"database", ""}}, 0.0},
                                     {{{"query", "language"}, {"database", "system"}}, 0.0}};
    auto table = SharedSegmentTable::plan(intents);
    table->set_verify(true);

    auto first = table->fetch({"query", "language"}, index);
    EXPECT_EQ(table->posting_reads(), 2u);
    EXPECT_EQ(table->find({"query", "language"})->status.load(), ctxdiv::SegmentStatus::processed);
    auto second = table->fetch({"query", "language"}, index);
    EXPECT_EQ(table->posting_reads(), 2u);
    EXPECT_EQ(first.node_list, second.node_list);
    EXPECT_EQ(table->find({"query", "language"})->computations.load(), 1u);

    table->fetch({"database", "system"}, index);
    EXPECT_EQ(table->posting_reads(), 4u);
}

TEST(SharedSegments, ConcurrentRequestersComputeOnce)
{
    auto index = fixture::toy_index();
    std::vector<IntentQuery> intents(8, IntentQuery{{{"query", "optimization"}}, 0.0});
    auto table = SharedSegmentTable::plan(intents);
    std::vector<std::thread> threads;
    std::atomic<int> mismatches{0};
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([&] {
            auto segment = table->fetch({"query", "optimization"}, index);
            if (segment.node_list != ctxdiv::NodeList{{1, 2}}) {
                ++mismatches;
            }
        });
    }
    for (auto& thread : threads) {
        thread.join();
    }
    EXPECT_EQ(mismatches.load(), 0);
    EXPECT_EQ(table->find({"query", "optimization"})->computations.load(), 1u);
    EXPECT_EQ(table->posting_reads(), 2u);
}

TEST(WorkerPool, RoundRobinAssignment)
{
    ctxdiv::WorkerPool pool(3);
    std::vector<std::thread::id> ran_on(10);
    pool.run(ran_on.size(), [&](std::size_t i) { ran_on[i] = std::this_thread::get_id(); });
    for (std::size_t i = 0; i < ran_on.size(); ++i) {
        EXPECT_EQ(pool.worker_of(i), i % 3);
        EXPECT_EQ(ran_on[i], ran_on[i % 3]);
    }
    std::set<std::thread::id> distinct(ran_on.begin(), ran_on.end());
    EXPECT_EQ(distinct.size(), 3u);

    auto plan = ctxdiv::make_work_plan(std::vector<ctxdiv::Area>(5), 2);
    EXPECT_EQ(plan.assignment, (std::vector<std::size_t>{0, 1, 0, 1, 0}));
}

TEST(WorkerPool, MoreWorkersThanTasks)
{
    ctxdiv::WorkerPool pool(6);
    std::atomic<int> sum{0};
    pool.run(2, [&](std::size_t i) { sum += static_cast<int>(i) + 1; });
    EXPECT_EQ(sum.load(), 3);
    pool.run(0, [&](std::size_t) { sum += 100; });
    EXPECT_EQ(sum.load(), 3);
}

TEST(WorkerPool, TaskExceptionReachesCaller)
{
    ctxdiv::WorkerPool pool(2);
    EXPECT_THROW(pool.run(4, [](std::size_t i) {
        if (i == 3) {
            throw std::runtime_error("boom");
        }
    }),
                 std::runtime_error);
    std::atomic<int> count{0};
    pool.run(4, [&](std::size_t) { ++count; });
    EXPECT_EQ(count.load(), 4);
    EXPECT_THROW(ctxdiv::WorkerPool(0), std::invalid_argument);
}

TEST(Parallel, ToyWorkerCountDoesNotMatter)
{
    auto index = fixture::toy_index();
    auto one = ctxdiv::diversify_parallel({"database", "query"}, params(2, 2), index, 1);
    auto six = ctxdiv::diversify_parallel({"database", "query"}, params(2, 2), index, 6);
    auto baseline = ctxdiv::diversify_baseline({"database", "query"}, params(2, 2), index);
    EXPECT_EQ(one.topk, six.topk);
    EXPECT_EQ(one.topk, baseline.topk);
    EXPECT_EQ(one.stats, six.stats);
    EXPECT_THROW(ctxdiv::diversify_parallel({"query"}, params(2, 2), index, 0), std::invalid_argument);
}

TEST(Parallel, MatchesAnchoredWithVerifiedCache)
{
    std::mt19937_64 rng(41);
    for (int round = 0; round < 80; ++round) {
        auto config = oracle::config_for({"e"});
        auto index = ctxdiv::build_index(ctxdiv::parse_corpus(oracle::random_corpus_xml(rng, 200, 15), config), config);
        auto query = fixture::random_query(rng, index, 2, 3);
        auto p = params(1 + rng() % 5, 3 + rng() % 3);
        auto intents = ctxdiv::plan_intents(query, p, index);
        auto anchored = ctxdiv::diversify_anchored(query, p, index);

        for (std::size_t workers : {1u, 3u}) {
            ctxdiv::ParallelEvaluator evaluator(index, intents, workers);
            evaluator.table().set_verify(true);
            auto result = ctxdiv::run_diversification(intents, p.k, evaluator);
            EXPECT_EQ(result.topk, anchored.topk) << "round " << round;
            // Work conservation: the same areas are visited.
            EXPECT_EQ(result.stats, anchored.stats);
            EXPECT_EQ(evaluator.table().size(), 0u);
        }
    }
}
