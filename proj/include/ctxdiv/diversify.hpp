#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctxdiv/index.hpp"
#include "ctxdiv/intents.hpp"
#include "ctxdiv/slca.hpp"

namespace ctxdiv {

/// Node accounting for one search. Per intent, visited + pruned equals the
/// total size of the intent's segment node lists.
struct EvalStats {
    /// Nodes handed to an SLCA computation.
    std::size_t nodes_visited = 0;
    /// Nodes discarded without SLCA work (anchor ancestors, empty areas).
    std::size_t nodes_pruned = 0;
    std::size_t areas_skipped = 0;
    /// Binary-search subtree probes used to count anchor-bound SLCAs.
    std::size_t anchor_probes = 0;

    EvalStats& operator+=(const EvalStats& other) noexcept;
    friend bool operator==(const EvalStats&, const EvalStats&) = default;
};

struct ScoredIntent {
    IntentId id = 0;
    IntentQuery intent;
    /// Product of |segment nodes| / |feature postings|, times |SLCA|.
    double relevance = 0.0;
    double dif = 0.0;
    double score = 0.0;
    /// Distinct contribution at admission time.
    SlcaSet results;

    friend bool operator==(const ScoredIntent&, const ScoredIntent&) = default;
};

/// Ranking of admitted intents: score desc, aggregated MI desc, names asc.
bool ranks_before(const ScoredIntent& a, const ScoredIntent& b);

struct TopK {
    std::size_t k = 0;
    std::vector<ScoredIntent> entries;
    DiversifiedSet phi;

    friend bool operator==(const TopK&, const TopK&) = default;
};

struct SearchParams {
    std::size_t k = 10;
    std::size_t m = 20;
    /// Caps the number of generated intents that are evaluated.
    std::optional<std::size_t> budget;

    /// Throws std::invalid_argument for k < 1 or m < 1.
    void validate() const;
};

struct SearchResult {
    TopK topk;
    EvalStats stats;
    std::size_t intents_evaluated = 0;
};

double likelihood(std::span<const Segment> segments);

struct RelevanceResult {
    double likelihood = 0.0;
    SlcaSet slca;
    double relevance = 0.0;
};

/// Likelihood of the original query given the intent, the intent's SLCA set
/// and their product (the rank-invariant constants dropped).
RelevanceResult relevance_prob(const IntentQuery& intent, const IndexBundle& index);

/// What evaluating one intent against the current Phi produced.
struct IntentOutcome {
    double likelihood = 0.0;
    /// Size of the intent's full SLCA set.
    std::size_t slca_count = 0;
    /// SLCAs that are neither duplicates nor ancestors of Phi members.
    SlcaSet fresh;
    /// Phi members that a fresh node descends from.
    SlcaSet displaced;
};

/// Strategy used by the top-k driver; the three engines differ only here.
class IntentEvaluator {
public:
    virtual ~IntentEvaluator() = default;
    virtual IntentOutcome evaluate(const IntentQuery& intent, const DiversifiedSet& phi, EvalStats& stats) = 0;
    /// Called once per intent after it has been scored.
    virtual void completed(const IntentQuery& /*intent*/) {}
};

/// Scores intents in the given order and keeps the running top k.
///
/// An intent is admitted when its score is positive and either the list has
/// room or it outranks the current worst entry, which is then evicted along
/// with the Phi nodes attributed to it. Only admitted intents update Phi.
SearchResult run_diversification(std::span<const IntentQuery> intents, std::size_t k, IntentEvaluator& evaluator);

/// Computes the full SLCA set of every intent and diffs it against Phi.
class BaselineEvaluator final : public IntentEvaluator {
public:
    explicit BaselineEvaluator(const IndexBundle& index) : index_(index) {}
    IntentOutcome evaluate(const IntentQuery& intent, const DiversifiedSet& phi, EvalStats& stats) override;

private:
    const IndexBundle& index_;
};

/// Builds the feature matrix and its intents; empty when no keyword has a
/// feature.
std::vector<IntentQuery> plan_intents(const std::vector<std::string>& keywords, const SearchParams& params,
                                      const IndexBundle& index);

SearchResult diversify_baseline(const std::vector<std::string>& keywords, const SearchParams& params,
                                const IndexBundle& index);

} // namespace ctxdiv
