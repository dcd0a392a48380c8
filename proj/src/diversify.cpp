#include "ctxdiv/diversify.hpp"

#include <algorithm>
#include <stdexcept>

#include "ctxdiv/errors.hpp"
#include "ctxdiv/features.hpp"

namespace ctxdiv {

EvalStats& EvalStats::operator+=(const EvalStats& other) noexcept
{
    nodes_visited += other.nodes_visited;
    nodes_pruned += other.nodes_pruned;
    areas_skipped += other.areas_skipped;
    anchor_probes += other.anchor_probes;
    return *this;
}

bool ranks_before(const ScoredIntent& a, const ScoredIntent& b)
{
    if (a.score != b.score) {
        return a.score > b.score;
    }
    if (a.intent.agg_mi != b.intent.agg_mi) {
        return a.intent.agg_mi > b.intent.agg_mi;
    }
    return intent_name_less(a.intent, b.intent);
}

void SearchParams::validate() const
{
    if (k < 1) {
        throw std::invalid_argument("k must be >= 1");
    }
    if (m < 1) {
        throw std::invalid_argument("m must be >= 1");
    }
}

double likelihood(std::span<const Segment> segments)
{
    double product = 1.0;
    for (const auto& segment : segments) {
        if (segment.node_list.empty()) {
            return 0.0;
        }
        product *= static_cast<double>(segment.node_list.size()) / static_cast<double>(segment.feature_list_size);
    }
    return product;
}

RelevanceResult relevance_prob(const IntentQuery& intent, const IndexBundle& index)
{
    std::vector<Segment> segments;
    for (const auto& key : intent.segments) {
        segments.push_back(resolve_segment(key, index));
    }
    RelevanceResult result;
    result.likelihood = likelihood(segments);
    std::vector<std::span<const DeweyId>> lists;
    for (const auto& segment : segments) {
        lists.emplace_back(segment.node_list);
    }
    result.slca = compute_slca(std::span<const std::span<const DeweyId>>(lists));
    result.relevance = result.likelihood * static_cast<double>(result.slca.size());
    return result;
}

SearchResult run_diversification(std::span<const IntentQuery> intents, std::size_t k, IntentEvaluator& evaluator)
{
    if (k < 1) {
        throw std::invalid_argument("k must be >= 1");
    }
    SearchResult result;
    result.topk.k = k;
    auto& entries = result.topk.entries;
    auto& phi = result.topk.phi;

    for (std::size_t i = 0; i < intents.size(); ++i) {
        const auto& intent = intents[i];
        auto outcome = evaluator.evaluate(intent, phi, result.stats);
        ++result.intents_evaluated;

        ScoredIntent scored;
        scored.id = static_cast<IntentId>(i);
        scored.intent = intent;
        scored.relevance = outcome.likelihood * static_cast<double>(outcome.slca_count);
        if (outcome.fresh.empty()) {
            scored.dif = 0.0;
        } else if (phi.empty()) {
            scored.dif = 1.0;
        } else {
            auto union_size = phi.size() - outcome.displaced.size() + outcome.fresh.size();
            scored.dif = static_cast<double>(outcome.fresh.size()) / static_cast<double>(union_size);
        }
        scored.score = scored.relevance * scored.dif;
        scored.results = outcome.fresh;
        evaluator.completed(intent);

        if (!(scored.score > 0.0)) {
            continue;
        }
        if (entries.size() >= k) {
            auto worst = std::min_element(entries.begin(), entries.end(),
                                          [](const ScoredIntent& a, const ScoredIntent& b) { return ranks_before(b, a); });
            if (!ranks_before(scored, *worst)) {
                continue;
            }
            phi.remove_intent(worst->id);
            entries.erase(worst);
        }
        apply_merge(phi, MergePlan{std::move(outcome.fresh), std::move(outcome.displaced)}, scored.id);
        entries.push_back(std::move(scored));
    }

    std::sort(entries.begin(), entries.end(), ranks_before);
    return result;
}

IntentOutcome BaselineEvaluator::evaluate(const IntentQuery& intent, const DiversifiedSet& phi, EvalStats& stats)
{
    std::vector<Segment> segments;
    std::size_t total = 0;
    bool any_empty = false;
    for (const auto& key : intent.segments) {
        segments.push_back(resolve_segment(key, index_));
        total += segments.back().node_list.size();
        any_empty = any_empty || segments.back().node_list.empty();
    }

    IntentOutcome outcome;
    outcome.likelihood = likelihood(segments);
    if (any_empty) {
        stats.nodes_pruned += total;
        return outcome;
    }
    stats.nodes_visited += total;

    std::vector<std::span<const DeweyId>> lists;
    for (const auto& segment : segments) {
        lists.emplace_back(segment.node_list);
    }
    auto slca = compute_slca(std::span<const std::span<const DeweyId>>(lists));
    auto plan = plan_merge(phi, slca);
    outcome.slca_count = slca.size();
    outcome.fresh = std::move(plan.inserted);
    outcome.displaced = std::move(plan.displaced);
    return outcome;
}

std::vector<IntentQuery> plan_intents(const std::vector<std::string>& keywords, const SearchParams& params,
                                      const IndexBundle& index)
{
    params.validate();
    try {
        return generate_intents(build_matrix(keywords, params.m, index), params.budget);
    } catch (const NoIntentError&) {
        return {};
    }
}

SearchResult diversify_baseline(const std::vector<std::string>& keywords, const SearchParams& params,
                                const IndexBundle& index)
{
    auto intents = plan_intents(keywords, params, index);
    BaselineEvaluator evaluator(index);
    auto result = run_diversification(intents, params.k, evaluator);
    return result;
}

} // namespace ctxdiv
