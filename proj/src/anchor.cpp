#include "ctxdiv/anchor.hpp"

#include <algorithm>
#include <cassert>

namespace ctxdiv {

namespace {

using Components = std::span<const DeweyId::Component>;

bool less_than(const DeweyId& node, Components key) noexcept
{
    auto c = node.components();
    return std::lexicographical_compare(c.begin(), c.end(), key.begin(), key.end());
}

struct RangeSplit {
    NodeList pre;
    std::size_t des_first = 0;
    std::size_t des_last = 0;
    std::size_t discarded = 0;
};

// Splits list[from, end) around `anchor`.
RangeSplit split_range(std::span<const DeweyId> list, std::size_t from, const DeweyId& anchor)
{
    RangeSplit split;
    auto first = list.begin() + static_cast<std::ptrdiff_t>(from);
    auto at = std::lower_bound(first, list.end(), anchor);

    // Ancestors of the anchor all sort before it; find each by exact lookup.
    std::vector<std::size_t> ancestors;
    auto path = anchor.components();
    auto cursor = first;
    for (std::size_t depth = 1; depth < path.size(); ++depth) {
        auto key = path.first(depth);
        cursor = std::partition_point(cursor, at, [&](const DeweyId& node) { return less_than(node, key); });
        if (cursor != at && std::ranges::equal(cursor->components(), key)) {
            ancestors.push_back(static_cast<std::size_t>(cursor - list.begin()));
        }
    }

    auto at_index = static_cast<std::size_t>(at - list.begin());
    split.pre.reserve(at_index - from - ancestors.size());
    auto skip = ancestors.begin();
    for (std::size_t i = from; i < at_index; ++i) {
        if (skip != ancestors.end() && *skip == i) {
            ++skip;
            continue;
        }
        split.pre.push_back(list[i]);
    }
    split.discarded = ancestors.size();

    if (at != list.end() && *at == anchor) {
        ++split.discarded;
        ++at;
    }
    auto last = std::partition_point(at, list.end(), [&](const DeweyId& node) { return anchor.is_ancestor_of(node); });
    split.des_first = static_cast<std::size_t>(at - list.begin());
    split.des_last = static_cast<std::size_t>(last - list.begin());
    return split;
}

NodeList slice(std::span<const DeweyId> list, std::size_t first, std::size_t last)
{
    return NodeList(list.begin() + static_cast<std::ptrdiff_t>(first), list.begin() + static_cast<std::ptrdiff_t>(last));
}

} // namespace

AreaPartition partition_by_anchor(std::span<const NodeList> lists, const DeweyId& anchor)
{
    AreaPartition partition{anchor, {}, {}, {}, 0};
    for (const auto& list : lists) {
        auto split = split_range(list, 0, anchor);
        partition.pre.push_back(std::move(split.pre));
        partition.des.push_back(slice(list, split.des_first, split.des_last));
        partition.next.push_back(slice(list, split.des_last, list.size()));
        partition.discarded += split.discarded;
    }
    return partition;
}

std::size_t Area::node_count() const noexcept
{
    std::size_t total = 0;
    for (const auto& list : lists) {
        total += list.size();
    }
    return total;
}

bool Area::has_empty_list() const noexcept
{
    return std::any_of(lists.begin(), lists.end(), [](const NodeList& list) { return list.empty(); });
}

AreaSplit partition_by_anchors(std::span<const NodeList> lists, std::span<const DeweyId> anchors)
{
    assert(is_slca_set(anchors));
    AreaSplit result;
    // Start of the running `next` remainder in each list.
    std::vector<std::size_t> from(lists.size(), 0);

    for (std::size_t a = 0; a < anchors.size(); ++a) {
        Area pre{AreaKind::pre, a, {}};
        Area des{AreaKind::des, a, {}};
        bool exhausted = false;
        for (std::size_t s = 0; s < lists.size(); ++s) {
            auto split = split_range(lists[s], from[s], anchors[a]);
            pre.lists.push_back(std::move(split.pre));
            des.lists.push_back(slice(lists[s], split.des_first, split.des_last));
            result.stats.nodes_pruned += split.discarded;
            from[s] = split.des_last;
            exhausted = exhausted || from[s] == lists[s].size();
        }
        result.areas.push_back(std::move(pre));
        result.areas.push_back(std::move(des));
        if (exhausted) {
            break;
        }
    }

    Area rest{AreaKind::next, anchors.size(), {}};
    for (std::size_t s = 0; s < lists.size(); ++s) {
        rest.lists.push_back(slice(lists[s], from[s], lists[s].size()));
    }
    result.areas.push_back(std::move(rest));
    return result;
}

std::vector<Area> prune_empty_areas(std::vector<Area> areas, EvalStats& stats)
{
    std::vector<Area> kept;
    for (auto& area : areas) {
        if (area.has_empty_list()) {
            stats.nodes_pruned += area.node_count();
            ++stats.areas_skipped;
            continue;
        }
        kept.push_back(std::move(area));
    }
    return kept;
}

SlcaSet evaluate_area(const Area& area, std::span<const DeweyId> anchors)
{
    auto slca = compute_slca(std::span<const NodeList>(area.lists));
    std::erase_if(slca, [&](const DeweyId& node) { return subtree_contains_any(anchors, node); });
    return slca;
}

std::size_t count_anchor_bound_slcas(std::span<const NodeList> lists, std::span<const DeweyId> anchors,
                                     std::span<const DeweyId> fresh, EvalStats& stats)
{
    NodeList skeleton;
    for (const auto& anchor : anchors) {
        for (std::size_t depth = 1; depth <= anchor.depth(); ++depth) {
            skeleton.push_back(anchor.prefix(depth));
        }
    }
    std::sort(skeleton.begin(), skeleton.end());
    skeleton.erase(std::unique(skeleton.begin(), skeleton.end()), skeleton.end());

    NodeList covering;
    for (const auto& node : skeleton) {
        bool covers = true;
        for (const auto& list : lists) {
            ++stats.anchor_probes;
            if (!subtree_contains_any(list, node)) {
                covers = false;
                break;
            }
        }
        if (covers) {
            covering.push_back(node);
        }
    }

    std::size_t count = 0;
    for (std::size_t i = 0; i < covering.size(); ++i) {
        bool leaf = i + 1 == covering.size() || !covering[i].is_ancestor_of(covering[i + 1]);
        if (leaf && !has_strict_descendant(fresh, covering[i])) {
            ++count;
        }
    }
    return count;
}

void run_areas_sequentially(std::span<const Area> areas, std::span<const DeweyId> anchors, std::span<SlcaSet> out)
{
    for (std::size_t i = 0; i < areas.size(); ++i) {
        out[i] = evaluate_area(areas[i], anchors);
    }
}

IntentOutcome evaluate_with_anchors(std::span<const NodeList> lists, double likelihood, const DiversifiedSet& phi,
                                    EvalStats& stats, const AreaRunner& runner)
{
    IntentOutcome outcome;
    outcome.likelihood = likelihood;

    std::size_t total = 0;
    bool any_empty = false;
    for (const auto& list : lists) {
        total += list.size();
        any_empty = any_empty || list.empty();
    }
    if (any_empty) {
        stats.nodes_pruned += total;
        ++stats.areas_skipped;
        return outcome;
    }

    const auto& anchors = phi.nodes();
    std::vector<Area> areas;
    if (anchors.empty()) {
        areas.push_back(Area{AreaKind::next, 0, {lists.begin(), lists.end()}});
    } else {
        auto split = partition_by_anchors(lists, anchors);
        stats += split.stats;
        areas = prune_empty_areas(std::move(split.areas), stats);
    }
    for (const auto& area : areas) {
        stats.nodes_visited += area.node_count();
    }

    std::vector<SlcaSet> partials(areas.size());
    runner(areas, anchors, partials);

    // Areas are disjoint document-order ranges, so concatenation stays sorted.
    for (std::size_t i = 0; i < areas.size(); ++i) {
        if (areas[i].kind == AreaKind::des && !partials[i].empty()) {
            outcome.displaced.push_back(anchors[areas[i].anchor]);
        }
        for (auto& node : partials[i]) {
            outcome.fresh.push_back(std::move(node));
        }
    }
    assert(is_slca_set(outcome.fresh));

    outcome.slca_count = outcome.fresh.size();
    if (!anchors.empty()) {
        outcome.slca_count += count_anchor_bound_slcas(lists, anchors, outcome.fresh, stats);
    }
    return outcome;
}

IntentOutcome AnchoredEvaluator::evaluate(const IntentQuery& intent, const DiversifiedSet& phi, EvalStats& stats)
{
    std::vector<Segment> segments;
    std::vector<NodeList> lists;
    for (const auto& key : intent.segments) {
        segments.push_back(resolve_segment(key, index_));
        lists.push_back(segments.back().node_list);
    }
    return evaluate_with_anchors(lists, likelihood(segments), phi, stats, run_areas_sequentially);
}

SearchResult diversify_anchored(const std::vector<std::string>& keywords, const SearchParams& params,
                                const IndexBundle& index)
{
    auto intents = plan_intents(keywords, params, index);
    AnchoredEvaluator evaluator(index);
    return run_diversification(intents, params.k, evaluator);
}

} // namespace ctxdiv
