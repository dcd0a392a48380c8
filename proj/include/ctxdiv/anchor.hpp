#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ctxdiv/diversify.hpp"

namespace ctxdiv {

/// Four-way split of per-segment node lists around one anchor.
struct AreaPartition {
    DeweyId anchor;
    /// Nodes before the anchor in document order that are not its ancestors.
    std::vector<NodeList> pre;
    /// Strict descendants of the anchor.
    std::vector<NodeList> des;
    /// Nodes after the anchor's subtree.
    std::vector<NodeList> next;
    /// Ancestors of the anchor and the anchor itself; they cannot yield a
    /// result that is not a duplicate or an ancestor of the anchor.
    std::size_t discarded = 0;
};

/// Classifies each node by two binary searches per list (anchor position and
/// end of the anchor's subtree) plus one lookup per anchor ancestor.
AreaPartition partition_by_anchor(std::span<const NodeList> lists, const DeweyId& anchor);

enum class AreaKind { pre, des, next };

/// One independently evaluable region of an intent's node lists.
struct Area {
    AreaKind kind = AreaKind::next;
    /// Index of the anchor the area belongs to; anchors.size() for the final
    /// `next` remainder.
    std::size_t anchor = 0;
    std::vector<NodeList> lists;

    [[nodiscard]] std::size_t node_count() const noexcept;
    [[nodiscard]] bool has_empty_list() const noexcept;
};

struct AreaSplit {
    /// pre_1, des_1, pre_2, des_2, ..., final next; document order.
    std::vector<Area> areas;
    EvalStats stats;
};

/// Splits the lists by each anchor in turn, carrying the `next` remainder to
/// the following anchor. Stops early once some remainder list is empty: every
/// later area would lack that segment. `anchors` must be an SLCA set.
AreaSplit partition_by_anchors(std::span<const NodeList> lists, std::span<const DeweyId> anchors);

/// Drops areas in which some segment has no node; their nodes count as pruned.
std::vector<Area> prune_empty_areas(std::vector<Area> areas, EvalStats& stats);

/// SLCAs of the area's lists that are new with respect to the anchors:
/// candidates that are an anchor or an anchor's ancestor (only reachable by
/// combining nodes across areas) are dropped.
SlcaSet evaluate_area(const Area& area, std::span<const DeweyId> anchors);

/// Number of the intent's SLCAs that are an anchor or an anchor's ancestor,
/// given the `fresh` SLCAs the areas produced.
///
/// Coverage is upward closed, so along the anchors' root paths the covering
/// nodes form a top subtree. A covering path node is an SLCA iff no covering
/// path node and no fresh result lies strictly below it.
std::size_t count_anchor_bound_slcas(std::span<const NodeList> lists, std::span<const DeweyId> anchors,
                                     std::span<const DeweyId> fresh, EvalStats& stats);

/// Evaluates surviving areas; `out[i]` receives the result for `areas[i]`.
using AreaRunner =
    std::function<void(std::span<const Area> areas, std::span<const DeweyId> anchors, std::span<SlcaSet> out)>;

/// Runs areas one after another on the calling thread.
void run_areas_sequentially(std::span<const Area> areas, std::span<const DeweyId> anchors, std::span<SlcaSet> out);

/// One intent evaluated against the anchors in `phi` (as they stood before
/// the intent). Results are equal to the baseline's; only the distinct SLCAs
/// are computed by merging nodes.
IntentOutcome evaluate_with_anchors(std::span<const NodeList> lists, double likelihood, const DiversifiedSet& phi,
                                    EvalStats& stats, const AreaRunner& runner);

class AnchoredEvaluator final : public IntentEvaluator {
public:
    explicit AnchoredEvaluator(const IndexBundle& index) : index_(index) {}
    IntentOutcome evaluate(const IntentQuery& intent, const DiversifiedSet& phi, EvalStats& stats) override;

private:
    const IndexBundle& index_;
};

SearchResult diversify_anchored(const std::vector<std::string>& keywords, const SearchParams& params,
                                const IndexBundle& index);

} // namespace ctxdiv
