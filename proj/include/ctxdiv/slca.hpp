#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ctxdiv/dewey.hpp"

namespace ctxdiv {

/// Document-ordered, duplicate-free nodes, no two in an ancestor relation.
using SlcaSet = std::vector<DeweyId>;

bool is_slca_set(std::span<const DeweyId> nodes) noexcept;

/// Smallest lowest common ancestors of the given keyword node lists.
///
/// Driven by the shortest list: for each of its nodes the deepest covering
/// ancestor is found by binary-searching the neighbours in every other list,
/// then covering ancestors of other candidates are dropped. Any empty list
/// gives an empty result. Lists must be document-ordered.
SlcaSet compute_slca(std::span<const std::span<const DeweyId>> lists);
SlcaSet compute_slca(std::span<const NodeList> lists);

using IntentId = std::uint32_t;

/// Accumulated distinct results across admitted intents, with the intent
/// that contributed each node.
class DiversifiedSet {
public:
    [[nodiscard]] const SlcaSet& nodes() const noexcept { return nodes_; }
    [[nodiscard]] const std::map<DeweyId, IntentId>& attribution() const noexcept { return attribution_; }
    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
    [[nodiscard]] bool empty() const noexcept { return nodes_.empty(); }

    /// Inserts a node that is unrelated to every member.
    void insert(const DeweyId& node, IntentId intent);
    /// No-op when absent.
    void remove(const DeweyId& node);
    /// Drops every node currently attributed to `intent`.
    void remove_intent(IntentId intent);

    friend bool operator==(const DiversifiedSet&, const DiversifiedSet&) = default;

private:
    SlcaSet nodes_;
    std::map<DeweyId, IntentId> attribution_;
};

/// What merging a fresh result set into Phi would change.
struct MergePlan {
    /// Fresh nodes that are neither a duplicate nor an ancestor of a member.
    SlcaSet inserted;
    /// Members that an inserted node descends from; they get replaced.
    SlcaSet displaced;

    [[nodiscard]] std::size_t union_size(std::size_t phi_size) const noexcept
    {
        return phi_size - displaced.size() + inserted.size();
    }
};

/// Dry run of merge_distinct.
MergePlan plan_merge(const DiversifiedSet& phi, std::span<const DeweyId> fresh);

/// Applies a plan computed against the current `phi`.
void apply_merge(DiversifiedSet& phi, const MergePlan& plan, IntentId intent);

struct MergeOutcome {
    std::size_t distinct_count = 0;
    std::size_t union_size = 0;
};

/// Duplicates and ancestors of members are dropped, descendants replace
/// their member ancestor, everything else is added.
MergeOutcome merge_distinct(DiversifiedSet& phi, std::span<const DeweyId> fresh, IntentId intent);

/// Share of `fresh` that is new or a descendant replacement: inserted / union
/// size. 1 when Phi is empty and fresh is not; 0 when fresh is empty.
double dif(std::span<const DeweyId> fresh, const DiversifiedSet& phi);

} // namespace ctxdiv
