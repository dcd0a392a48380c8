#include "ctxdiv/slca.hpp"

#include <algorithm>
#include <cassert>

namespace ctxdiv {

namespace {

using Components = std::span<const DeweyId::Component>;

std::size_t common_prefix(Components a, Components b) noexcept
{
    auto [ia, ib] = std::mismatch(a.begin(), a.end(), b.begin(), b.end());
    return static_cast<std::size_t>(ia - a.begin());
}

bool less_than(const DeweyId& node, Components key) noexcept
{
    auto c = node.components();
    return std::lexicographical_compare(c.begin(), c.end(), key.begin(), key.end());
}

// Removes every node that has a descendant in the (sorted, unique) set.
void drop_ancestors(SlcaSet& nodes)
{
    SlcaSet kept;
    kept.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i + 1 < nodes.size() && nodes[i].is_ancestor_of(nodes[i + 1])) {
            continue;
        }
        kept.push_back(std::move(nodes[i]));
    }
    nodes = std::move(kept);
}

} // namespace

bool is_slca_set(std::span<const DeweyId> nodes) noexcept
{
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (!(nodes[i - 1] < nodes[i]) || nodes[i - 1].is_ancestor_of(nodes[i])) {
            return false;
        }
    }
    return true;
}

SlcaSet compute_slca(std::span<const std::span<const DeweyId>> lists)
{
    if (lists.empty()) {
        return {};
    }
    std::size_t shortest = 0;
    for (std::size_t i = 0; i < lists.size(); ++i) {
        if (lists[i].empty()) {
            return {};
        }
        if (lists[i].size() < lists[shortest].size()) {
            shortest = i;
        }
    }

    SlcaSet candidates;
    candidates.reserve(lists[shortest].size());
    for (const auto& v : lists[shortest]) {
        // The running candidate is always an ancestor-or-self of v, so only
        // its depth is tracked.
        auto path = v.components();
        std::size_t depth = path.size();
        for (std::size_t i = 0; i < lists.size() && depth > 0; ++i) {
            if (i == shortest) {
                continue;
            }
            auto list = lists[i];
            auto key = path.first(depth);
            auto right = std::partition_point(list.begin(), list.end(),
                                              [&](const DeweyId& node) { return less_than(node, key); });
            std::size_t best = 0;
            if (right != list.end()) {
                best = std::max(best, std::min(depth, common_prefix(path, right->components())));
            }
            if (right != list.begin()) {
                best = std::max(best, std::min(depth, common_prefix(path, std::prev(right)->components())));
            }
            depth = best;
        }
        if (depth > 0) {
            candidates.push_back(v.prefix(depth));
        }
    }

    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    drop_ancestors(candidates);
    return candidates;
}

SlcaSet compute_slca(std::span<const NodeList> lists)
{
    std::vector<std::span<const DeweyId>> views(lists.begin(), lists.end());
    return compute_slca(std::span<const std::span<const DeweyId>>(views));
}

void DiversifiedSet::insert(const DeweyId& node, IntentId intent)
{
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node);
    assert(it == nodes_.end() || *it != node);
    nodes_.insert(it, node);
    attribution_[node] = intent;
}

void DiversifiedSet::remove(const DeweyId& node)
{
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node);
    if (it != nodes_.end() && *it == node) {
        nodes_.erase(it);
        attribution_.erase(node);
    }
}

void DiversifiedSet::remove_intent(IntentId intent)
{
    std::erase_if(nodes_, [&](const DeweyId& node) { return attribution_.at(node) == intent; });
    std::erase_if(attribution_, [&](const auto& entry) { return entry.second == intent; });
}

MergePlan plan_merge(const DiversifiedSet& phi, std::span<const DeweyId> fresh)
{
    MergePlan plan;
    const auto& members = phi.nodes();
    for (const auto& node : fresh) {
        // Duplicate of, or ancestor of, some member.
        if (subtree_contains_any(members, node)) {
            continue;
        }
        plan.inserted.push_back(node);
        // In an antichain the only possible ancestor is the closest preceding member.
        auto it = std::lower_bound(members.begin(), members.end(), node);
        if (it != members.begin() && std::prev(it)->is_ancestor_of(node)) {
            plan.displaced.push_back(*std::prev(it));
        }
    }
    std::sort(plan.displaced.begin(), plan.displaced.end());
    plan.displaced.erase(std::unique(plan.displaced.begin(), plan.displaced.end()), plan.displaced.end());
    return plan;
}

void apply_merge(DiversifiedSet& phi, const MergePlan& plan, IntentId intent)
{
    for (const auto& node : plan.displaced) {
        phi.remove(node);
    }
    for (const auto& node : plan.inserted) {
        phi.insert(node, intent);
    }
}

MergeOutcome merge_distinct(DiversifiedSet& phi, std::span<const DeweyId> fresh, IntentId intent)
{
    auto plan = plan_merge(phi, fresh);
    MergeOutcome outcome{plan.inserted.size(), plan.union_size(phi.size())};
    apply_merge(phi, plan, intent);
    return outcome;
}

double dif(std::span<const DeweyId> fresh, const DiversifiedSet& phi)
{
    if (fresh.empty()) {
        return 0.0;
    }
    if (phi.empty()) {
        return 1.0;
    }
    auto plan = plan_merge(phi, fresh);
    return static_cast<double>(plan.inserted.size()) / static_cast<double>(plan.union_size(phi.size()));
}

} // namespace ctxdiv
