#include "ctxdiv/dewey.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace ctxdiv {

namespace {

void validate(const std::vector<DeweyId::Component>& components)
{
    if (components.empty()) {
        throw std::invalid_argument("dewey id must have at least one component");
    }
    if (std::find(components.begin(), components.end(), 0U) != components.end()) {
        throw std::invalid_argument("dewey components are 1-based");
    }
}

} // namespace

DeweyId::DeweyId(std::initializer_list<Component> components) : components_(components)
{
    validate(components_);
}

DeweyId::DeweyId(std::vector<Component> components) : components_(std::move(components))
{
    validate(components_);
}

DeweyId DeweyId::parse(std::string_view text)
{
    std::vector<Component> out;
    std::size_t pos = 0;
    while (true) {
        auto dot = text.find('.', pos);
        auto piece = text.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
        Component value = 0;
        auto [end, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
        if (piece.empty() || ec != std::errc{} || end != piece.data() + piece.size()) {
            throw std::invalid_argument("malformed dewey id '" + std::string(text) + "'");
        }
        out.push_back(value);
        if (dot == std::string_view::npos) {
            break;
        }
        pos = dot + 1;
    }
    return DeweyId(std::move(out));
}

std::string DeweyId::to_string() const
{
    std::string out;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (i != 0) {
            out.push_back('.');
        }
        out += std::to_string(components_[i]);
    }
    return out;
}

DeweyId DeweyId::child(Component ordinal) const
{
    auto components = components_;
    components.push_back(ordinal);
    return DeweyId(std::move(components));
}

DeweyId DeweyId::prefix(std::size_t length) const
{
    if (length == 0 || length > components_.size()) {
        throw std::out_of_range("dewey prefix length");
    }
    return DeweyId(std::vector<Component>(components_.begin(), components_.begin() + static_cast<std::ptrdiff_t>(length)));
}

bool DeweyId::is_ancestor_of(const DeweyId& other) const noexcept
{
    return components_.size() < other.components_.size() &&
           std::equal(components_.begin(), components_.end(), other.components_.begin());
}

bool DeweyId::is_ancestor_or_self_of(const DeweyId& other) const noexcept
{
    return components_.size() <= other.components_.size() &&
           std::equal(components_.begin(), components_.end(), other.components_.begin());
}

DeweyRelation relation(const DeweyId& a, const DeweyId& b) noexcept
{
    if (a == b) {
        return DeweyRelation::equal;
    }
    if (a.is_ancestor_of(b)) {
        return DeweyRelation::ancestor;
    }
    if (b.is_ancestor_of(a)) {
        return DeweyRelation::descendant;
    }
    return a < b ? DeweyRelation::precedes : DeweyRelation::follows;
}

std::string_view to_string(DeweyRelation r) noexcept
{
    switch (r) {
    case DeweyRelation::equal: return "equal";
    case DeweyRelation::ancestor: return "ancestor";
    case DeweyRelation::descendant: return "descendant";
    case DeweyRelation::precedes: return "precedes";
    case DeweyRelation::follows: return "follows";
    }
    return "unknown";
}

DeweyId lca(const DeweyId& a, const DeweyId& b)
{
    auto ca = a.components();
    auto cb = b.components();
    auto [ia, ib] = std::mismatch(ca.begin(), ca.end(), cb.begin(), cb.end());
    auto length = static_cast<std::size_t>(ia - ca.begin());
    if (length == 0) {
        // Distinct roots cannot occur within one document.
        throw std::invalid_argument("dewey ids from different trees");
    }
    return a.prefix(length);
}

std::pair<std::size_t, std::size_t> subtree_range(std::span<const DeweyId> sorted, const DeweyId& root)
{
    auto first = std::lower_bound(sorted.begin(), sorted.end(), root);
    auto last = std::partition_point(first, sorted.end(),
                                     [&](const DeweyId& node) { return root.is_ancestor_or_self_of(node); });
    return {static_cast<std::size_t>(first - sorted.begin()), static_cast<std::size_t>(last - sorted.begin())};
}

bool subtree_contains_any(std::span<const DeweyId> sorted, const DeweyId& root)
{
    auto it = std::lower_bound(sorted.begin(), sorted.end(), root);
    return it != sorted.end() && root.is_ancestor_or_self_of(*it);
}

bool has_strict_descendant(std::span<const DeweyId> sorted, const DeweyId& root)
{
    auto it = std::upper_bound(sorted.begin(), sorted.end(), root);
    return it != sorted.end() && root.is_ancestor_of(*it);
}

bool is_document_ordered(std::span<const DeweyId> nodes) noexcept
{
    return std::adjacent_find(nodes.begin(), nodes.end(),
                              [](const DeweyId& a, const DeweyId& b) { return !(a < b); }) == nodes.end();
}

} // namespace ctxdiv
