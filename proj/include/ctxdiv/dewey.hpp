#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ctxdiv {

/// Hierarchical node label: 1-based child ordinals from the document root.
///
/// Ordering is lexicographic on the components, which is document (preorder)
/// order: an ancestor sorts before all of its descendants, and the nodes of one
/// subtree are contiguous in any sorted sequence.
class DeweyId {
public:
    using Component = std::uint32_t;

    /// The document root, "1".
    DeweyId() : components_{1} {}
    DeweyId(std::initializer_list<Component> components);
    explicit DeweyId(std::vector<Component> components);

    /// Parses "1.2.1". Throws std::invalid_argument on malformed input.
    static DeweyId parse(std::string_view text);

    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] std::span<const Component> components() const noexcept { return components_; }
    [[nodiscard]] std::size_t depth() const noexcept { return components_.size(); }

    [[nodiscard]] DeweyId child(Component ordinal) const;
    /// The first `length` components; `length` in [1, depth()].
    [[nodiscard]] DeweyId prefix(std::size_t length) const;

    /// Strict prefix test.
    [[nodiscard]] bool is_ancestor_of(const DeweyId& other) const noexcept;
    [[nodiscard]] bool is_ancestor_or_self_of(const DeweyId& other) const noexcept;

    friend bool operator==(const DeweyId&, const DeweyId&) = default;
    friend std::strong_ordering operator<=>(const DeweyId& a, const DeweyId& b) noexcept
    {
        return a.components_ <=> b.components_;
    }

private:
    std::vector<Component> components_;
};

enum class DeweyRelation { equal, ancestor, descendant, precedes, follows };

/// How `a` relates to `b`: `ancestor` means a is a strict ancestor of b.
DeweyRelation relation(const DeweyId& a, const DeweyId& b) noexcept;

std::string_view to_string(DeweyRelation r) noexcept;

/// Lowest common ancestor (longest common prefix).
DeweyId lca(const DeweyId& a, const DeweyId& b);

using NodeList = std::vector<DeweyId>;

/// Index range [first, last) of the nodes of `sorted` that lie in the subtree
/// rooted at `root` (root included). `sorted` must be in document order.
std::pair<std::size_t, std::size_t> subtree_range(std::span<const DeweyId> sorted, const DeweyId& root);

/// True if some node of `sorted` is `root` or one of its descendants.
bool subtree_contains_any(std::span<const DeweyId> sorted, const DeweyId& root);

/// True if some node of `sorted` is a strict descendant of `root`.
bool has_strict_descendant(std::span<const DeweyId> sorted, const DeweyId& root);

bool is_document_ordered(std::span<const DeweyId> nodes) noexcept;

} // namespace ctxdiv
