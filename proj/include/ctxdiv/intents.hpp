#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "ctxdiv/features.hpp"
#include "ctxdiv/index.hpp"

namespace ctxdiv {

/// A query keyword bound to one feature term. An empty feature means the
/// keyword had no mined context and stands alone.
struct SegmentKey {
    std::string keyword;
    std::string feature;

    [[nodiscard]] bool bare() const noexcept { return feature.empty(); }

    friend auto operator<=>(const SegmentKey&, const SegmentKey&) = default;
    friend bool operator==(const SegmentKey&, const SegmentKey&) = default;
};

/// A segment with its keyword node list resolved against an index.
struct Segment {
    SegmentKey key;
    /// Entities containing both the keyword and the feature.
    NodeList node_list;
    /// |postings(feature)|, or |postings(keyword)| for a bare segment.
    std::size_t feature_list_size = 0;
};

/// Document-ordered intersection of the keyword and feature postings.
NodeList segment_node_list(std::string_view keyword, std::string_view feature, const IndexBundle& index);

Segment resolve_segment(const SegmentKey& key, const IndexBundle& index);

struct IntentQuery {
    /// One per original keyword, in query order.
    std::vector<SegmentKey> segments;
    /// Sum of the chosen features' MI scores.
    double agg_mi = 0.0;

    friend bool operator==(const IntentQuery&, const IntentQuery&) = default;
};

/// Lexicographic order on the per-column feature names.
bool intent_name_less(const IntentQuery& a, const IntentQuery& b);

/// Enumerates one-feature-per-column combinations of a feature matrix in
/// non-increasing aggregated MI, ties broken by the column-wise feature names.
///
/// Best-first search from the all-top combination: every combination is
/// reached from a predecessor that sorts no later, so the heap pops them in
/// exact order. Empty columns contribute a bare segment.
///
/// Aggregated MI never increases along the emission sequence. The name
/// tie-break is exact whenever equal sums come from equal column scores; a sum
/// that only ties after rounding away a sub-ulp difference may be ordered by
/// rank instead.
class IntentGenerator {
public:
    explicit IntentGenerator(const FeatureMatrix& matrix);

    /// std::nullopt once every combination has been emitted.
    std::optional<IntentQuery> next();

    /// Product of the non-empty column sizes.
    [[nodiscard]] std::size_t total() const noexcept { return total_; }

private:
    using Cursor = std::vector<std::uint32_t>;

    struct Candidate {
        Cursor cursor;
        IntentQuery intent;
    };
    struct Later {
        bool operator()(const Candidate& a, const Candidate& b) const;
    };

    Candidate make(Cursor cursor) const;

    std::vector<std::string> keywords_;
    std::vector<std::vector<FeatureEntry>> columns_;
    std::priority_queue<Candidate, std::vector<Candidate>, Later> frontier_;
    std::set<Cursor> seen_;
    std::size_t total_ = 0;
};

/// Drains a generator, stopping after `budget` intents when set.
std::vector<IntentQuery> generate_intents(const FeatureMatrix& matrix, std::optional<std::size_t> budget = {});

} // namespace ctxdiv
