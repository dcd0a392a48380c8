#include "ctxdiv/intents.hpp"

#include <algorithm>
#include <iterator>

namespace ctxdiv {

NodeList segment_node_list(std::string_view keyword, std::string_view feature, const IndexBundle& index)
{
    auto a = index.postings(keyword);
    auto b = index.postings(feature);
    NodeList out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Segment resolve_segment(const SegmentKey& key, const IndexBundle& index)
{
    Segment segment{key, {}, 0};
    if (key.bare()) {
        auto list = index.postings(key.keyword);
        segment.node_list.assign(list.begin(), list.end());
        segment.feature_list_size = list.size();
    } else {
        segment.node_list = segment_node_list(key.keyword, key.feature, index);
        segment.feature_list_size = index.postings(key.feature).size();
    }
    return segment;
}

bool intent_name_less(const IntentQuery& a, const IntentQuery& b)
{
    return std::lexicographical_compare(a.segments.begin(), a.segments.end(), b.segments.begin(), b.segments.end(),
                                        [](const SegmentKey& x, const SegmentKey& y) { return x.feature < y.feature; });
}

bool IntentGenerator::Later::operator()(const Candidate& a, const Candidate& b) const
{
    // priority_queue pops the greatest; "greater" here means "emitted first".
    if (a.intent.agg_mi != b.intent.agg_mi) {
        return a.intent.agg_mi < b.intent.agg_mi;
    }
    return intent_name_less(b.intent, a.intent);
}

IntentGenerator::IntentGenerator(const FeatureMatrix& matrix) : keywords_(matrix.keywords), columns_(matrix.columns)
{
    bool any = false;
    total_ = 1;
    for (const auto& column : columns_) {
        if (!column.empty()) {
            any = true;
            total_ *= column.size();
        }
    }
    if (!any) {
        total_ = 0;
        return;
    }
    Cursor start(columns_.size(), 0);
    seen_.insert(start);
    frontier_.push(make(std::move(start)));
}

IntentGenerator::Candidate IntentGenerator::make(Cursor cursor) const
{
    Candidate candidate{std::move(cursor), {}};
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i].empty()) {
            candidate.intent.segments.push_back(SegmentKey{keywords_[i], ""});
            continue;
        }
        const auto& entry = columns_[i][candidate.cursor[i]];
        candidate.intent.segments.push_back(SegmentKey{keywords_[i], entry.feature});
        candidate.intent.agg_mi += entry.mi;
    }
    return candidate;
}

std::optional<IntentQuery> IntentGenerator::next()
{
    if (frontier_.empty()) {
        return std::nullopt;
    }
    auto top = frontier_.top();
    frontier_.pop();
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (top.cursor[i] + 1 >= columns_[i].size()) {
            continue;
        }
        auto successor = top.cursor;
        ++successor[i];
        if (seen_.insert(successor).second) {
            frontier_.push(make(std::move(successor)));
        }
    }
    return std::move(top.intent);
}

std::vector<IntentQuery> generate_intents(const FeatureMatrix& matrix, std::optional<std::size_t> budget)
{
    IntentGenerator generator(matrix);
    std::vector<IntentQuery> intents;
    while (!budget || intents.size() < *budget) {
        auto intent = generator.next();
        if (!intent) {
            break;
        }
        intents.push_back(std::move(*intent));
    }
    return intents;
}

} // namespace ctxdiv
