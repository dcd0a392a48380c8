#include "ctxdiv/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ctxdiv/errors.hpp"

namespace ctxdiv {

namespace {

// Counts are combined as products before the single division so the result
// does not depend on argument order.
double mi_from_counts(double pair, double x, double y, double total)
{
    return (pair / total) * std::log((pair * total) / (x * y));
}

bool feature_order(const FeatureEntry& a, const FeatureEntry& b)
{
    if (a.mi != b.mi) {
        return a.mi > b.mi;
    }
    return a.feature < b.feature;
}

} // namespace

double mutual_information(std::string_view x, std::string_view y, const IndexBundle& index)
{
    if (x == y) {
        throw std::invalid_argument("mutual information needs two distinct terms");
    }
    auto pair = index.cooccur_count(x, y);
    if (pair == 0) {
        return 0.0;
    }
    return mi_from_counts(pair, static_cast<double>(index.postings(x).size()),
                          static_cast<double>(index.postings(y).size()),
                          static_cast<double>(index.entity_count()));
}

std::vector<FeatureEntry> top_features(std::string_view keyword, std::size_t m, const IndexBundle& index)
{
    if (m < 1) {
        throw std::invalid_argument("m must be >= 1");
    }
    std::vector<FeatureEntry> entries;
    const auto total = static_cast<double>(index.entity_count());
    const auto keyword_count = static_cast<double>(index.postings(keyword).size());
    for (const auto& partner : index.partners(keyword)) {
        double mi = mi_from_counts(partner.count, keyword_count,
                                   static_cast<double>(index.postings(partner.term).size()), total);
        if (mi > 0.0) {
            entries.push_back(FeatureEntry{std::string(keyword), std::string(partner.term), mi});
        }
    }
    auto keep = std::min(m, entries.size());
    std::partial_sort(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(keep), entries.end(),
                      feature_order);
    entries.resize(keep);
    return entries;
}

FeatureMatrix build_matrix(const std::vector<std::string>& keywords, std::size_t m, const IndexBundle& index)
{
    if (keywords.empty()) {
        throw std::invalid_argument("query has no keywords");
    }
    FeatureMatrix matrix;
    matrix.keywords = keywords;
    bool any = false;
    for (const auto& keyword : keywords) {
        matrix.columns.push_back(top_features(keyword, m, index));
        any = any || !matrix.columns.back().empty();
    }
    if (!any) {
        throw NoIntentError("no query keyword has a feature term");
    }
    return matrix;
}

} // namespace ctxdiv
