#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ctxdiv/index.hpp"

namespace ctxdiv {

struct FeatureEntry {
    std::string keyword;
    std::string feature;
    double mi = 0.0;

    friend bool operator==(const FeatureEntry&, const FeatureEntry&) = default;
};

/// One column of MI-ranked features per query keyword, in query order.
struct FeatureMatrix {
    std::vector<std::string> keywords;
    std::vector<std::vector<FeatureEntry>> columns;
};

/// P(x,y) * ln(P(x,y) / (P(x) P(y))) over the entity sample space.
///
/// Unknown terms and pairs that never co-occur score 0. The value is exactly
/// symmetric in x and y. Throws std::invalid_argument when x == y.
double mutual_information(std::string_view x, std::string_view y, const IndexBundle& index);

/// The `m` partners of `keyword` with the highest strictly positive MI,
/// sorted by (mi desc, feature asc). Empty for unknown keywords.
std::vector<FeatureEntry> top_features(std::string_view keyword, std::size_t m, const IndexBundle& index);

/// Throws NoIntentError when every column is empty.
FeatureMatrix build_matrix(const std::vector<std::string>& keywords, std::size_t m, const IndexBundle& index);

} // namespace ctxdiv
