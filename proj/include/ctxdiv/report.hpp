#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctxdiv/diversify.hpp"
#include "ctxdiv/features.hpp"

namespace ctxdiv {

struct SearchReport {
    std::vector<std::string> query;
    std::size_t k = 0;
    std::size_t m = 0;
    std::string algo;
    std::size_t workers = 1;
    /// Admitted intents, best first.
    std::vector<ScoredIntent> intents;
    SlcaSet phi;
    /// Present only when statistics were requested.
    std::optional<EvalStats> stats;
    std::size_t intents_evaluated = 0;
    std::int64_t elapsed_ms = 0;
};

SearchReport make_report(std::vector<std::string> query, const SearchParams& params, std::string algo,
                         std::size_t workers, const SearchResult& result);

/// `value` rounded to 12 significant digits.
double round_sig12(double value);

/// "%.12g" rendering used by the CSV writers.
std::string format_sig12(double value);

/// "keyword" for a bare segment, "keyword+feature" otherwise.
std::string segment_label(const SegmentKey& key);

/// Single-line JSON with a fixed key order, terminated by a newline.
std::string report_json(const SearchReport& report);

/// Header `rank,score,relevance,dif,aggMi,segments,results`; segments are
/// separated by ';' and results by ' '.
std::string report_csv(const SearchReport& report);

std::string features_json(const std::string& term, const std::vector<FeatureEntry>& features);

/// Header `feature,mi`.
std::string features_csv(const std::vector<FeatureEntry>& features);

} // namespace ctxdiv
