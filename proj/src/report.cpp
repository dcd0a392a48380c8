#include "ctxdiv/report.hpp"

#include <cstdio>
#include <cstdlib>

#include <json.hpp>

namespace ctxdiv {

namespace {

using Json = nlohmann::ordered_json;

Json dewey_array(const SlcaSet& nodes)
{
    auto array = Json::array();
    for (const auto& node : nodes) {
        array.push_back(node.to_string());
    }
    return array;
}

Json stats_json(const EvalStats& stats, std::size_t intents_evaluated)
{
    Json json;
    json["intentsEvaluated"] = intents_evaluated;
    json["nodesVisited"] = stats.nodes_visited;
    json["nodesPruned"] = stats.nodes_pruned;
    json["areasSkipped"] = stats.areas_skipped;
    json["anchorProbes"] = stats.anchor_probes;
    return json;
}

// Quotes a CSV field when it contains a separator or a quote.
std::string csv_field(const std::string& text)
{
    if (text.find_first_of(",\"\n") == std::string::npos) {
        return text;
    }
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

} // namespace

SearchReport make_report(std::vector<std::string> query, const SearchParams& params, std::string algo,
                         std::size_t workers, const SearchResult& result)
{
    SearchReport report;
    report.query = std::move(query);
    report.k = params.k;
    report.m = params.m;
    report.algo = std::move(algo);
    report.workers = workers;
    report.intents = result.topk.entries;
    report.phi = result.topk.phi.nodes();
    report.stats = result.stats;
    report.intents_evaluated = result.intents_evaluated;
    return report;
}

std::string format_sig12(double value)
{
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

double round_sig12(double value)
{
    return std::strtod(format_sig12(value).c_str(), nullptr);
}

std::string segment_label(const SegmentKey& key)
{
    return key.bare() ? key.keyword : key.keyword + "+" + key.feature;
}

std::string report_json(const SearchReport& report)
{
    Json json;
    json["query"] = report.query;
    json["k"] = report.k;
    json["m"] = report.m;
    json["algo"] = report.algo;
    json["workers"] = report.workers;

    auto intents = Json::array();
    for (const auto& entry : report.intents) {
        Json intent;
        auto segments = Json::array();
        for (const auto& key : entry.intent.segments) {
            Json segment;
            segment["keyword"] = key.keyword;
            segment["feature"] = key.bare() ? Json(nullptr) : Json(key.feature);
            segments.push_back(std::move(segment));
        }
        intent["segments"] = std::move(segments);
        intent["aggMi"] = round_sig12(entry.intent.agg_mi);
        intent["relevance"] = round_sig12(entry.relevance);
        intent["dif"] = round_sig12(entry.dif);
        intent["score"] = round_sig12(entry.score);
        intent["results"] = dewey_array(entry.results);
        intents.push_back(std::move(intent));
    }
    json["intents"] = std::move(intents);
    json["phi"] = dewey_array(report.phi);
    json["stats"] = report.stats ? stats_json(*report.stats, report.intents_evaluated) : Json(nullptr);
    json["elapsedMs"] = report.elapsed_ms;
    return json.dump() + "\n";
}

std::string report_csv(const SearchReport& report)
{
    std::string out = "rank,score,relevance,dif,aggMi,segments,results\n";
    for (std::size_t i = 0; i < report.intents.size(); ++i) {
        const auto& entry = report.intents[i];
        std::string segments;
        for (const auto& key : entry.intent.segments) {
            segments += (segments.empty() ? "" : ";") + segment_label(key);
        }
        std::string results;
        for (const auto& node : entry.results) {
            results += (results.empty() ? "" : " ") + node.to_string();
        }
        out += std::to_string(i + 1) + "," + format_sig12(entry.score) + "," + format_sig12(entry.relevance) + "," +
               format_sig12(entry.dif) + "," + format_sig12(entry.intent.agg_mi) + "," + csv_field(segments) + "," +
               results + "\n";
    }
    return out;
}

std::string features_json(const std::string& term, const std::vector<FeatureEntry>& features)
{
    Json json;
    json["term"] = term;
    auto rows = Json::array();
    for (const auto& entry : features) {
        Json row;
        row["feature"] = entry.feature;
        row["mi"] = round_sig12(entry.mi);
        rows.push_back(std::move(row));
    }
    json["features"] = std::move(rows);
    return json.dump() + "\n";
}

std::string features_csv(const std::vector<FeatureEntry>& features)
{
    std::string out = "feature,mi\n";
    for (const auto& entry : features) {
        out += csv_field(entry.feature) + "," + format_sig12(entry.mi) + "\n";
    }
    return out;
}

} // namespace ctxdiv
