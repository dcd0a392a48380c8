#include "ctxdiv/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ctxdiv/anchor.hpp"
#include "ctxdiv/corpus.hpp"
#include "ctxdiv/errors.hpp"
#include "ctxdiv/features.hpp"
#include "ctxdiv/index.hpp"
#include "ctxdiv/parallel.hpp"
#include "ctxdiv/report.hpp"

namespace ctxdiv::cli {

namespace {

struct IndexArgs {
    std::string input;
    std::vector<std::string> entities;
    std::string out;
    std::uint32_t window = 3;
    std::string stopwords;
};

struct FeaturesArgs {
    std::string index;
    std::string term;
    std::size_t top = 10;
    std::string format = "json";
};

struct SearchArgs {
    std::string index;
    std::string query;
    std::size_t k = 10;
    std::size_t m = 20;
    std::string algo = "anchor";
    std::size_t workers = 4;
    std::optional<std::size_t> budget;
    bool stats = false;
    bool no_timing = false;
    std::string format = "json";
};

const CLI::Range at_least_one(std::size_t{1}, std::numeric_limits<std::size_t>::max());

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string lowercase(std::string text)
{
    std::transform(text.begin(), text.end(), text.begin(),
                   [](unsigned char c) { return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c); });
    return text;
}

int cmd_index(const IndexArgs& args, std::ostream& out)
{
    IndexConfig config;
    config.entity_labels = {args.entities.begin(), args.entities.end()};
    config.window = args.window;
    if (!args.stopwords.empty()) {
        std::istringstream words(read_file(args.stopwords));
        config.stopwords.clear();
        for (std::string word; words >> word;) {
            config.stopwords.insert(lowercase(word));
        }
    }
    config.validate();

    auto corpus = parse_corpus(read_file(args.input), config);
    auto index = build_index(corpus, config);
    save_index(index, args.out);
    out << "entities " << index.entity_count() << "\n"
        << "terms " << index.postings().size() << "\n"
        << "triplets " << index.cooccurrences().size() << "\n";
    return exit_ok;
}

int cmd_features(const FeaturesArgs& args, std::ostream& out)
{
    auto index = load_index(args.index);
    auto term = lowercase(args.term);
    auto features = top_features(term, args.top, index);
    out << (args.format == "csv" ? features_csv(features) : features_json(term, features));
    return exit_ok;
}

int cmd_search(const SearchArgs& args, std::ostream& out, std::ostream& err)
{
    auto keywords = split_query(args.query);
    if (keywords.empty()) {
        err << "search: --query must contain at least one term\n";
        return exit_usage;
    }
    auto index = load_index(args.index);

    SearchParams params;
    params.k = args.k;
    params.m = args.m;
    params.budget = args.budget;

    auto start = std::chrono::steady_clock::now();
    SearchResult result;
    std::size_t workers = 1;
    if (args.algo == "baseline") {
        result = diversify_baseline(keywords, params, index);
    } else if (args.algo == "anchor") {
        result = diversify_anchored(keywords, params, index);
    } else {
        workers = args.workers;
        result = diversify_parallel(keywords, params, index, workers);
    }
    auto elapsed = std::chrono::steady_clock::now() - start;

    auto report = make_report(keywords, params, args.algo, workers, result);
    if (!args.stats) {
        report.stats.reset();
    }
    report.elapsed_ms =
        args.no_timing ? 0 : std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    out << (args.format == "csv" ? report_csv(report) : report_json(report));
    return exit_ok;
}

} // namespace

std::vector<std::string> split_query(const std::string& text)
{
    std::istringstream in(text);
    std::vector<std::string> terms;
    for (std::string term; in >> term;) {
        terms.push_back(lowercase(term));
    }
    return terms;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Context-based diversification for XML keyword search", "ctxdiv"};
    app.require_subcommand(1);

    IndexArgs index_args;
    auto* index_cmd = app.add_subcommand("index", "Parse an XML corpus and write an index directory");
    index_cmd->add_option("--input", index_args.input, "XML file")->required();
    index_cmd->add_option("--entity", index_args.entities, "Entity element name (repeatable)")->required();
    index_cmd->add_option("--out", index_args.out, "Output directory")->required();
    index_cmd->add_option("--window", index_args.window, "Co-occurrence window")
        ->capture_default_str()
        ->check(CLI::Range(1u, 1000000u));
    index_cmd->add_option("--stopwords", index_args.stopwords, "Whitespace-separated stop-word file");

    FeaturesArgs features_args;
    auto* features_cmd = app.add_subcommand("features", "List the top feature terms of a term");
    features_cmd->add_option("--index", features_args.index, "Index directory")->required();
    features_cmd->add_option("--term", features_args.term, "Term")->required();
    features_cmd->add_option("--top", features_args.top, "Number of features")
        ->capture_default_str()
        ->check(at_least_one);
    features_cmd->add_option("--format", features_args.format, "Output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "csv"}));

    SearchArgs search_args;
    auto* search_cmd = app.add_subcommand("search", "Run a diversified keyword search");
    search_cmd->add_option("--index", search_args.index, "Index directory")->required();
    search_cmd->add_option("--query", search_args.query, "Keyword query")->required();
    search_cmd->add_option("--k", search_args.k, "Number of intents to return")
        ->capture_default_str()
        ->check(at_least_one);
    search_cmd->add_option("--m", search_args.m, "Feature terms per keyword")
        ->capture_default_str()
        ->check(at_least_one);
    search_cmd->add_option("--algo", search_args.algo, "Evaluation engine")
        ->capture_default_str()
        ->check(CLI::IsMember({"baseline", "anchor", "parallel"}));
    search_cmd->add_option("--workers", search_args.workers, "Worker threads for --algo parallel")
        ->capture_default_str()
        ->check(at_least_one);
    search_cmd->add_option("--budget", search_args.budget, "Maximum number of intents to evaluate");
    search_cmd->add_flag("--stats", search_args.stats, "Include evaluation statistics");
    search_cmd->add_flag("--no-timing", search_args.no_timing, "Report elapsedMs as 0");
    search_cmd->add_option("--format", search_args.format, "Output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "csv"}));

    auto active_help = [&] {
        const CLI::App* active = &app;
        for (const auto* sub : app.get_subcommands()) {
            active = sub;
        }
        return active->help();
    };
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << active_help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << active_help();
        return exit_usage;
    }

    try {
        if (index_cmd->parsed()) {
            return cmd_index(index_args, out);
        }
        if (features_cmd->parsed()) {
            return cmd_features(features_args, out);
        }
        return cmd_search(search_args, out, err);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_data_error;
    }
}

} // namespace ctxdiv::cli
