#include "fixtures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iterator>
#include <random>
#include <stdexcept>

#include "oracles.hpp"

namespace fixture {

std::filesystem::path data_dir()
{
    return CTXDIV_TEST_DATA;
}

std::string toy_xml()
{
    return "<bib><paper><title>database system query language</title></paper>"
           "<paper><title>relational database query optimization</title></paper>"
           "<paper><title>image database retrieval</title></paper></bib>";
}

ctxdiv::IndexBundle toy_index(std::uint32_t window)
{
    auto config = oracle::config_for({"paper"}, window);
    return ctxdiv::build_index(ctxdiv::parse_corpus(toy_xml(), config), config);
}

TempDir::TempDir()
{
    static std::atomic<unsigned> counter{0};
    std::random_device device;
    path_ = std::filesystem::temp_directory_path() /
            ("ctxdiv-test-" + std::to_string(device()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir()
{
    std::error_code ignored;
    std::filesystem::remove_all(path_, ignored);
}

std::string read_text(const std::filesystem::path& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + file.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> random_query(std::mt19937_64& rng, const ctxdiv::IndexBundle& index, std::size_t min_terms,
                                      std::size_t max_terms)
{
    std::vector<std::string> terms;
    for (const auto& [term, list] : index.postings()) {
        terms.push_back(term);
    }
    std::shuffle(terms.begin(), terms.end(), rng);
    std::uniform_int_distribution<std::size_t> size(min_terms, max_terms);
    terms.resize(std::min(terms.size(), size(rng)));
    return terms;
}

namespace {

std::string intent_text(const ctxdiv::IntentQuery& intent)
{
    std::string text;
    for (const auto& key : intent.segments) {
        text += "(" + key.keyword + "," + key.feature + ")";
    }
    return text;
}

bool close(double a, double b, double tolerance)
{
    return std::fabs(a - b) <= tolerance;
}

struct EntryView {
    const ctxdiv::IntentQuery* intent;
    double relevance;
    double dif;
    double score;
    const ctxdiv::NodeList* results;
};

std::string diff_views(const std::vector<EntryView>& a, const std::vector<EntryView>& b, const ctxdiv::NodeList& phi_a,
                       const ctxdiv::NodeList& phi_b, double tolerance)
{
    if (a.size() != b.size()) {
        return "entry count " + std::to_string(a.size()) + " vs " + std::to_string(b.size());
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::string where = "entry " + std::to_string(i) + " ";
        if (!(*a[i].intent == *b[i].intent)) {
            return where + intent_text(*a[i].intent) + " vs " + intent_text(*b[i].intent);
        }
        if (!close(a[i].relevance, b[i].relevance, tolerance) || !close(a[i].dif, b[i].dif, tolerance) ||
            !close(a[i].score, b[i].score, tolerance)) {
            return where + "scores differ: " + std::to_string(a[i].score) + " vs " + std::to_string(b[i].score);
        }
        if (*a[i].results != *b[i].results) {
            return where + "results differ";
        }
    }
    if (phi_a != phi_b) {
        return "phi differs: " + std::to_string(phi_a.size()) + " vs " + std::to_string(phi_b.size()) + " nodes";
    }
    return {};
}

} // namespace

std::string diff_results(const ctxdiv::SearchResult& a, const ctxdiv::SearchResult& b, double tolerance)
{
    std::vector<EntryView> va;
    std::vector<EntryView> vb;
    for (const auto& e : a.topk.entries) {
        va.push_back({&e.intent, e.relevance, e.dif, e.score, &e.results});
    }
    for (const auto& e : b.topk.entries) {
        vb.push_back({&e.intent, e.relevance, e.dif, e.score, &e.results});
    }
    return diff_views(va, vb, a.topk.phi.nodes(), b.topk.phi.nodes(), tolerance);
}

std::string diff_results(const ctxdiv::SearchResult& a, const oracle::OracleResult& b, double tolerance)
{
    std::vector<EntryView> va;
    std::vector<EntryView> vb;
    for (const auto& e : a.topk.entries) {
        va.push_back({&e.intent, e.relevance, e.dif, e.score, &e.results});
    }
    for (const auto& e : b.entries) {
        vb.push_back({&e.intent, e.relevance, e.dif, e.score, &e.results});
    }
    return diff_views(va, vb, a.topk.phi.nodes(), b.phi, tolerance);
}

} // namespace fixture
