#include <gtest/gtest.h>

#include <fstream>

#include "ctxdiv/errors.hpp"
#include "ctxdiv/index.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using ctxdiv::DeweyId;
using ctxdiv::NodeList;

namespace {

void overwrite(const std::filesystem::path& file, const std::string& text)
{
    std::ofstream(file, std::ios::binary | std::ios::trunc) << text;
}

} // namespace

TEST(Index, ToyPostings)
{
    auto index = fixture::toy_index();
    EXPECT_EQ(index.entity_count(), 3u);
    EXPECT_EQ(index.postings().size(), 8u);
    auto list = [&](std::string_view term) {
        auto span = index.postings(term);
        return NodeList(span.begin(), span.end());
    };
    EXPECT_EQ(list("database"), (NodeList{{1, 1}, {1, 2}, {1, 3}}));
    EXPECT_EQ(list("query"), (NodeList{{1, 1}, {1, 2}}));
    EXPECT_EQ(list("system"), (NodeList{{1, 1}}));
    EXPECT_EQ(list("retrieval"), (NodeList{{1, 3}}));
    EXPECT_TRUE(list("zzz").empty());
}

TEST(Index, ToyWindowThreeCountsLongestGap)
{
    auto index = fixture::toy_index(3);
    EXPECT_EQ(index.cooccur_count("database", "language"), 1u);
    EXPECT_EQ(index.cooccur_count("language", "database"), 1u);
    EXPECT_EQ(index.cooccur_count("database", "query"), 2u);
    EXPECT_EQ(index.cooccur_count("image", "query"), 0u);
    EXPECT_EQ(index.cooccurrences().size(), 14u);
}

TEST(Index, ToyWindowOneCountsAdjacentPairsOnly)
{
    auto index = fixture::toy_index(1);
    EXPECT_EQ(index.cooccur_count("database", "query"), 1u);
    EXPECT_EQ(index.cooccur_count("database", "language"), 0u);
    EXPECT_EQ(index.cooccurrences().size(), 8u);
}

TEST(Index, TripletsAreCanonicalAndSorted)
{
    auto index = fixture::toy_index();
    const auto& triplets = index.cooccurrences();
    for (std::size_t i = 0; i < triplets.size(); ++i) {
        EXPECT_LT(triplets[i].a, triplets[i].b);
        if (i > 0) {
            EXPECT_TRUE(ctxdiv::cooccur_order(triplets[i - 1], triplets[i]));
        }
    }
    EXPECT_EQ(triplets.front().a, "database");
    EXPECT_EQ(triplets.front().b, "query");
}

TEST(Index, CountsMatchBruteForceWindowScan)
{
    std::mt19937_64 rng(21);
    for (int round = 0; round < 60; ++round) {
        std::uint32_t window = 1 + static_cast<std::uint32_t>(rng() % 4);
        auto config = oracle::config_for({"e"}, window);
        auto corpus = ctxdiv::parse_corpus(oracle::random_corpus_xml(rng, 120, 25), config);
        auto index = ctxdiv::build_index(corpus, config);
        auto counts = oracle::scan_counts(corpus, window);

        ASSERT_EQ(index.cooccurrences().size(), counts.pair_df.size());
        for (const auto& t : index.cooccurrences()) {
            EXPECT_EQ(t.count, counts.pair_df.at({t.a, t.b}));
        }
        for (const auto& [term, list] : index.postings()) {
            EXPECT_TRUE(ctxdiv::is_document_ordered(list));
            EXPECT_EQ(list, oracle::entities_with(corpus, {term}));
        }
    }
}

TEST(Index, SaveLoadRoundTrip)
{
    fixture::TempDir dir;
    auto index = fixture::toy_index();
    ctxdiv::save_index(index, dir.path());
    EXPECT_EQ(ctxdiv::load_index(dir.path()), index);
}

TEST(Index, ToyMatchesGoldenFiles)
{
    fixture::TempDir dir;
    ctxdiv::save_index(fixture::toy_index(), dir.path());
    for (const char* name : {"manifest.json", "entities.jsonl", "postings.jsonl", "cooccur.jsonl"}) {
        EXPECT_EQ(fixture::read_text(dir.path() / name), fixture::read_text(fixture::data_dir() / "toy_index" / name))
            << name;
    }
    EXPECT_EQ(ctxdiv::load_index(fixture::data_dir() / "toy_index"), fixture::toy_index());
}

TEST(Index, VersionMismatch)
{
    fixture::TempDir dir;
    ctxdiv::save_index(fixture::toy_index(), dir.path());
    overwrite(dir.path() / "manifest.json",
              R"({"version":99,"entityCount":3,"window":3,"entityLabels":["paper"],"logBase":"e"})"
              "\n");
    try {
        ctxdiv::load_index(dir.path());
        FAIL() << "expected a version mismatch";
    } catch (const ctxdiv::VersionMismatchError& e) {
        EXPECT_EQ(e.found(), 99);
    }
}

TEST(Index, UnsortedPostingLineIsReportedWithLineNumber)
{
    fixture::TempDir dir;
    ctxdiv::save_index(fixture::toy_index(), dir.path());
    overwrite(dir.path() / "postings.jsonl",
              R"({"term":"database","entities":["1.1","1.2","1.3"]})"
              "\n"
              R"({"term":"image","entities":["1.3","1.1"]})"
              "\n");
    try {
        ctxdiv::load_index(dir.path());
        FAIL() << "expected a corruption error";
    } catch (const ctxdiv::CorruptIndexError& e) {
        EXPECT_EQ(e.file(), "postings.jsonl");
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(Index, CorruptLinesAreRejected)
{
    auto corrupt = [](const char* file, const std::string& text) {
        fixture::TempDir dir;
        ctxdiv::save_index(fixture::toy_index(), dir.path());
        overwrite(dir.path() / file, text);
        EXPECT_THROW(ctxdiv::load_index(dir.path()), ctxdiv::CorruptIndexError) << file << ": " << text;
    };
    corrupt("cooccur.jsonl", "not json\n");
    corrupt("cooccur.jsonl", R"({"a":"query","b":"database","count":2})"
                             "\n");
    corrupt("cooccur.jsonl", R"({"a":"database","b":"unknown","count":1})"
                             "\n");
    corrupt("cooccur.jsonl", R"({"a":"database","b":"query","count":0})"
                             "\n");
    corrupt("entities.jsonl", R"({"dewey":"1.x","label":"paper"})"
                              "\n");
    corrupt("entities.jsonl", R"({"dewey":"1.1","label":"paper"})"
                              "\n");
}

TEST(Index, MissingFileIsAnError)
{
    fixture::TempDir dir;
    EXPECT_THROW(ctxdiv::load_index(dir.path() / "nowhere"), std::runtime_error);
}
