#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "ctxdiv/diversify.hpp"
#include "ctxdiv/index.hpp"
#include "oracles.hpp"

namespace fixture {

std::filesystem::path data_dir();

/// Three papers under a bib root; entities 1.1, 1.2, 1.3.
std::string toy_xml();

/// TOY indexed with entity label `paper` and the given window.
ctxdiv::IndexBundle toy_index(std::uint32_t window = 3);

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

std::string read_text(const std::filesystem::path& file);

/// Between `min_terms` and `max_terms` distinct indexed terms.
std::vector<std::string> random_query(std::mt19937_64& rng, const ctxdiv::IndexBundle& index, std::size_t min_terms,
                                      std::size_t max_terms);

/// Empty when both top-k lists and Phi agree (scores within `tolerance`),
/// otherwise a description of the first difference.
std::string diff_results(const ctxdiv::SearchResult& a, const ctxdiv::SearchResult& b, double tolerance);
std::string diff_results(const ctxdiv::SearchResult& a, const oracle::OracleResult& b, double tolerance);

} // namespace fixture
