#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ctxdiv/corpus.hpp"
#include "ctxdiv/dewey.hpp"

namespace ctxdiv {

/// Number of entities in which two terms appear within the window of each
/// other. Stored with `a < b`.
struct Cooccurrence {
    std::string a;
    std::string b;
    std::uint32_t count = 0;

    friend bool operator==(const Cooccurrence&, const Cooccurrence&) = default;
};

struct EntityRef {
    DeweyId id;
    std::string label;

    friend bool operator==(const EntityRef&, const EntityRef&) = default;
};

/// Entity-level postings, pairwise co-occurrence counts and corpus statistics.
///
/// Immutable after construction; the constructor validates every invariant and
/// builds the partner lookup used by feature selection.
class IndexBundle {
public:
    using Postings = std::map<std::string, NodeList, std::less<>>;

    /// Throws std::invalid_argument when an invariant does not hold.
    IndexBundle(IndexConfig config, std::vector<EntityRef> entities, Postings postings,
                std::vector<Cooccurrence> cooccur);

    // The partner lookup holds views into the postings keys; moves keep the
    // map nodes alive, copies would not.
    IndexBundle(const IndexBundle&) = delete;
    IndexBundle& operator=(const IndexBundle&) = delete;
    IndexBundle(IndexBundle&&) noexcept = default;
    IndexBundle& operator=(IndexBundle&&) noexcept = default;

    [[nodiscard]] const IndexConfig& config() const noexcept { return config_; }
    [[nodiscard]] std::size_t entity_count() const noexcept { return entities_.size(); }
    [[nodiscard]] const std::vector<EntityRef>& entities() const noexcept { return entities_; }
    [[nodiscard]] const Postings& postings() const noexcept { return postings_; }
    /// Sorted by count descending, then (a, b) ascending.
    [[nodiscard]] const std::vector<Cooccurrence>& cooccurrences() const noexcept { return cooccur_; }

    /// Empty span for unknown terms.
    [[nodiscard]] std::span<const DeweyId> postings(std::string_view term) const;
    [[nodiscard]] bool contains(std::string_view term) const;

    /// 0 when the pair never co-occurs or either term is unknown.
    [[nodiscard]] std::uint32_t cooccur_count(std::string_view x, std::string_view y) const;

    struct Partner {
        std::string_view term;
        std::uint32_t count;
    };
    /// Terms co-occurring with `term`, sorted by name.
    [[nodiscard]] std::span<const Partner> partners(std::string_view term) const;

    friend bool operator==(const IndexBundle& a, const IndexBundle& b)
    {
        return a.config_ == b.config_ && a.entities_ == b.entities_ && a.postings_ == b.postings_ &&
               a.cooccur_ == b.cooccur_;
    }

private:
    IndexConfig config_;
    std::vector<EntityRef> entities_;
    Postings postings_;
    std::vector<Cooccurrence> cooccur_;
    std::unordered_map<std::string_view, std::vector<Partner>> partners_;
};

/// Orders triplets as persisted: count descending, then (a, b).
bool cooccur_order(const Cooccurrence& x, const Cooccurrence& y) noexcept;

/// Builds postings and the co-occurrence store in one pass over the corpus.
IndexBundle build_index(const EntityCorpus& corpus, const IndexConfig& config);

inline constexpr int index_format_version = 1;

/// Writes manifest.json, entities.jsonl, postings.jsonl, cooccur.jsonl and
/// stopwords.txt into `dir` (created if needed).
void save_index(const IndexBundle& bundle, const std::filesystem::path& dir);

/// Without stopwords.txt the default stop-word list is assumed.
///
/// Throws VersionMismatchError or CorruptIndexError; std::runtime_error when a
/// file cannot be opened.
IndexBundle load_index(const std::filesystem::path& dir);

} // namespace ctxdiv
