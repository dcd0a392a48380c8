#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ctxdiv/dewey.hpp"

namespace ctxdiv {

using StopWords = std::set<std::string, std::less<>>;

/// The embedded English stop-word list used when none is configured.
const StopWords& default_stopwords();

struct IndexConfig {
    /// Element names whose nodes form the statistical sample space.
    std::set<std::string> entity_labels;
    /// Maximum position distance for two tokens to count as co-occurring.
    std::uint32_t window = 3;
    StopWords stopwords = default_stopwords();

    /// Throws std::invalid_argument when window < 1 or no entity label is set.
    void validate() const;

    friend bool operator==(const IndexConfig&, const IndexConfig&) = default;
};

struct Token {
    std::string text;
    /// Ordinal in the entity's token stream before stop-word removal.
    std::uint32_t position = 0;

    friend bool operator==(const Token&, const Token&) = default;
};

struct EntityRecord {
    DeweyId id;
    std::string label;
    std::vector<Token> tokens;

    friend bool operator==(const EntityRecord&, const EntityRecord&) = default;
};

using EntityCorpus = std::vector<EntityRecord>;

/// Lowercases ASCII letters and splits on anything that is not an ASCII letter
/// or digit. Bytes >= 0x80 are kept inside tokens so UTF-8 words survive.
/// Stop words are dropped after positions have been assigned.
std::vector<Token> tokenize(std::string_view text, const StopWords& stopwords);

/// One record per element whose name is in `config.entity_labels`, in document
/// order. Tokens come from all descendant character data; element boundaries
/// separate tokens and attribute values are ignored.
///
/// Throws ParseError on malformed XML and EmptyCorpusError when nothing matches.
EntityCorpus parse_corpus(std::string_view xml, const IndexConfig& config);

} // namespace ctxdiv
