#include "ctxdiv/corpus.hpp"

#include <expat.h>

#include <memory>
#include <stdexcept>

#include "ctxdiv/errors.hpp"

namespace ctxdiv {

const StopWords& default_stopwords()
{
    static const StopWords words{
        "a",     "about", "above", "after", "again", "all",   "also",  "am",    "an",    "and",   "any",
        "are",   "as",    "at",    "be",    "been",  "being", "both",  "but",   "by",    "can",   "could",
        "did",   "do",    "does",  "for",   "from",  "had",   "has",   "have",  "he",    "her",   "here",
        "his",   "how",   "i",     "if",    "in",    "into",  "is",    "it",    "its",   "may",   "more",
        "most",  "no",    "nor",   "not",   "of",    "on",    "or",    "other", "our",   "over",  "she",
        "should", "so",   "some",  "such",  "than",  "that",  "the",   "their", "them",  "then",  "there",
        "these", "they",  "this",  "those", "through", "to",  "too",   "under", "up",    "us",    "very",
        "via",   "was",   "we",    "were",  "what",  "when",  "where", "which", "while", "who",   "whom",
        "why",   "will",  "with",  "would", "you",   "your",
    };
    return words;
}

void IndexConfig::validate() const
{
    if (window < 1) {
        throw std::invalid_argument("co-occurrence window must be >= 1");
    }
    if (entity_labels.empty()) {
        throw std::invalid_argument("at least one entity label is required");
    }
}

std::vector<Token> tokenize(std::string_view text, const StopWords& stopwords)
{
    auto is_word_byte = [](unsigned char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
    };

    std::vector<Token> tokens;
    std::uint32_t position = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_word_byte(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::string word;
        while (i < text.size() && is_word_byte(static_cast<unsigned char>(text[i]))) {
            char c = text[i++];
            if (c >= 'A' && c <= 'Z') {
                c = static_cast<char>(c - 'A' + 'a');
            }
            word.push_back(c);
        }
        if (!stopwords.contains(word)) {
            tokens.push_back(Token{std::move(word), position});
        }
        ++position;
    }
    return tokens;
}

namespace {

struct ParserDeleter {
    void operator()(XML_ParserStruct* p) const { XML_ParserFree(p); }
};

class CorpusBuilder {
public:
    explicit CorpusBuilder(const IndexConfig& config) : config_(config) {}

    static void XMLCALL on_start(void* self, const XML_Char* name, const XML_Char** /*attributes*/)
    {
        static_cast<CorpusBuilder*>(self)->start(name);
    }

    static void XMLCALL on_end(void* self, const XML_Char* /*name*/) { static_cast<CorpusBuilder*>(self)->end(); }

    static void XMLCALL on_text(void* self, const XML_Char* text, int length)
    {
        static_cast<CorpusBuilder*>(self)->text(std::string_view(text, static_cast<std::size_t>(length)));
    }

    EntityCorpus take() { return std::move(corpus_); }

private:
    struct OpenElement {
        std::vector<DeweyId::Component> path;
        DeweyId::Component children = 0;
        // Index into corpus_/buffers_ when this element is an entity.
        std::ptrdiff_t entity = -1;
    };

    void start(const char* name)
    {
        std::vector<DeweyId::Component> path;
        if (stack_.empty()) {
            path = {1};
        } else {
            auto& parent = stack_.back();
            path = parent.path;
            path.push_back(++parent.children);
        }
        separate();

        OpenElement element{std::move(path), 0, -1};
        if (config_.entity_labels.contains(name)) {
            element.entity = static_cast<std::ptrdiff_t>(corpus_.size());
            corpus_.push_back(EntityRecord{DeweyId(element.path), name, {}});
            buffers_.emplace_back();
            open_entities_.push_back(element.entity);
        }
        stack_.push_back(std::move(element));
    }

    void end()
    {
        auto element = std::move(stack_.back());
        stack_.pop_back();
        separate();
        if (element.entity >= 0) {
            auto index = static_cast<std::size_t>(element.entity);
            corpus_[index].tokens = tokenize(buffers_[index], config_.stopwords);
            buffers_[index].clear();
            buffers_[index].shrink_to_fit();
            open_entities_.pop_back();
        }
    }

    void text(std::string_view chunk)
    {
        for (auto entity : open_entities_) {
            buffers_[static_cast<std::size_t>(entity)].append(chunk);
        }
    }

    // Element boundaries never join two words.
    void separate()
    {
        for (auto entity : open_entities_) {
            buffers_[static_cast<std::size_t>(entity)].push_back(' ');
        }
    }

    const IndexConfig& config_;
    std::vector<OpenElement> stack_;
    std::vector<std::ptrdiff_t> open_entities_;
    std::vector<std::string> buffers_;
    EntityCorpus corpus_;
};

} // namespace

EntityCorpus parse_corpus(std::string_view xml, const IndexConfig& config)
{
    config.validate();

    std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
    if (!parser) {
        throw std::bad_alloc();
    }
    CorpusBuilder builder(config);
    XML_SetUserData(parser.get(), &builder);
    XML_SetElementHandler(parser.get(), &CorpusBuilder::on_start, &CorpusBuilder::on_end);
    XML_SetCharacterDataHandler(parser.get(), &CorpusBuilder::on_text);

    // Feed in chunks so inputs larger than INT_MAX are handled.
    constexpr std::size_t chunk = 1 << 20;
    std::size_t offset = 0;
    do {
        auto n = std::min(chunk, xml.size() - offset);
        bool last = offset + n == xml.size();
        if (XML_Parse(parser.get(), xml.data() + offset, static_cast<int>(n), last ? 1 : 0) == XML_STATUS_ERROR) {
            throw ParseError(XML_ErrorString(XML_GetErrorCode(parser.get())),
                             static_cast<std::int64_t>(XML_GetCurrentByteIndex(parser.get())));
        }
        offset += n;
    } while (offset < xml.size());

    auto corpus = builder.take();
    if (corpus.empty()) {
        throw EmptyCorpusError("no element matches the configured entity labels");
    }
    return corpus;
}

} // namespace ctxdiv
