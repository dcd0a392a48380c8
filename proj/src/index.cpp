#include "ctxdiv/index.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "ctxdiv/errors.hpp"

namespace ctxdiv {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

bool cooccur_order(const Cooccurrence& x, const Cooccurrence& y) noexcept
{
    if (x.count != y.count) {
        return x.count > y.count;
    }
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
}

IndexBundle::IndexBundle(IndexConfig config, std::vector<EntityRef> entities, Postings postings,
                         std::vector<Cooccurrence> cooccur)
    : config_(std::move(config)), entities_(std::move(entities)), postings_(std::move(postings)),
      cooccur_(std::move(cooccur))
{
    config_.validate();
    if (entities_.empty()) {
        throw std::invalid_argument("index needs at least one entity");
    }
    for (std::size_t i = 1; i < entities_.size(); ++i) {
        if (!(entities_[i - 1].id < entities_[i].id)) {
            throw std::invalid_argument("entities are not in document order");
        }
    }
    for (const auto& [term, list] : postings_) {
        if (list.empty() || !is_document_ordered(list)) {
            throw std::invalid_argument("posting list of '" + term + "' is empty or not strictly increasing");
        }
    }
    for (std::size_t i = 0; i < cooccur_.size(); ++i) {
        const auto& t = cooccur_[i];
        if (!(t.a < t.b) || t.count < 1) {
            throw std::invalid_argument("malformed co-occurrence (" + t.a + ", " + t.b + ")");
        }
        if (i > 0 && !cooccur_order(cooccur_[i - 1], t)) {
            throw std::invalid_argument("co-occurrences are not in canonical order");
        }
        auto pa = postings_.find(t.a);
        auto pb = postings_.find(t.b);
        if (pa == postings_.end() || pb == postings_.end()) {
            throw std::invalid_argument("co-occurrence term without postings");
        }
        partners_[pa->first].push_back(Partner{pb->first, t.count});
        partners_[pb->first].push_back(Partner{pa->first, t.count});
    }
    for (auto& [term, list] : partners_) {
        std::sort(list.begin(), list.end(), [](const Partner& x, const Partner& y) { return x.term < y.term; });
    }
}

std::span<const DeweyId> IndexBundle::postings(std::string_view term) const
{
    auto it = postings_.find(term);
    if (it == postings_.end()) {
        return {};
    }
    return it->second;
}

bool IndexBundle::contains(std::string_view term) const
{
    return postings_.find(term) != postings_.end();
}

std::span<const IndexBundle::Partner> IndexBundle::partners(std::string_view term) const
{
    auto it = partners_.find(term);
    if (it == partners_.end()) {
        return {};
    }
    return it->second;
}

std::uint32_t IndexBundle::cooccur_count(std::string_view x, std::string_view y) const
{
    auto list = partners(x);
    auto it = std::lower_bound(list.begin(), list.end(), y,
                               [](const Partner& p, std::string_view term) { return p.term < term; });
    if (it == list.end() || it->term != y) {
        return 0;
    }
    return it->count;
}

IndexBundle build_index(const EntityCorpus& corpus, const IndexConfig& config)
{
    config.validate();
    if (corpus.empty()) {
        throw EmptyCorpusError("cannot index an empty corpus");
    }

    std::unordered_map<std::string, std::uint32_t> ids;
    std::vector<std::string> names;
    std::vector<NodeList> lists;
    std::unordered_map<std::uint64_t, std::uint32_t> pair_counts;

    std::vector<EntityRef> entities;
    entities.reserve(corpus.size());

    std::vector<std::uint32_t> token_ids;
    std::vector<std::uint64_t> pairs;
    for (const auto& entity : corpus) {
        entities.push_back(EntityRef{entity.id, entity.label});

        token_ids.clear();
        for (const auto& token : entity.tokens) {
            auto [it, inserted] = ids.try_emplace(token.text, static_cast<std::uint32_t>(names.size()));
            if (inserted) {
                names.push_back(token.text);
                lists.emplace_back();
            }
            token_ids.push_back(it->second);
            auto& list = lists[it->second];
            if (list.empty() || list.back() != entity.id) {
                list.push_back(entity.id);
            }
        }

        pairs.clear();
        const auto& tokens = entity.tokens;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            for (std::size_t j = i + 1; j < tokens.size(); ++j) {
                if (tokens[j].position - tokens[i].position > config.window) {
                    break;
                }
                auto x = token_ids[i];
                auto y = token_ids[j];
                if (x == y) {
                    continue;
                }
                auto lo = std::min(x, y);
                auto hi = std::max(x, y);
                pairs.push_back((std::uint64_t{lo} << 32) | hi);
            }
        }
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        for (auto key : pairs) {
            ++pair_counts[key];
        }
    }

    IndexBundle::Postings postings;
    for (std::size_t id = 0; id < names.size(); ++id) {
        postings.emplace(names[id], std::move(lists[id]));
    }

    std::vector<Cooccurrence> cooccur;
    cooccur.reserve(pair_counts.size());
    for (auto [key, count] : pair_counts) {
        const auto& x = names[key >> 32];
        const auto& y = names[key & 0xffffffffU];
        if (x < y) {
            cooccur.push_back(Cooccurrence{x, y, count});
        } else {
            cooccur.push_back(Cooccurrence{y, x, count});
        }
    }
    std::sort(cooccur.begin(), cooccur.end(), cooccur_order);

    return IndexBundle(config, std::move(entities), std::move(postings), std::move(cooccur));
}

namespace {

std::string dump(const ordered_json& j)
{
    return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict);
}

std::ofstream open_out(const fs::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

} // namespace

void save_index(const IndexBundle& bundle, const fs::path& dir)
{
    fs::create_directories(dir);

    ordered_json manifest;
    manifest["version"] = index_format_version;
    manifest["entityCount"] = bundle.entity_count();
    manifest["window"] = bundle.config().window;
    manifest["entityLabels"] = bundle.config().entity_labels;
    manifest["logBase"] = "e";
    open_out(dir / "manifest.json") << dump(manifest) << '\n';

    {
        auto out = open_out(dir / "entities.jsonl");
        for (const auto& entity : bundle.entities()) {
            ordered_json line;
            line["dewey"] = entity.id.to_string();
            line["label"] = entity.label;
            out << dump(line) << '\n';
        }
    }
    {
        auto out = open_out(dir / "postings.jsonl");
        for (const auto& [term, list] : bundle.postings()) {
            ordered_json line;
            line["term"] = term;
            auto& ids = line["entities"] = ordered_json::array();
            for (const auto& id : list) {
                ids.push_back(id.to_string());
            }
            out << dump(line) << '\n';
        }
    }
    {
        auto out = open_out(dir / "cooccur.jsonl");
        for (const auto& t : bundle.cooccurrences()) {
            ordered_json line;
            line["a"] = t.a;
            line["b"] = t.b;
            line["count"] = t.count;
            out << dump(line) << '\n';
        }
    }
    {
        auto out = open_out(dir / "stopwords.txt");
        for (const auto& word : bundle.config().stopwords) {
            out << word << '\n';
        }
    }
}

namespace {

class LineReader {
public:
    explicit LineReader(const fs::path& path) : name_(path.filename().string()), in_(path, std::ios::binary)
    {
        if (!in_) {
            throw std::runtime_error("cannot read " + path.string());
        }
    }

    bool next(std::string& line)
    {
        if (!std::getline(in_, line)) {
            return false;
        }
        ++line_;
        return true;
    }

    [[noreturn]] void fail(const std::string& what) const { throw CorruptIndexError(name_, line_, what); }

    ordered_json parse(const std::string& line) const
    {
        try {
            auto j = ordered_json::parse(line);
            if (!j.is_object()) {
                fail("expected a JSON object");
            }
            return j;
        } catch (const nlohmann::json::exception& e) {
            fail(e.what());
        }
    }

    template <typename T>
    T get(const ordered_json& j, const char* key) const
    {
        auto it = j.find(key);
        if (it == j.end()) {
            fail(std::string("missing key '") + key + "'");
        }
        try {
            return it->template get<T>();
        } catch (const nlohmann::json::exception& e) {
            fail(std::string("bad value for '") + key + "': " + e.what());
        }
    }

    DeweyId dewey(const std::string& text) const
    {
        try {
            return DeweyId::parse(text);
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::string name_;
    std::ifstream in_;
    std::size_t line_ = 0;
};

} // namespace

IndexBundle load_index(const fs::path& dir)
{
    IndexConfig config;
    std::size_t entity_count = 0;
    {
        LineReader reader(dir / "manifest.json");
        std::string line;
        if (!reader.next(line)) {
            reader.fail("empty manifest");
        }
        auto manifest = reader.parse(line);
        auto version = reader.get<std::int64_t>(manifest, "version");
        if (version != index_format_version) {
            throw VersionMismatchError(version, index_format_version);
        }
        entity_count = reader.get<std::size_t>(manifest, "entityCount");
        config.window = reader.get<std::uint32_t>(manifest, "window");
        auto labels = reader.get<std::vector<std::string>>(manifest, "entityLabels");
        config.entity_labels = {labels.begin(), labels.end()};
        if (reader.get<std::string>(manifest, "logBase") != "e") {
            reader.fail("unsupported logBase");
        }
        try {
            config.validate();
        } catch (const std::invalid_argument& e) {
            reader.fail(e.what());
        }
    }

    if (fs::exists(dir / "stopwords.txt")) {
        config.stopwords.clear();
        LineReader reader(dir / "stopwords.txt");
        std::string line;
        while (reader.next(line)) {
            if (!config.stopwords.empty() && !(*config.stopwords.rbegin() < line)) {
                reader.fail("stop words not sorted");
            }
            config.stopwords.insert(line);
        }
    }

    std::vector<EntityRef> entities;
    {
        LineReader reader(dir / "entities.jsonl");
        std::string line;
        while (reader.next(line)) {
            auto j = reader.parse(line);
            EntityRef entity{reader.dewey(reader.get<std::string>(j, "dewey")), reader.get<std::string>(j, "label")};
            if (!entities.empty() && !(entities.back().id < entity.id)) {
                reader.fail("entities not in document order");
            }
            entities.push_back(std::move(entity));
        }
        if (entities.size() != entity_count || entities.empty()) {
            reader.fail("entity count " + std::to_string(entities.size()) + " does not match manifest entityCount " +
                        std::to_string(entity_count));
        }
    }

    IndexBundle::Postings postings;
    {
        LineReader reader(dir / "postings.jsonl");
        std::string line;
        while (reader.next(line)) {
            auto j = reader.parse(line);
            auto term = reader.get<std::string>(j, "term");
            if (!postings.empty() && !(postings.rbegin()->first < term)) {
                reader.fail("terms not in lexicographic order");
            }
            NodeList list;
            for (const auto& text : reader.get<std::vector<std::string>>(j, "entities")) {
                list.push_back(reader.dewey(text));
            }
            if (list.empty() || !is_document_ordered(list)) {
                reader.fail("posting list of '" + term + "' is empty or not strictly increasing");
            }
            postings.emplace(std::move(term), std::move(list));
        }
    }

    std::vector<Cooccurrence> cooccur;
    {
        LineReader reader(dir / "cooccur.jsonl");
        std::string line;
        while (reader.next(line)) {
            auto j = reader.parse(line);
            Cooccurrence t{reader.get<std::string>(j, "a"), reader.get<std::string>(j, "b"),
                           reader.get<std::uint32_t>(j, "count")};
            if (!(t.a < t.b) || t.count < 1) {
                reader.fail("triplet must have a < b and count >= 1");
            }
            if (!postings.contains(t.a) || !postings.contains(t.b)) {
                reader.fail("triplet term missing from postings");
            }
            if (!cooccur.empty() && !cooccur_order(cooccur.back(), t)) {
                reader.fail("triplets not sorted by count descending then (a, b)");
            }
            cooccur.push_back(std::move(t));
        }
    }

    return IndexBundle(std::move(config), std::move(entities), std::move(postings), std::move(cooccur));
}

} // namespace ctxdiv
