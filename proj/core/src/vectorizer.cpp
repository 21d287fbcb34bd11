#include "satdmine/vectorizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "satdmine/io.hpp"
#include "satdmine/text.hpp"

namespace satdmine::clustering {

std::vector<std::string> TfidfVectorizer::terms(std::string_view normalized_text) {
    const auto words = text::split_whitespace(text::to_lower_ascii(normalized_text));
    std::vector<std::string> out = words;
    for (std::size_t i = 0; i + 1 < words.size(); ++i) out.push_back(words[i] + " " + words[i + 1]);
    return out;
}

std::vector<CommentVector> TfidfVectorizer::vectorize(std::span<const PreprocessedComment> comments) const {
    std::vector<std::map<std::string, std::size_t>> tf(comments.size());
    std::map<std::string, std::size_t> df;
    for (std::size_t i = 0; i < comments.size(); ++i) {
        for (auto& t : terms(comments[i].normalized_text)) ++tf[i][t];
        for (const auto& [t, _] : tf[i]) ++df[t];
    }
    std::map<std::string, std::uint32_t> index;
    for (const auto& [t, _] : df) index.emplace(t, static_cast<std::uint32_t>(index.size()));

    const double n = static_cast<double>(comments.size());
    std::vector<CommentVector> out;
    out.reserve(comments.size());
    for (std::size_t i = 0; i < comments.size(); ++i) {
        std::map<std::uint32_t, double> weights;
        for (const auto& [t, count] : tf[i]) {
            const double idf = std::log((1.0 + n) / (1.0 + static_cast<double>(df[t]))) + 1.0;
            weights[index.at(t)] = static_cast<double>(count) * idf;
        }
        out.push_back(make_vector(comments[i].id(), weights, index.size()));
    }
    return out;
}

ExternalVectorizer::ExternalVectorizer(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw ConfigError("external vector file '" + path.string() + "' does not exist");
    }
    std::unordered_map<std::string, std::vector<double>> table;
    for (const auto& row : io::read_jsonl(path)) {
        try {
            table[row.at("comment_id").get<std::string>()] = row.at("values").get<std::vector<double>>();
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("external vector file '" + path.string() + "': " + e.what());
        }
    }
    *this = ExternalVectorizer(std::move(table));
}

ExternalVectorizer::ExternalVectorizer(std::unordered_map<std::string, std::vector<double>> table)
    : table_(std::move(table)) {
    bool first = true;
    for (const auto& [id, values] : table_) {
        if (first) {
            dimension_ = values.size();
            first = false;
        } else if (values.size() != dimension_) {
            throw ConfigError("external vectors disagree on dimension (comment '" + id + "')");
        }
    }
}

std::vector<CommentVector> ExternalVectorizer::vectorize(std::span<const PreprocessedComment> comments) const {
    std::vector<std::string> missing;
    std::vector<CommentVector> out;
    out.reserve(comments.size());
    for (const auto& c : comments) {
        const std::string id = c.id();
        auto it = table_.find(id);
        if (it == table_.end()) {
            missing.push_back(id);
            continue;
        }
        out.push_back(make_dense_vector(id, it->second));
    }
    if (!missing.empty()) {
        std::sort(missing.begin(), missing.end());
        std::string msg = "external vectors missing for " + std::to_string(missing.size()) + " comment(s):";
        for (const auto& id : missing) msg += "\n  " + id;
        throw Error(msg);
    }
    return out;
}

std::unique_ptr<VectorizerBackend> make_vectorizer(std::string_view spec) {
    if (spec == "tfidf") return std::make_unique<TfidfVectorizer>();
    constexpr std::string_view kExternal = "external:";
    if (spec.substr(0, kExternal.size()) == kExternal) {
        return std::make_unique<ExternalVectorizer>(std::filesystem::path(spec.substr(kExternal.size())));
    }
    throw ConfigError("vectorizer must be 'tfidf' or 'external:<path>', got '" + std::string(spec) + "'");
}

}  // namespace satdmine::clustering
