#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "satdmine/types.hpp"
#include "satdmine/vector.hpp"

namespace satdmine::clustering {

struct PreprocessedComment {
    SATDComment source;
    std::string normalized_text;
    std::size_t token_count = 0;

    std::string id() const { return source.comment.id(); }
};

/// Contract: deterministic; equal lowercased normalized text gives equal
/// vectors; one dimension per call; output vectors L2-normalized and in
/// input order.
class VectorizerBackend {
public:
    virtual ~VectorizerBackend() = default;
    virtual std::vector<CommentVector> vectorize(std::span<const PreprocessedComment> comments) const = 0;
    virtual std::string name() const = 0;
};

/// tf-idf over lowercased word unigrams and bigrams. The vocabulary is the
/// batch's terms in lexicographic order; idf = ln((1 + N) / (1 + df)) + 1.
class TfidfVectorizer final : public VectorizerBackend {
public:
    std::vector<CommentVector> vectorize(std::span<const PreprocessedComment> comments) const override;
    std::string name() const override { return "tfidf"; }

    static std::vector<std::string> terms(std::string_view normalized_text);
};

/// Precomputed embeddings, e.g. from a sentence encoder run offline. Rows
/// are JSONL objects {"comment_id": ..., "values": [...]}, all of one
/// dimension.
class ExternalVectorizer final : public VectorizerBackend {
public:
    explicit ExternalVectorizer(const std::filesystem::path& path);
    explicit ExternalVectorizer(std::unordered_map<std::string, std::vector<double>> table);

    std::vector<CommentVector> vectorize(std::span<const PreprocessedComment> comments) const override;
    std::string name() const override { return "external"; }

private:
    std::unordered_map<std::string, std::vector<double>> table_;
    std::size_t dimension_ = 0;
};

/// "tfidf" or "external:<path>".
std::unique_ptr<VectorizerBackend> make_vectorizer(std::string_view spec);

}  // namespace satdmine::clustering
