#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "satdmine/types.hpp"
#include "satdmine/vector.hpp"
#include "satdmine/vectorizer.hpp"

namespace satdmine::clustering {

/// Text normalization applied before vectorization:
///  1. separators (/ . : - _ ? = & #) inside http(s) URLs become spaces;
///  2. leading 'dnl' tokens are dropped for DNL comments;
///  3. every run of [^A-Za-z0-9] becomes one space;
///  4. whitespace is collapsed and trimmed.
/// Stop words are kept and case is preserved.
std::string normalize_comment_text(std::string_view raw, CommentSyntax syntax);

PreprocessedComment preprocess_text(const SATDComment& comment);

/// Keeps comments with at least two tokens.
std::vector<PreprocessedComment> drop_single_word(std::vector<PreprocessedComment> comments);

struct ClusteringConfig {
    double similarity_gate = 0.8;
    double eps = 0.1;
    std::size_t min_samples = 2;

    void validate() const;
};

struct SimilarityOptions {
    std::size_t jobs = 1;
    // Candidate pairs from shared non-zero coordinates. Exact for any
    // positive similarity threshold; ignored when it would not be.
    bool inverted_index = true;
};

enum class NeighborRule { SimilarityAtLeast, DistanceAtMost };

/// For every vector, the indices of all other vectors satisfying the rule
/// (cosine similarity >= threshold, or cosine distance <= threshold),
/// sorted ascending.
std::vector<std::vector<std::size_t>> neighbor_lists(std::span<const CommentVector> vectors, NeighborRule rule,
                                                     double threshold, const SimilarityOptions& options = {});

/// Keeps the vectors that have at least one partner with cosine similarity
/// >= gate. Input order is preserved.
std::vector<CommentVector> similarity_gate(std::span<const CommentVector> vectors, double gate,
                                           const SimilarityOptions& options = {});

/// Density-based clustering over cosine distance. A point is core when its
/// eps-neighbourhood (itself included) has at least min_samples points;
/// clusters grow through core points; everything else is noise. Points are
/// visited in comment-id order, so output does not depend on input order.
/// Groups come back sorted by smallest member id with ids 1..n.
std::vector<CloneGroup> cluster(std::span<const CommentVector> vectors, const ClusteringConfig& cfg,
                                const SimilarityOptions& options = {});

/// Mean silhouette coefficient over clustered points, cosine distance.
/// Throws StatsError for fewer than two groups.
double silhouette(std::span<const CommentVector> vectors, std::span<const CloneGroup> groups);

using LabelMap = std::map<std::int64_t, GroupLabel>;

/// CSV "group_id,label" with an optional header row.
LabelMap parse_labels_csv(std::string_view content);
LabelMap load_labels(const std::filesystem::path& path);

/// Throws Error if a label references an unknown group.
std::vector<CloneGroup> apply_labels(std::vector<CloneGroup> groups, const LabelMap& labels);

/// s_ci5 / (s_original - (s_ci4 - s_ci5)).
double cloning_rate(std::int64_t s_original, std::int64_t s_ci4, std::int64_t s_ci5);

using CommentLookup = std::unordered_map<std::string, SourceComment>;
using LanguageIndex = std::unordered_map<std::string, std::string>;  // repo_id -> primary language

CloneGroup classify_dimensions(CloneGroup group, const CommentLookup& members, const LanguageIndex& languages);

}  // namespace satdmine::clustering
