#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "satdmine/types.hpp"
#include "satdmine/vector.hpp"

namespace satdmine::context {

struct LineSpan {
    std::size_t start_line;
    std::size_t end_line;
};

struct StatementBlock {
    std::string comment_id;
    std::vector<std::string> upper_lines;
    std::vector<std::string> lower_lines;
    std::string joined_text;

    bool empty() const noexcept { return upper_lines.empty() && lower_lines.empty(); }
};

/// Up to `window` statement lines directly above and below the comment.
/// Blank lines and lines covered by any comment span are skipped.
StatementBlock extract_context(std::span<const std::string> file_lines, const SourceComment& comment,
                               std::size_t window, std::span<const LineSpan> comment_spans);

/// Punctuation replaced by spaces, then split on whitespace. Case kept.
std::vector<std::string> statement_tokens(std::string_view text);

/// Block-level document frequencies used by the >50% token filter.
class DocumentFrequency {
public:
    static DocumentFrequency from_blocks(std::span<const StatementBlock> blocks);

    void add_document(std::string_view text);
    std::size_t documents() const noexcept { return documents_; }
    std::size_t frequency(const std::string& token) const;

    // True when the token occurs in strictly more than half the documents.
    bool too_common(const std::string& token) const;

private:
    std::size_t documents_ = 0;
    std::unordered_map<std::string, std::size_t> df_;
};

/// Raw term counts over the blocks' joint vocabulary, minus tokens that are
/// too common in `reference` (the blocks themselves when null), then
/// L2-normalized. Blocks left with no tokens yield zero vectors.
std::vector<CommentVector> vectorize_statements(std::span<const StatementBlock> blocks,
                                                const DocumentFrequency* reference = nullptr);

/// Same normalization as vectorize_statements, without the frequency filter.
std::vector<CommentVector> bag_of_words(std::span<const std::pair<std::string, std::string>> documents);

struct GroupSimilarity {
    std::int64_t group_id = 0;
    std::vector<double> pair_scores;  // (i, j), i < j, over usable blocks
    double mean = 0.0;
    double median = 0.0;
};

struct GroupSimilarityResult {
    std::optional<GroupSimilarity> similarity;
    std::string skip_reason;
    std::size_t zero_vectors = 0;  // blocks excluded after filtering
};

/// Pairwise cosine over a group's non-zero statement vectors.
GroupSimilarityResult group_similarity(std::int64_t group_id, std::span<const StatementBlock> blocks,
                                       const DocumentFrequency* reference = nullptr);

/// Mean and median of all unordered-pair cosines; zero vectors score 0.
std::pair<double, double> pairwise_mean_median(std::span<const CommentVector> vectors);

}  // namespace satdmine::context
