#include "satdmine/context_similarity.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "satdmine/stats.hpp"
#include "satdmine/text.hpp"

namespace satdmine::context {
namespace {

bool excluded(std::size_t line, std::span<const LineSpan> spans) {
    for (const auto& s : spans) {
        if (line >= s.start_line && line <= s.end_line) return true;
    }
    return false;
}

}  // namespace

StatementBlock extract_context(std::span<const std::string> file_lines, const SourceComment& comment,
                               std::size_t window, std::span<const LineSpan> comment_spans) {
    if (window == 0) throw Error("context window must be >= 1");
    StatementBlock block;
    block.comment_id = comment.id();

    auto usable = [&](std::size_t line_no) {
        return !text::trim(file_lines[line_no - 1]).empty() && !excluded(line_no, comment_spans);
    };

    for (std::size_t l = comment.start_line; l > 1 && block.upper_lines.size() < window;) {
        --l;
        if (l > file_lines.size()) continue;
        if (usable(l)) block.upper_lines.push_back(file_lines[l - 1]);
    }
    std::reverse(block.upper_lines.begin(), block.upper_lines.end());
    for (std::size_t l = comment.end_line + 1; l <= file_lines.size() && block.lower_lines.size() < window; ++l) {
        if (usable(l)) block.lower_lines.push_back(file_lines[l - 1]);
    }

    for (const auto* part : {&block.upper_lines, &block.lower_lines}) {
        for (const auto& line : *part) {
            if (!block.joined_text.empty()) block.joined_text += '\n';
            block.joined_text += line;
        }
    }
    return block;
}

std::vector<std::string> statement_tokens(std::string_view s) {
    return text::split_whitespace(text::strip_statement_punctuation(s));
}

DocumentFrequency DocumentFrequency::from_blocks(std::span<const StatementBlock> blocks) {
    DocumentFrequency df;
    for (const auto& b : blocks) df.add_document(b.joined_text);
    return df;
}

void DocumentFrequency::add_document(std::string_view text) {
    ++documents_;
    const auto tokens = statement_tokens(text);
    const std::set<std::string> unique(tokens.begin(), tokens.end());
    for (const auto& t : unique) ++df_[t];
}

std::size_t DocumentFrequency::frequency(const std::string& token) const {
    auto it = df_.find(token);
    return it == df_.end() ? 0 : it->second;
}

bool DocumentFrequency::too_common(const std::string& token) const {
    // df > 0.5 * N, in integers.
    return 2 * frequency(token) > documents_;
}

namespace {

std::vector<CommentVector> count_vectors(std::span<const std::pair<std::string, std::string>> documents,
                                         const DocumentFrequency* filter) {
    std::vector<std::map<std::string, std::size_t>> counts(documents.size());
    std::set<std::string> vocabulary;
    for (std::size_t i = 0; i < documents.size(); ++i) {
        for (auto& t : statement_tokens(documents[i].second)) {
            if (filter && filter->too_common(t)) continue;
            vocabulary.insert(t);
            ++counts[i][t];
        }
    }
    std::map<std::string, std::uint32_t> index;
    for (const auto& t : vocabulary) index.emplace(t, static_cast<std::uint32_t>(index.size()));

    std::vector<CommentVector> out;
    out.reserve(documents.size());
    for (std::size_t i = 0; i < documents.size(); ++i) {
        std::map<std::uint32_t, double> weights;
        for (const auto& [t, c] : counts[i]) weights[index.at(t)] = static_cast<double>(c);
        out.push_back(make_vector(documents[i].first, weights, index.size()));
    }
    return out;
}

}  // namespace

std::vector<CommentVector> vectorize_statements(std::span<const StatementBlock> blocks,
                                                const DocumentFrequency* reference) {
    DocumentFrequency local;
    if (!reference) {
        local = DocumentFrequency::from_blocks(blocks);
        reference = &local;
    }
    std::vector<std::pair<std::string, std::string>> docs;
    docs.reserve(blocks.size());
    for (const auto& b : blocks) docs.emplace_back(b.comment_id, b.joined_text);
    return count_vectors(docs, reference);
}

std::vector<CommentVector> bag_of_words(std::span<const std::pair<std::string, std::string>> documents) {
    return count_vectors(documents, nullptr);
}

GroupSimilarityResult group_similarity(std::int64_t group_id, std::span<const StatementBlock> blocks,
                                       const DocumentFrequency* reference) {
    GroupSimilarityResult result;
    const auto vectors = vectorize_statements(blocks, reference);
    std::vector<const CommentVector*> usable;
    for (const auto& v : vectors) {
        if (v.is_zero()) {
            ++result.zero_vectors;
        } else {
            usable.push_back(&v);
        }
    }
    if (usable.size() < 2) {
        result.skip_reason = "fewer than 2 non-empty statement blocks (" + std::to_string(usable.size()) + " of " +
                             std::to_string(blocks.size()) + ")";
        return result;
    }
    GroupSimilarity g;
    g.group_id = group_id;
    for (std::size_t i = 0; i < usable.size(); ++i) {
        for (std::size_t j = i + 1; j < usable.size(); ++j) {
            g.pair_scores.push_back(std::clamp(cosine_similarity(*usable[i], *usable[j]), 0.0, 1.0));
        }
    }
    g.mean = stats::mean(g.pair_scores);
    g.median = stats::median(g.pair_scores);
    result.similarity = std::move(g);
    return result;
}

std::pair<double, double> pairwise_mean_median(std::span<const CommentVector> vectors) {
    std::vector<double> scores;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = i + 1; j < vectors.size(); ++j) scores.push_back(cosine_similarity(vectors[i], vectors[j]));
    }
    if (scores.empty()) return {0.0, 0.0};
    return {stats::mean(scores), stats::median(scores)};
}

}  // namespace satdmine::context
