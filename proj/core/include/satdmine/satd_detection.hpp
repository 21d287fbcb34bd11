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

namespace satdmine::detection {

enum class MatchMode { WordBoundary, Substring };

std::string_view to_string(MatchMode m) noexcept;
MatchMode parse_match_mode(std::string_view text);  // "word" | "substring"

class KeywordSet {
public:
    // Patterns are lowercased and deduplicated (first occurrence kept).
    // Throws ConfigError when no pattern remains.
    KeywordSet(std::vector<std::string> patterns, MatchMode mode = MatchMode::WordBoundary);

    const std::vector<std::string>& patterns() const noexcept { return patterns_; }
    MatchMode match_mode() const noexcept { return mode_; }

    // Patterns occurring in `text` (matched case-insensitively), in pattern order.
    std::vector<std::string> match(std::string_view text) const;

private:
    std::vector<std::string> patterns_;
    MatchMode mode_;
};

// One pattern per line; blank lines and '#' lines are ignored.
KeywordSet parse_keywords(std::string_view content, MatchMode mode = MatchMode::WordBoundary);
KeywordSet load_keywords(const std::filesystem::path& path, MatchMode mode = MatchMode::WordBoundary);

// Bundled list: the comment patterns of the keyword-based SATD detector
// plus the annotation tags todo, fixme, fix, workaround, hack, xxx, broken.
const std::vector<std::string>& default_patterns();
KeywordSet default_keywords(MatchMode mode = MatchMode::WordBoundary);

bool occurs(std::string_view haystack_lower, std::string_view pattern, MatchMode mode);

std::vector<SATDComment> detect_satd(std::span<const SourceComment> comments, const KeywordSet& kw);

/// Cochran sample size for a proportion (p = 0.5) with finite-population
/// correction, rounded to the nearest integer and clamped to [1, N].
/// `confidence` must be 0.90, 0.95 or 0.99.
std::size_t validation_sample_size(std::size_t population, double confidence, double interval);

/// Uniform sample without replacement of validation_sample_size() elements.
/// Deterministic for a given seed; result keeps population order.
std::vector<SourceComment> sample_for_validation(std::span<const SourceComment> population, double confidence,
                                                 double interval, std::uint64_t seed);

/// Number of clone groups in which each keyword matches at least one member.
/// Keywords with a zero count are omitted.
std::map<std::string, std::size_t> keyword_distribution(
    std::span<const CloneGroup> groups, const std::unordered_map<std::string, SATDComment>& satd_by_id);

/// Non-SATD baseline: for every SATD comment, the nearest non-SATD comment
/// above and below it in the same file. Each comment appears at most once;
/// output follows input order.
std::vector<SourceComment> select_adjacent_non_satd(std::span<const SourceComment> comments,
                                                    const KeywordSet& kw);

}  // namespace satdmine::detection
