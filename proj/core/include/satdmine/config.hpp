#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "satdmine/authorship.hpp"
#include "satdmine/clone_clustering.hpp"
#include "satdmine/corpus.hpp"
#include "satdmine/satd_detection.hpp"

namespace satdmine::config {

enum class DfScope { Corpus, Group };

std::string_view to_string(DfScope s) noexcept;

inline const std::vector<std::string>& all_comparisons() {
    static const std::vector<std::string> names = {"context_mean", "context_median", "uad",
                                                   "mcd",          "commits_to_head", "author_experience",
                                                   "message_mean", "message_median"};
    return names;
}

struct PipelineConfig {
    std::filesystem::path manifest_path;
    std::filesystem::path output_dir = "satdmine-out";
    std::uint64_t seed = 42;
    std::size_t jobs = 1;

    corpus::FilterConfig filter;
    bool merge_adjacent = true;

    std::optional<std::filesystem::path> keywords_path;  // bundled list when unset
    detection::MatchMode match_mode = detection::MatchMode::WordBoundary;
    double confidence = 0.95;
    double interval = 0.05;

    clustering::ClusteringConfig clustering;
    std::string vectorizer = "tfidf";
    std::optional<std::filesystem::path> labels_path;
    std::optional<std::filesystem::path> baseline_labels_path;

    std::size_t context_window = 5;
    std::vector<std::size_t> sensitivity_windows = {5, 10, 15, 20};
    DfScope df_scope = DfScope::Corpus;

    bool authorship = true;
    authorship::CommitCounting counting = authorship::CommitCounting::FirstParent;

    std::vector<std::string> comparisons = all_comparisons();

    std::size_t timeline_top_k = 10;
    std::optional<std::filesystem::path> taxonomy_labels_path;
    std::optional<std::filesystem::path> taxonomy_path;

    /// Range checks plus existence of every referenced input file.
    void validate() const;

    /// Everything that influences artifacts (output_dir and jobs excluded).
    /// Paths appear as bare file names.
    nlohmann::json to_json() const;
};

/// Relative paths are resolved against `base_dir`. Unknown keys are errors.
PipelineConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);

/// TOML document as JSON. Date and time values are rejected.
nlohmann::json parse_toml(std::string_view content);

/// JSON when the extension is .json, TOML otherwise. Validates the result.
PipelineConfig load(const std::filesystem::path& path);

}  // namespace satdmine::config
