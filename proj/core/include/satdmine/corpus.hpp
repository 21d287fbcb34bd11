#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "satdmine/comment_extraction.hpp"
#include "satdmine/types.hpp"

namespace satdmine::corpus {

// Basename convention for one build tool. Patterns are full-match ECMAScript
// regular expressions, case-sensitive.
struct FilenameConvention {
    BuildTool tool;
    std::string pattern;
};

class ConventionSet {
public:
    explicit ConventionSet(std::vector<FilenameConvention> conventions);

    // pom.xml, maven([123])?.xml, build.xml, ivy.xml, CMakeLists.txt, *.cmake,
    // configure.ac, configure.in, Makefile.am, *.m4 (aclocal.m4 included).
    static ConventionSet defaults();

    // First matching convention wins.
    std::optional<BuildTool> classify(const std::string& basename) const;

    const std::vector<FilenameConvention>& conventions() const noexcept { return conventions_; }

private:
    std::vector<FilenameConvention> conventions_;
    std::vector<std::regex> compiled_;
};

struct ScanWarning {
    std::string repo_id;
    std::string path;
    std::string message;
};

void to_json(nlohmann::json& j, const ScanWarning& w);

/// Walks `root` (any depth, '.git' skipped) and returns one record per file
/// whose basename matches a convention, sorted by relative path. Line and
/// comment-line counts come from the comment lexers. Symlinked directories
/// that lead back to an already visited directory are skipped with a
/// warning; files the lexers reject are kept with a zero comment count and a
/// warning.
std::vector<BuildFileRecord> identify_build_files(const std::filesystem::path& root,
                                                  const std::string& repo_id,
                                                  const ConventionSet& conventions,
                                                  std::vector<ScanWarning>* warnings = nullptr,
                                                  const extraction::ExtractOptions& extract = {});

inline std::vector<BuildFileRecord> identify_build_files(const std::filesystem::path& root,
                                                         const std::string& repo_id) {
    return identify_build_files(root, repo_id, ConventionSet::defaults());
}

struct FilterConfig {
    std::int64_t min_commits = 100;
    std::int64_t min_issues = 1;
    std::int64_t max_inactive_days = 365;
    std::int64_t reference_timestamp = 0;  // UTC seconds; 0 = now
    std::int64_t min_contributors = 3;
    bool exclude_forks = true;
    std::int64_t min_build_lines = 500;
    std::int64_t min_comment_lines = 60;

    void validate() const;
};

struct ProjectEvaluation {
    std::string repo_id;
    bool c1_commits = false;
    bool c2_issues = false;
    bool c2_recent = false;
    bool c2_non_fork = false;
    bool c2_contributors = false;
    bool c3_build_lines = false;
    bool c4_comment_lines = false;
    std::int64_t build_lines = 0;
    std::int64_t comment_lines = 0;
    bool missing_build_files = false;

    bool c2() const noexcept { return c2_issues && c2_recent && c2_non_fork && c2_contributors; }
    bool retained() const noexcept { return c1_commits && c2() && c3_build_lines && c4_comment_lines; }
};

void to_json(nlohmann::json& j, const ProjectEvaluation& e);

struct FilterReport {
    std::vector<ProjectEvaluation> evaluations;  // manifest order
    std::vector<ProjectRecord> retained;
};

using BuildFileIndex = std::map<std::string, std::vector<BuildFileRecord>>;

FilterReport evaluate_projects(const std::vector<ProjectRecord>& manifest, const BuildFileIndex& build_files,
                               const FilterConfig& cfg);

/// Projects passing C1 (activity), C2 (issues, recency, non-fork,
/// contributors), C3 (build lines) and C4 (build comment lines).
std::vector<ProjectRecord> filter_projects(const std::vector<ProjectRecord>& manifest,
                                           const BuildFileIndex& build_files, const FilterConfig& cfg);

/// (threshold, number of values >= threshold) for each distinct value, in
/// ascending order.
std::vector<std::pair<std::int64_t, std::size_t>> threshold_curve(std::vector<std::int64_t> values);

/// Parses a manifest (JSON array of project records). Relative local paths
/// are resolved against `base_dir`.
std::vector<ProjectRecord> parse_manifest(const nlohmann::json& j, const std::filesystem::path& base_dir);
std::vector<ProjectRecord> load_manifest(const std::filesystem::path& path);

}  // namespace satdmine::corpus
