#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace satdmine {

// Error hierarchy. Every failure surfaced by the library derives from Error
// so callers (the CLI in particular) can map it to a nonzero exit status.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class ExtractionError : public Error {
public:
    ExtractionError(std::string file, std::size_t line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what),
          file_(std::move(file)), line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

class ResolutionError : public Error {
public:
    using Error::Error;
};

class StatsError : public Error {
public:
    using Error::Error;
};

enum class BuildTool { Autotools, Cmake, Maven, Ant, Ivy };

inline constexpr BuildTool kAllBuildTools[] = {
    BuildTool::Autotools, BuildTool::Cmake, BuildTool::Maven,
    BuildTool::Ant, BuildTool::Ivy};

std::string_view to_string(BuildTool tool) noexcept;
BuildTool parse_build_tool(std::string_view text);

// Human-facing column name ("Autotools", "CMake", ...).
std::string_view display_name(BuildTool tool) noexcept;

enum class CommentSyntax { Hash, Dnl, XmlBlock };

std::string_view to_string(CommentSyntax syntax) noexcept;
CommentSyntax parse_comment_syntax(std::string_view text);

struct ProjectRecord {
    std::string repo_id;
    std::string primary_language;
    std::int64_t commit_count = 0;
    std::int64_t issue_count = 0;
    std::int64_t contributor_count = 0;
    std::int64_t last_commit_timestamp = 0;
    bool is_fork = false;
    std::int64_t stars = 0;
    std::filesystem::path local_path;
};

struct BuildFileRecord {
    std::string repo_id;
    std::string relative_path;  // generic ('/') form
    BuildTool build_tool = BuildTool::Cmake;
    std::size_t line_count = 0;
    std::size_t comment_line_count = 0;
};

struct SourceComment {
    std::string repo_id;
    std::string relative_path;
    BuildTool build_tool = BuildTool::Cmake;
    std::size_t start_line = 1;
    std::size_t end_line = 1;
    std::string raw_text;
    CommentSyntax syntax = CommentSyntax::Hash;

    // "<repo_id>:<relative_path>:<start_line>:<syntax>"; unique per corpus.
    std::string id() const;
};

struct SATDComment {
    SourceComment comment;
    std::vector<std::string> matched_keywords;  // in keyword-file order
};

enum class RepoDimension { Internal, External };
enum class ToolDimension { SameTool, CrossTool };
enum class LanguageDimension { SameLanguage, CrossLanguage };
enum class GroupLabel { Unlabeled, Satd, FalsePositive };

std::string_view to_string(RepoDimension d) noexcept;
std::string_view to_string(ToolDimension d) noexcept;
std::string_view to_string(LanguageDimension d) noexcept;
std::string_view to_string(GroupLabel l) noexcept;
GroupLabel parse_group_label(std::string_view text);

struct CloneGroup {
    std::int64_t group_id = 0;
    std::vector<std::string> member_ids;  // sorted ascending, size >= 2
    std::optional<RepoDimension> repo_dimension;
    std::optional<ToolDimension> tool_dimension;
    std::optional<LanguageDimension> language_dimension;
    GroupLabel label = GroupLabel::Unlabeled;

    // Unlabeled groups count as SATD downstream; only explicit false
    // positives are excluded.
    bool counts_downstream() const noexcept { return label != GroupLabel::FalsePositive; }
};

struct IntroductionRecord {
    std::string comment_id;
    std::string repo_id;
    std::string commit_sha;
    std::string author_name;
    std::string author_email;
    std::int64_t authored_timestamp = 0;
    std::string commit_message;
    std::int64_t author_prior_commit_count = 0;
    std::int64_t commits_to_head = 0;
};

// JSON mapping; field names are the snake_case names used in every
// artifact written by the pipeline.
void to_json(nlohmann::json& j, const ProjectRecord& p);
void from_json(const nlohmann::json& j, ProjectRecord& p);
void to_json(nlohmann::json& j, const BuildFileRecord& b);
void from_json(const nlohmann::json& j, BuildFileRecord& b);
void to_json(nlohmann::json& j, const SourceComment& c);
void from_json(const nlohmann::json& j, SourceComment& c);
void to_json(nlohmann::json& j, const SATDComment& c);
void to_json(nlohmann::json& j, const CloneGroup& g);
void to_json(nlohmann::json& j, const IntroductionRecord& r);
void from_json(const nlohmann::json& j, IntroductionRecord& r);

}  // namespace satdmine
