#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "satdmine/types.hpp"

namespace satdmine::authorship {

struct AuthorIdentity {
    std::string name;
    std::string email;

    auto operator<=>(const AuthorIdentity&) const = default;
};

struct CommitInfo {
    std::string sha;
    std::vector<std::string> parents;
    std::string author_name;
    std::string author_email;
    std::int64_t authored_timestamp = 0;
    std::string message;

    AuthorIdentity author() const { return {author_name, author_email}; }
};

enum class CommitCounting { FirstParent, FullDag };

/// In-memory commit DAG answering the ancestry questions behind the
/// authorship metrics.
class CommitGraph {
public:
    void add(CommitInfo commit);
    void set_head(std::string sha) { head_ = std::move(sha); }

    const std::string& head() const noexcept { return head_; }
    bool contains(const std::string& sha) const { return commits_.count(sha) != 0; }
    const CommitInfo& at(const std::string& sha) const;

    /// Commits by `author` among the strict ancestors of `sha`.
    std::int64_t prior_commit_count(const AuthorIdentity& author, const std::string& sha) const;

    /// First-parent steps from HEAD back to `sha`. Falls back to the DAG
    /// count (commits reachable from HEAD but not from `sha`) when `sha` is
    /// off the first-parent chain.
    std::int64_t commits_to_head(const std::string& sha, CommitCounting counting) const;

private:
    std::vector<std::string> ancestors(const std::string& sha, bool inclusive) const;

    std::unordered_map<std::string, CommitInfo> commits_;
    std::string head_;
};

class HistoryProvider {
public:
    virtual ~HistoryProvider() = default;

    /// Commits that touched lines [start, end] of `path`, newest first.
    virtual std::vector<CommitInfo> line_history(const std::string& repo_id, const std::string& path,
                                                 std::size_t start_line, std::size_t end_line) = 0;

    virtual std::int64_t prior_commit_count(const std::string& repo_id, const AuthorIdentity& author,
                                            const std::string& sha) = 0;

    virtual std::int64_t commits_to_head(const std::string& repo_id, const std::string& sha) = 0;
};

/// Test double: a commit graph per repository plus canned line-range logs.
class InMemoryHistory final : public HistoryProvider {
public:
    explicit InMemoryHistory(CommitCounting counting = CommitCounting::FirstParent) : counting_(counting) {}

    CommitGraph& repository(const std::string& repo_id) { return graphs_[repo_id]; }

    /// Registers the newest-first commit list for a line range.
    void set_line_history(const std::string& repo_id, const std::string& path, std::size_t start_line,
                          std::size_t end_line, std::vector<std::string> shas_newest_first);

    std::vector<CommitInfo> line_history(const std::string& repo_id, const std::string& path,
                                         std::size_t start_line, std::size_t end_line) override;
    std::int64_t prior_commit_count(const std::string& repo_id, const AuthorIdentity& author,
                                    const std::string& sha) override;
    std::int64_t commits_to_head(const std::string& repo_id, const std::string& sha) override;

private:
    const CommitGraph& graph(const std::string& repo_id) const;

    CommitCounting counting_;
    std::map<std::string, CommitGraph> graphs_;
    std::map<std::tuple<std::string, std::string, std::size_t, std::size_t>, std::vector<std::string>> ranges_;
};

/// Shells out to `git log -L start,end:path`. Line-range history does not
/// follow renames, so a comment whose file was renamed resolves to the
/// rename commit.
class GitHistoryProvider final : public HistoryProvider {
public:
    GitHistoryProvider(std::map<std::string, std::filesystem::path> repositories,
                       CommitCounting counting = CommitCounting::FirstParent);

    std::vector<CommitInfo> line_history(const std::string& repo_id, const std::string& path,
                                         std::size_t start_line, std::size_t end_line) override;
    std::int64_t prior_commit_count(const std::string& repo_id, const AuthorIdentity& author,
                                    const std::string& sha) override;
    std::int64_t commits_to_head(const std::string& repo_id, const std::string& sha) override;

private:
    const std::filesystem::path& root(const std::string& repo_id) const;
    const CommitGraph& graph(const std::string& repo_id);

    std::map<std::string, std::filesystem::path> repositories_;
    CommitCounting counting_;
    std::map<std::string, CommitGraph> graphs_;
};

/// Result of running a subprocess to completion.
struct ProcessResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

/// Runs argv[0] (looked up in PATH) without a shell.
ProcessResult run_process(const std::vector<std::string>& argv, const std::filesystem::path& cwd = {});

/// The oldest commit in the comment's line-range history, with the author's
/// prior commit count and the distance to HEAD. Throws ResolutionError.
IntroductionRecord resolve_introduction(const SourceComment& member, HistoryProvider& history);

/// JSONL cache of introduction records keyed by (repo, path, start, end),
/// so reruns need no repository access.
class IntroductionCache {
public:
    IntroductionCache() = default;
    explicit IntroductionCache(std::filesystem::path file);

    IntroductionRecord resolve(const SourceComment& member, HistoryProvider& history);
    void save() const;
    std::size_t size() const noexcept { return entries_.size(); }
    std::size_t hits() const noexcept { return hits_; }

private:
    using Key = std::tuple<std::string, std::string, std::size_t, std::size_t>;
    std::filesystem::path file_;
    std::map<Key, IntroductionRecord> entries_;
    std::size_t hits_ = 0;
};

/// One record per (repo_id, commit_sha); the smallest comment id wins.
std::vector<IntroductionRecord> dedupe_group(std::vector<IntroductionRecord> records);

struct GroupAuthorshipMetrics {
    std::int64_t group_id = 0;
    std::size_t group_size_after_dedupe = 0;
    double uad = 0.0;  // unique authors / size
    double mcd = 0.0;  // largest per-author count / size
    bool single_author = false;
    double median_commits_to_head = 0.0;
    double median_author_experience = 0.0;
};

/// Expects deduplicated records.
GroupAuthorshipMetrics group_metrics(std::int64_t group_id, std::span<const IntroductionRecord> records);

/// Mean and median pairwise cosine of commit-message bags of words; nullopt
/// for fewer than two records.
std::optional<std::pair<double, double>> message_similarity(std::span<const IntroductionRecord> records);

}  // namespace satdmine::authorship
