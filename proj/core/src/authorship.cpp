#include "satdmine/authorship.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <unordered_set>

#include "satdmine/context_similarity.hpp"
#include "satdmine/io.hpp"
#include "satdmine/stats.hpp"

namespace satdmine::authorship {

void CommitGraph::add(CommitInfo commit) {
    std::string sha = commit.sha;
    commits_.insert_or_assign(std::move(sha), std::move(commit));
}

const CommitInfo& CommitGraph::at(const std::string& sha) const {
    auto it = commits_.find(sha);
    if (it == commits_.end()) throw ResolutionError("unknown commit " + sha);
    return it->second;
}

std::vector<std::string> CommitGraph::ancestors(const std::string& sha, bool inclusive) const {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen{sha};
    std::deque<std::string> queue{sha};
    if (inclusive) out.push_back(sha);
    while (!queue.empty()) {
        const std::string cur = std::move(queue.front());
        queue.pop_front();
        auto it = commits_.find(cur);
        if (it == commits_.end()) continue;
        for (const auto& p : it->second.parents) {
            if (seen.insert(p).second) {
                out.push_back(p);
                queue.push_back(p);
            }
        }
    }
    return out;
}

std::int64_t CommitGraph::prior_commit_count(const AuthorIdentity& author, const std::string& sha) const {
    at(sha);
    std::int64_t n = 0;
    for (const auto& a : ancestors(sha, false)) {
        auto it = commits_.find(a);
        if (it != commits_.end() && it->second.author() == author) ++n;
    }
    return n;
}

std::int64_t CommitGraph::commits_to_head(const std::string& sha, CommitCounting counting) const {
    if (head_.empty()) throw ResolutionError("commit graph has no HEAD");
    at(sha);
    if (counting == CommitCounting::FirstParent) {
        std::int64_t steps = 0;
        std::string cur = head_;
        while (true) {
            if (cur == sha) return steps;
            auto it = commits_.find(cur);
            if (it == commits_.end() || it->second.parents.empty()) break;
            cur = it->second.parents.front();
            ++steps;
        }
    }
    const auto base = ancestors(sha, true);
    const std::unordered_set<std::string> excluded(base.begin(), base.end());
    std::int64_t n = 0;
    for (const auto& a : ancestors(head_, true)) {
        if (!excluded.count(a)) ++n;
    }
    return n;
}

void InMemoryHistory::set_line_history(const std::string& repo_id, const std::string& path,
                                       std::size_t start_line, std::size_t end_line,
                                       std::vector<std::string> shas_newest_first) {
    ranges_[{repo_id, path, start_line, end_line}] = std::move(shas_newest_first);
}

const CommitGraph& InMemoryHistory::graph(const std::string& repo_id) const {
    auto it = graphs_.find(repo_id);
    if (it == graphs_.end()) throw ResolutionError("no history for repository " + repo_id);
    return it->second;
}

std::vector<CommitInfo> InMemoryHistory::line_history(const std::string& repo_id, const std::string& path,
                                                      std::size_t start_line, std::size_t end_line) {
    auto it = ranges_.find({repo_id, path, start_line, end_line});
    if (it == ranges_.end()) return {};
    const auto& g = graph(repo_id);
    std::vector<CommitInfo> out;
    for (const auto& sha : it->second) out.push_back(g.at(sha));
    return out;
}

std::int64_t InMemoryHistory::prior_commit_count(const std::string& repo_id, const AuthorIdentity& author,
                                                 const std::string& sha) {
    return graph(repo_id).prior_commit_count(author, sha);
}

std::int64_t InMemoryHistory::commits_to_head(const std::string& repo_id, const std::string& sha) {
    return graph(repo_id).commits_to_head(sha, counting_);
}

IntroductionRecord resolve_introduction(const SourceComment& member, HistoryProvider& history) {
    const auto log = history.line_history(member.repo_id, member.relative_path, member.start_line, member.end_line);
    if (log.empty()) {
        throw ResolutionError("no history for " + member.id() + " (lines " + std::to_string(member.start_line) + "-" +
                              std::to_string(member.end_line) + ")");
    }
    const CommitInfo& intro = log.back();
    IntroductionRecord r;
    r.comment_id = member.id();
    r.repo_id = member.repo_id;
    r.commit_sha = intro.sha;
    r.author_name = intro.author_name;
    r.author_email = intro.author_email;
    r.authored_timestamp = intro.authored_timestamp;
    r.commit_message = intro.message;
    r.author_prior_commit_count = history.prior_commit_count(member.repo_id, intro.author(), intro.sha);
    r.commits_to_head = history.commits_to_head(member.repo_id, intro.sha);
    return r;
}

IntroductionCache::IntroductionCache(std::filesystem::path file) : file_(std::move(file)) {
    if (!std::filesystem::exists(file_)) return;
    for (const auto& row : io::read_jsonl(file_)) {
        Key key{row.at("repo_id").get<std::string>(), row.at("relative_path").get<std::string>(),
                row.at("start_line").get<std::size_t>(), row.at("end_line").get<std::size_t>()};
        entries_.insert_or_assign(std::move(key), row.at("record").get<IntroductionRecord>());
    }
}

IntroductionRecord IntroductionCache::resolve(const SourceComment& member, HistoryProvider& history) {
    Key key{member.repo_id, member.relative_path, member.start_line, member.end_line};
    if (auto it = entries_.find(key); it != entries_.end()) {
        ++hits_;
        IntroductionRecord r = it->second;
        r.comment_id = member.id();
        return r;
    }
    IntroductionRecord r = resolve_introduction(member, history);
    entries_.emplace(std::move(key), r);
    return r;
}

void IntroductionCache::save() const {
    if (file_.empty()) return;
    std::string out;
    for (const auto& [key, record] : entries_) {
        nlohmann::json row;
        row["repo_id"] = std::get<0>(key);
        row["relative_path"] = std::get<1>(key);
        row["start_line"] = std::get<2>(key);
        row["end_line"] = std::get<3>(key);
        row["record"] = record;
        out += row.dump();
        out += '\n';
    }
    io::write_file(file_, out);
}

std::vector<IntroductionRecord> dedupe_group(std::vector<IntroductionRecord> records) {
    std::sort(records.begin(), records.end(),
              [](const IntroductionRecord& a, const IntroductionRecord& b) { return a.comment_id < b.comment_id; });
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<IntroductionRecord> out;
    for (auto& r : records) {
        if (seen.emplace(r.repo_id, r.commit_sha).second) out.push_back(std::move(r));
    }
    return out;
}

GroupAuthorshipMetrics group_metrics(std::int64_t group_id, std::span<const IntroductionRecord> records) {
    if (records.empty()) throw StatsError("authorship metrics need at least one record");
    GroupAuthorshipMetrics m;
    m.group_id = group_id;
    m.group_size_after_dedupe = records.size();
    std::map<AuthorIdentity, std::size_t> per_author;
    std::vector<double> to_head;
    std::vector<double> experience;
    for (const auto& r : records) {
        ++per_author[{r.author_name, r.author_email}];
        to_head.push_back(static_cast<double>(r.commits_to_head));
        experience.push_back(static_cast<double>(r.author_prior_commit_count));
    }
    std::size_t largest = 0;
    for (const auto& [author, count] : per_author) largest = std::max(largest, count);
    const auto n = static_cast<double>(records.size());
    m.uad = static_cast<double>(per_author.size()) / n;
    m.mcd = static_cast<double>(largest) / n;
    m.single_author = per_author.size() == 1;
    m.median_commits_to_head = stats::median(to_head);
    m.median_author_experience = stats::median(experience);
    return m;
}

std::optional<std::pair<double, double>> message_similarity(std::span<const IntroductionRecord> records) {
    if (records.size() < 2) return std::nullopt;
    std::vector<std::pair<std::string, std::string>> docs;
    docs.reserve(records.size());
    for (const auto& r : records) docs.emplace_back(r.comment_id, r.commit_message);
    const auto vectors = context::bag_of_words(docs);
    return context::pairwise_mean_median(vectors);
}

}  // namespace satdmine::authorship
