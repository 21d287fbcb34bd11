#include "satdmine/corpus.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "satdmine/io.hpp"
#include "satdmine/text.hpp"

namespace satdmine::corpus {

namespace fs = std::filesystem;

ConventionSet::ConventionSet(std::vector<FilenameConvention> conventions)
    : conventions_(std::move(conventions)) {
    compiled_.reserve(conventions_.size());
    for (const auto& c : conventions_) {
        try {
            compiled_.emplace_back(c.pattern, std::regex::ECMAScript);
        } catch (const std::regex_error& e) {
            throw ConfigError("invalid filename convention '" + c.pattern + "': " + e.what());
        }
    }
}

ConventionSet ConventionSet::defaults() {
    return ConventionSet({
        {BuildTool::Maven, R"(pom\.xml)"},
        {BuildTool::Maven, R"(maven([123])?\.xml)"},
        {BuildTool::Ant, R"(build\.xml)"},
        {BuildTool::Ivy, R"(ivy\.xml)"},
        {BuildTool::Cmake, R"(CMakeLists\.txt)"},
        {BuildTool::Cmake, R"(.*\.cmake)"},
        {BuildTool::Autotools, R"(configure\.ac)"},
        {BuildTool::Autotools, R"(configure\.in)"},
        {BuildTool::Autotools, R"(Makefile\.am)"},
        {BuildTool::Autotools, R"(.*\.m4)"},
    });
}

std::optional<BuildTool> ConventionSet::classify(const std::string& basename) const {
    for (std::size_t i = 0; i < compiled_.size(); ++i) {
        if (std::regex_match(basename, compiled_[i])) return conventions_[i].tool;
    }
    return std::nullopt;
}

void to_json(nlohmann::json& j, const ScanWarning& w) {
    j = nlohmann::json{{"repo_id", w.repo_id}, {"path", w.path}, {"message", w.message}};
}

namespace {

void walk(const fs::path& root, const fs::path& dir, const std::string& repo_id,
          const ConventionSet& conventions, std::set<fs::path>& visited,
          std::vector<std::pair<std::string, BuildTool>>& found, std::vector<ScanWarning>* warnings) {
    std::error_code ec;
    fs::directory_iterator it(dir, ec);
    if (ec) throw IoError("cannot read directory '" + dir.string() + "': " + ec.message());

    std::vector<fs::directory_entry> entries;
    for (; it != fs::directory_iterator(); it.increment(ec)) {
        if (ec) throw IoError("cannot read directory '" + dir.string() + "': " + ec.message());
        entries.push_back(*it);
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.path().filename() < b.path().filename(); });

    for (const auto& entry : entries) {
        const fs::path& p = entry.path();
        const std::string name = p.filename().string();
        std::error_code sec;
        if (entry.is_directory(sec)) {
            if (name == ".git") continue;
            const fs::path canonical = fs::canonical(p, sec);
            if (sec) {
                if (warnings) warnings->push_back({repo_id, fs::relative(p, root).generic_string(),
                                                   "unresolvable directory: " + sec.message()});
                continue;
            }
            if (!visited.insert(canonical).second) {
                if (warnings) warnings->push_back({repo_id, fs::relative(p, root).generic_string(),
                                                   "symlink cycle skipped"});
                continue;
            }
            walk(root, p, repo_id, conventions, visited, found, warnings);
        } else if (entry.is_regular_file(sec)) {
            if (auto tool = conventions.classify(name)) {
                found.emplace_back(fs::relative(p, root).generic_string(), *tool);
            }
        }
    }
}

}  // namespace

std::vector<BuildFileRecord> identify_build_files(const fs::path& root, const std::string& repo_id,
                                                  const ConventionSet& conventions,
                                                  std::vector<ScanWarning>* warnings,
                                                  const extraction::ExtractOptions& extract) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) {
        throw IoError("repository root '" + root.string() + "' is not a readable directory");
    }
    std::set<fs::path> visited{fs::canonical(root, ec)};
    std::vector<std::pair<std::string, BuildTool>> found;
    walk(root, root, repo_id, conventions, visited, found, warnings);
    std::sort(found.begin(), found.end());

    std::vector<BuildFileRecord> records;
    records.reserve(found.size());
    for (const auto& [rel, tool] : found) {
        BuildFileRecord rec;
        rec.repo_id = repo_id;
        rec.relative_path = rel;
        rec.build_tool = tool;
        const std::string contents = io::read_file(root / rel);
        rec.line_count = text::split_lines(text::sanitize_utf8(contents)).size();
        try {
            const auto comments = extraction::extract_comments(rec, contents, extract);
            rec.comment_line_count = extraction::comment_line_count(comments);
        } catch (const ExtractionError& e) {
            if (warnings) warnings->push_back({repo_id, rel, e.what()});
        }
        records.push_back(std::move(rec));
    }
    return records;
}

void FilterConfig::validate() const {
    if (min_commits <= 0 || min_issues <= 0 || max_inactive_days <= 0 || min_contributors <= 0 ||
        min_build_lines <= 0 || min_comment_lines <= 0) {
        throw ConfigError("filter thresholds must be positive");
    }
    if (reference_timestamp < 0) throw ConfigError("filter reference_timestamp must be >= 0");
}

void to_json(nlohmann::json& j, const ProjectEvaluation& e) {
    j = nlohmann::json{{"repo_id", e.repo_id},
                       {"retained", e.retained()},
                       {"c1_commits", e.c1_commits},
                       {"c2", e.c2()},
                       {"c2_issues", e.c2_issues},
                       {"c2_recent", e.c2_recent},
                       {"c2_non_fork", e.c2_non_fork},
                       {"c2_contributors", e.c2_contributors},
                       {"c3_build_lines", e.c3_build_lines},
                       {"c4_comment_lines", e.c4_comment_lines},
                       {"build_lines", e.build_lines},
                       {"comment_lines", e.comment_lines},
                       {"missing_build_files", e.missing_build_files}};
}

FilterReport evaluate_projects(const std::vector<ProjectRecord>& manifest, const BuildFileIndex& build_files,
                               const FilterConfig& cfg) {
    cfg.validate();
    std::int64_t reference = cfg.reference_timestamp;
    if (reference == 0) {
        reference = std::chrono::duration_cast<std::chrono::seconds>(
                        std::chrono::system_clock::now().time_since_epoch())
                        .count();
    }
    const std::int64_t window = cfg.max_inactive_days * 86400;

    FilterReport report;
    for (const auto& p : manifest) {
        ProjectEvaluation e;
        e.repo_id = p.repo_id;
        e.c1_commits = p.commit_count >= cfg.min_commits;
        e.c2_issues = p.issue_count >= cfg.min_issues;
        e.c2_recent = reference - p.last_commit_timestamp <= window;
        e.c2_non_fork = !(cfg.exclude_forks && p.is_fork);
        e.c2_contributors = p.contributor_count >= cfg.min_contributors;
        if (auto it = build_files.find(p.repo_id); it != build_files.end()) {
            for (const auto& f : it->second) {
                e.build_lines += static_cast<std::int64_t>(f.line_count);
                e.comment_lines += static_cast<std::int64_t>(f.comment_line_count);
            }
        } else {
            e.missing_build_files = true;
        }
        e.c3_build_lines = e.build_lines >= cfg.min_build_lines;
        e.c4_comment_lines = e.comment_lines >= cfg.min_comment_lines;
        if (e.retained()) report.retained.push_back(p);
        report.evaluations.push_back(std::move(e));
    }
    return report;
}

std::vector<ProjectRecord> filter_projects(const std::vector<ProjectRecord>& manifest,
                                           const BuildFileIndex& build_files, const FilterConfig& cfg) {
    return evaluate_projects(manifest, build_files, cfg).retained;
}

std::vector<std::pair<std::int64_t, std::size_t>> threshold_curve(std::vector<std::int64_t> values) {
    std::sort(values.begin(), values.end());
    std::vector<std::pair<std::int64_t, std::size_t>> curve;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i == 0 || values[i] != values[i - 1]) curve.emplace_back(values[i], values.size() - i);
    }
    return curve;
}

std::vector<ProjectRecord> parse_manifest(const nlohmann::json& j, const fs::path& base_dir) {
    if (!j.is_array()) throw ConfigError("manifest must be a JSON array of project records");
    std::vector<ProjectRecord> projects;
    std::set<std::string> seen;
    for (const auto& row : j) {
        ProjectRecord p;
        try {
            p = row.get<ProjectRecord>();
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("invalid manifest record: ") + e.what());
        }
        if (p.repo_id.empty()) throw ConfigError("manifest record with empty repo_id");
        if (!seen.insert(p.repo_id).second) throw ConfigError("duplicate repo_id '" + p.repo_id + "' in manifest");
        if (p.commit_count < 0 || p.issue_count < 0 || p.contributor_count < 0 || p.stars < 0 ||
            p.last_commit_timestamp < 0) {
            throw ConfigError("negative count in manifest record '" + p.repo_id + "'");
        }
        if (!p.local_path.empty() && p.local_path.is_relative()) p.local_path = base_dir / p.local_path;
        projects.push_back(std::move(p));
    }
    return projects;
}

std::vector<ProjectRecord> load_manifest(const fs::path& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(io::read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("manifest '" + path.string() + "': " + e.what());
    }
    return parse_manifest(j, path.parent_path());
}

}  // namespace satdmine::corpus
