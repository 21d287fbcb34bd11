#include "satdmine/report.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "satdmine/clone_clustering.hpp"
#include "satdmine/io.hpp"

namespace satdmine::report {

std::int64_t StageCounts::sum() const {
    std::int64_t s = 0;
    for (const auto& [tool, n] : per_tool) s += n;
    return s;
}

StageCounts count_stage(std::string stage, std::span<const SourceComment> comments) {
    StageCounts c;
    c.stage = std::move(stage);
    for (auto t : kAllBuildTools) c.per_tool[t] = 0;
    std::set<std::string> repos;
    for (const auto& m : comments) {
        ++c.per_tool[m.build_tool];
        repos.insert(m.repo_id);
    }
    c.repos = static_cast<std::int64_t>(repos.size());
    return c;
}

std::optional<long> rate_percent(std::int64_t s_original, std::int64_t s_ci4, std::int64_t s_ci5) {
    if (s_original - (s_ci4 - s_ci5) <= 0) return std::nullopt;
    // round half away from zero on the exact fraction
    const std::int64_t den = s_original - (s_ci4 - s_ci5);
    return static_cast<long>((200 * s_ci5 + den) / (2 * den));
}

namespace {

std::vector<std::string> header_row() {
    std::vector<std::string> h{"population", "stage"};
    for (auto t : kAllBuildTools) h.emplace_back(display_name(t));
    h.emplace_back("Sum");
    h.emplace_back("#repo");
    return h;
}

void add_block(io::CsvWriter& w, const std::string& population, std::span<const StageCounts> rows,
               const StageCounts* original, const StageCounts* ci4, const StageCounts* ci5) {
    for (const auto& r : rows) {
        std::vector<std::string> cells{population, r.stage};
        for (auto t : kAllBuildTools) cells.push_back(std::to_string(r.per_tool.at(t)));
        cells.push_back(std::to_string(r.sum()));
        cells.push_back(std::to_string(r.repos));
        w.add_row(cells);
    }
    if (!original || !ci4 || !ci5) return;
    std::vector<std::string> cells{population, "cloning rate"};
    for (auto t : kAllBuildTools) {
        const auto p = rate_percent(original->per_tool.at(t), ci4->per_tool.at(t), ci5->per_tool.at(t));
        cells.push_back(p && ci4->per_tool.at(t) > 0 ? std::to_string(*p) + "%" : "-");
    }
    cells.emplace_back("-");
    cells.emplace_back("-");
    w.add_row(cells);
}

const StageCounts* find_stage(std::span<const StageCounts> rows, const std::string& name) {
    for (const auto& r : rows) {
        if (r.stage == name) return &r;
    }
    return nullptr;
}

}  // namespace

std::string table1_csv(std::span<const StageCounts> satd_rows, std::span<const StageCounts> baseline_rows) {
    io::CsvWriter w(header_row());
    add_block(w, "SATD", satd_rows, find_stage(satd_rows, "raw"), find_stage(satd_rows, "CI4"),
              find_stage(satd_rows, "CI5"));
    add_block(w, "non-SATD", baseline_rows, find_stage(baseline_rows, "sample"), find_stage(baseline_rows, "CI4"),
              find_stage(baseline_rows, "CI5"));
    return w.str();
}

namespace {

DimensionRow summarize(const std::string& population, std::string dimension, std::span<const CloneGroup* const> groups,
                       std::size_t all_groups, std::size_t all_comments) {
    DimensionRow r;
    r.population = population;
    r.dimension = std::move(dimension);
    std::vector<double> sizes;
    for (const auto* g : groups) {
        sizes.push_back(static_cast<double>(g->member_ids.size()));
        r.comments += g->member_ids.size();
        r.max_size = std::max(r.max_size, g->member_ids.size());
    }
    r.groups = groups.size();
    if (all_groups > 0) r.group_share = static_cast<double>(r.groups) / static_cast<double>(all_groups);
    if (all_comments > 0) r.comment_share = static_cast<double>(r.comments) / static_cast<double>(all_comments);
    if (!sizes.empty()) {
        r.mean_size = stats::mean(sizes);
        r.median_size = stats::median(sizes);
    }
    return r;
}

}  // namespace

std::vector<DimensionRow> dimension_rows(const std::string& population, std::span<const CloneGroup> groups) {
    std::vector<const CloneGroup*> kept;
    std::size_t comments = 0;
    for (const auto& g : groups) {
        if (!g.counts_downstream()) continue;
        kept.push_back(&g);
        comments += g.member_ids.size();
    }
    struct Split {
        std::string name;
        bool (*pred)(const CloneGroup&);
    };
    const Split splits[] = {
        {"INTERNAL", [](const CloneGroup& g) { return g.repo_dimension == RepoDimension::Internal; }},
        {"EXTERNAL", [](const CloneGroup& g) { return g.repo_dimension == RepoDimension::External; }},
        {"SAME_LANGUAGE", [](const CloneGroup& g) { return g.language_dimension == LanguageDimension::SameLanguage; }},
        {"CROSS_LANGUAGE",
         [](const CloneGroup& g) { return g.language_dimension == LanguageDimension::CrossLanguage; }},
        {"SAME_TOOL", [](const CloneGroup& g) { return g.tool_dimension == ToolDimension::SameTool; }},
        {"CROSS_TOOL", [](const CloneGroup& g) { return g.tool_dimension == ToolDimension::CrossTool; }},
    };
    std::vector<DimensionRow> out;
    for (const auto& s : splits) {
        std::vector<const CloneGroup*> sel;
        for (const auto* g : kept) {
            if (s.pred(*g)) sel.push_back(g);
        }
        out.push_back(summarize(population, s.name, sel, kept.size(), comments));
    }
    return out;
}

std::vector<DimensionRow> same_tool_rows(const std::string& population, std::span<const CloneGroup> groups,
                                         const std::unordered_map<std::string, SourceComment>& comments) {
    std::map<BuildTool, std::vector<const CloneGroup*>> by_tool;
    std::size_t total_groups = 0;
    std::size_t total_comments = 0;
    for (const auto& g : groups) {
        if (!g.counts_downstream() || g.tool_dimension != ToolDimension::SameTool) continue;
        by_tool[comments.at(g.member_ids.front()).build_tool].push_back(&g);
        ++total_groups;
        total_comments += g.member_ids.size();
    }
    std::vector<DimensionRow> out;
    for (auto t : kAllBuildTools) {
        out.push_back(summarize(population, std::string(display_name(t)), by_tool[t], total_groups, total_comments));
    }
    return out;
}

std::string dimension_csv(std::span<const DimensionRow> rows) {
    io::CsvWriter w({"population", "dimension", "groups", "group_share", "comments", "comment_share", "mean_size",
                     "median_size", "max_size"});
    for (const auto& r : rows) {
        w.add_row({r.population, r.dimension, std::to_string(r.groups), io::format_fixed(r.group_share),
                   std::to_string(r.comments), io::format_fixed(r.comment_share), io::format_fixed(r.mean_size),
                   io::format_fixed(r.median_size), std::to_string(r.max_size)});
    }
    return w.str();
}

std::vector<TimelineRow> emit_timeline(const CloneGroup& group, std::span<const IntroductionRecord> records,
                                       const std::unordered_map<std::string, std::int64_t>& stars,
                                       const std::unordered_map<std::string, SourceComment>& comments) {
    std::vector<TimelineRow> rows;
    for (const auto& r : records) {
        TimelineRow t;
        t.group_id = group.group_id;
        t.timestamp = r.authored_timestamp;
        t.repo_id = r.repo_id;
        if (auto it = stars.find(r.repo_id); it != stars.end()) t.stars = it->second;
        if (auto it = comments.find(r.comment_id); it != comments.end()) t.build_tool = it->second.build_tool;
        t.comment_id = r.comment_id;
        rows.push_back(std::move(t));
    }
    std::sort(rows.begin(), rows.end(), [](const TimelineRow& a, const TimelineRow& b) {
        return std::tie(a.timestamp, a.repo_id, a.comment_id) < std::tie(b.timestamp, b.repo_id, b.comment_id);
    });
    return rows;
}

std::string timeline_csv(std::span<const TimelineRow> rows) {
    io::CsvWriter w({"group_id", "timestamp", "repo_id", "stars", "build_tool", "comment_id"});
    for (const auto& r : rows) {
        w.add_row({std::to_string(r.group_id), std::to_string(r.timestamp), r.repo_id, std::to_string(r.stars),
                   std::string(to_string(r.build_tool)), r.comment_id});
    }
    return w.str();
}

StatsRow compare(std::string comparison, std::span<const double> x, std::span<const double> y) {
    StatsRow row;
    row.comparison = std::move(comparison);
    row.test = stats::mann_whitney_u(x, y);
    row.effect = stats::cliffs_delta(x, y);
    return row;
}

std::string stats_csv(std::span<const StatsRow> rows) {
    io::CsvWriter w({"comparison", "method", "statistic", "p_value", "delta", "magnitude", "significant@0.05"});
    for (const auto& r : rows) {
        w.add_row({r.comparison, r.test.method, io::format_fixed(r.test.statistic), io::format_fixed(r.test.p_value),
                   r.effect ? io::format_fixed(r.effect->delta) : "",
                   r.effect ? std::string(stats::to_string(r.effect->magnitude)) : "",
                   r.test.significant() ? "true" : "false"});
    }
    return w.str();
}

}  // namespace satdmine::report
