#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "satdmine/authorship.hpp"
#include "satdmine/stats.hpp"
#include "satdmine/types.hpp"

namespace satdmine::report {

/// Per-tool counts of one pipeline stage plus the number of distinct repos.
struct StageCounts {
    std::string stage;
    std::map<BuildTool, std::int64_t> per_tool;
    std::int64_t repos = 0;

    std::int64_t sum() const;
};

StageCounts count_stage(std::string stage, std::span<const SourceComment> comments);

/// "raw, CI1, CI3, CI4, CI5" rows followed by a cloning-rate row, with
/// Autotools..Ivy, Sum and #repo columns. Rates are whole percents; a tool
/// whose denominator is zero gets "-".
std::string table1_csv(std::span<const StageCounts> satd_rows, std::span<const StageCounts> baseline_rows);

/// Cloning rate in whole percent, or nullopt when the denominator is zero.
std::optional<long> rate_percent(std::int64_t s_original, std::int64_t s_ci4, std::int64_t s_ci5);

struct DimensionRow {
    std::string population;  // "SATD" or "non-SATD"
    std::string dimension;   // "INTERNAL", "CROSS_TOOL", ...
    std::size_t groups = 0;
    std::size_t comments = 0;
    double group_share = 0.0;
    double comment_share = 0.0;
    double mean_size = 0.0;
    double median_size = 0.0;
    std::size_t max_size = 0;
};

/// Repository, language and tool dimension breakdown of the groups that
/// count downstream.
std::vector<DimensionRow> dimension_rows(const std::string& population, std::span<const CloneGroup> groups);

/// Same-tool groups broken down by build tool (dimension = tool name).
std::vector<DimensionRow> same_tool_rows(const std::string& population, std::span<const CloneGroup> groups,
                                         const std::unordered_map<std::string, SourceComment>& comments);

std::string dimension_csv(std::span<const DimensionRow> rows);

struct TimelineRow {
    std::int64_t group_id = 0;
    std::int64_t timestamp = 0;
    std::string repo_id;
    std::int64_t stars = 0;
    BuildTool build_tool = BuildTool::Cmake;
    std::string comment_id;
};

/// Rows sorted by (timestamp, repo_id); the first row is the introduction.
std::vector<TimelineRow> emit_timeline(const CloneGroup& group, std::span<const IntroductionRecord> records,
                                       const std::unordered_map<std::string, std::int64_t>& stars,
                                       const std::unordered_map<std::string, SourceComment>& comments);

std::string timeline_csv(std::span<const TimelineRow> rows);

struct StatsRow {
    std::string comparison;
    stats::TestResult test;
    std::optional<stats::EffectSize> effect;
};

/// Mann-Whitney plus Cliff's delta of x against y.
StatsRow compare(std::string comparison, std::span<const double> x, std::span<const double> y);

/// "comparison,method,statistic,p_value,delta,magnitude,significant@0.05".
std::string stats_csv(std::span<const StatsRow> rows);

}  // namespace satdmine::report
