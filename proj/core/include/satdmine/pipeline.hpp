#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "satdmine/config.hpp"

namespace satdmine::pipeline {

enum class Stage { Scan, Extract, Detect, Cluster, Context, Authorship, Stats, Report };

std::string_view to_string(Stage s) noexcept;
Stage parse_stage(std::string_view name);

inline constexpr const char* kIncompleteMarker = "RUN_INCOMPLETE";

struct RunOptions {
    Stage until = Stage::Report;
    std::ostream* log = nullptr;  // progress lines, optional
};

struct RunSummary {
    std::string config_hash;
    nlohmann::json stage_counts = nlohmann::json::object();
    std::vector<std::string> warnings;
};

/// SHA-256 over the artifact-relevant configuration and the contents of
/// every input file it references.
std::string config_hash(const config::PipelineConfig& cfg);

/// Runs every stage up to and including `options.until`, writing artifacts
/// into cfg.output_dir. A RUN_INCOMPLETE marker exists while the run is in
/// progress and is left behind when a stage throws.
RunSummary run_pipeline(const config::PipelineConfig& cfg, const RunOptions& options = {});

}  // namespace satdmine::pipeline
