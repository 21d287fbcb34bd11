// satdmine: mine self-admitted technical debt clones from build files.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "satdmine/config.hpp"
#include "satdmine/pipeline.hpp"
#include "satdmine/satd_detection.hpp"
#include "satdmine/types.hpp"

namespace {

struct Overrides {
    std::string config;
    std::string manifest;
    std::string output;
    std::optional<std::size_t> jobs;
    std::optional<std::uint64_t> seed;
    std::string keywords;
    std::string match_mode;
    std::optional<double> gate;
    std::optional<double> eps;
    std::optional<std::size_t> min_samples;
    std::string vectorizer;
    bool quiet = false;
};

satdmine::config::PipelineConfig build_config(const Overrides& o) {
    namespace fs = std::filesystem;
    satdmine::config::PipelineConfig cfg =
        o.config.empty() ? satdmine::config::PipelineConfig{} : satdmine::config::load(o.config);
    if (!o.manifest.empty()) cfg.manifest_path = o.manifest;
    if (!o.output.empty()) cfg.output_dir = o.output;
    if (o.jobs) cfg.jobs = *o.jobs;
    if (o.seed) cfg.seed = *o.seed;
    if (!o.keywords.empty()) cfg.keywords_path = fs::path(o.keywords);
    if (!o.match_mode.empty()) cfg.match_mode = satdmine::detection::parse_match_mode(o.match_mode);
    if (o.gate) cfg.clustering.similarity_gate = *o.gate;
    if (o.eps) cfg.clustering.eps = *o.eps;
    if (o.min_samples) cfg.clustering.min_samples = *o.min_samples;
    if (!o.vectorizer.empty()) cfg.vectorizer = o.vectorizer;
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mine self-admitted technical debt clones from build specification files"};
    app.set_version_flag("--version", std::string(SATDMINE_TOOL_VERSION));
    app.require_subcommand(1);

    Overrides o;
    app.add_option("--config", o.config, "TOML or JSON configuration file")->check(CLI::ExistingFile);
    app.add_option("--manifest", o.manifest, "Project manifest (overrides the config)");
    app.add_option("--output", o.output, "Output directory");
    app.add_option("--jobs", o.jobs, "Worker thread cap")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "Seed for the validation sample");
    app.add_option("--keywords", o.keywords, "Keyword file, one pattern per line");
    app.add_option("--match-mode", o.match_mode, "Keyword matching: word or substring")
        ->check(CLI::IsMember({"word", "substring"}));
    app.add_option("--gate", o.gate, "CI3 cosine similarity gate");
    app.add_option("--eps", o.eps, "CI4 neighbourhood radius (cosine distance)");
    app.add_option("--min-samples", o.min_samples, "CI4 minimum neighbourhood size");
    app.add_option("--vectorizer", o.vectorizer, "tfidf or external:<path>");
    app.add_flag("-q,--quiet", o.quiet, "No progress output");

    const std::pair<const char*, const char*> commands[] = {
        {"scan", "Identify build files and filter projects"},
        {"extract", "... then extract comments"},
        {"detect", "... then tag SATD comments and draw the validation sample"},
        {"cluster", "... then identify clone groups (CI1-CI5)"},
        {"context", "... then score surrounding statements"},
        {"authorship", "... then resolve introducing commits"},
        {"stats", "... then run the statistical comparisons"},
        {"report", "... then aggregate taxonomy labels"},
        {"run", "Full pipeline"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);

    CLI11_PARSE(app, argc, argv);

    try {
        const auto cfg = build_config(o);
        const std::string name = app.get_subcommands().front()->get_name();
        satdmine::pipeline::RunOptions options;
        options.until = name == "run" ? satdmine::pipeline::Stage::Report : satdmine::pipeline::parse_stage(name);
        if (!o.quiet) options.log = &std::cerr;
        const auto summary = satdmine::pipeline::run_pipeline(cfg, options);
        if (!o.quiet) {
            std::cerr << "config " << summary.config_hash.substr(0, 12) << ", " << summary.warnings.size()
                      << " warning(s), artifacts in " << cfg.output_dir.string() << '\n';
        }
        return 0;
    } catch (const satdmine::ConfigError& e) {
        std::cerr << "satdmine: configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "satdmine: " << e.what() << '\n';
        return 1;
    }
}
