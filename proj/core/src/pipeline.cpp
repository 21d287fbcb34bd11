#include "satdmine/pipeline.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <tuple>
#include <unordered_map>

#include "satdmine/authorship.hpp"
#include "satdmine/clone_clustering.hpp"
#include "satdmine/comment_extraction.hpp"
#include "satdmine/context_similarity.hpp"
#include "satdmine/corpus.hpp"
#include "satdmine/io.hpp"
#include "satdmine/report.hpp"
#include "satdmine/satd_detection.hpp"
#include "satdmine/stats.hpp"
#include "satdmine/taxonomy.hpp"
#include "satdmine/text.hpp"
#include "satdmine/vectorizer.hpp"

#ifndef SATDMINE_VERSION
#define SATDMINE_VERSION "0.0.0"
#endif

namespace satdmine::pipeline {

namespace fs = std::filesystem;

namespace {

constexpr Stage kStages[] = {Stage::Scan,    Stage::Extract,    Stage::Detect, Stage::Cluster,
                             Stage::Context, Stage::Authorship, Stage::Stats,  Stage::Report};

}  // namespace

std::string_view to_string(Stage s) noexcept {
    switch (s) {
        case Stage::Scan: return "scan";
        case Stage::Extract: return "extract";
        case Stage::Detect: return "detect";
        case Stage::Cluster: return "cluster";
        case Stage::Context: return "context";
        case Stage::Authorship: return "authorship";
        case Stage::Stats: return "stats";
        case Stage::Report: return "report";
    }
    return "report";
}

Stage parse_stage(std::string_view name) {
    for (auto s : kStages) {
        if (to_string(s) == name) return s;
    }
    throw ConfigError("unknown stage '" + std::string(name) + "'");
}

std::string config_hash(const config::PipelineConfig& cfg) {
    nlohmann::json j;
    j["config"] = cfg.to_json();
    auto content = [&](const std::optional<fs::path>& p) {
        return p ? io::sha256_hex(io::read_file(*p)) : std::string();
    };
    j["manifest_sha256"] = content(cfg.manifest_path);
    j["keywords_sha256"] = content(cfg.keywords_path);
    j["labels_sha256"] = content(cfg.labels_path);
    j["baseline_labels_sha256"] = content(cfg.baseline_labels_path);
    j["taxonomy_labels_sha256"] = content(cfg.taxonomy_labels_path);
    j["taxonomy_sha256"] = content(cfg.taxonomy_path);
    if (cfg.vectorizer.rfind("external:", 0) == 0) {
        j["vectors_sha256"] = io::sha256_hex(io::read_file(cfg.vectorizer.substr(9)));
    }
    return io::sha256_hex(j.dump());
}

namespace {

struct Population {
    std::string name;    // "SATD" or "non-SATD"
    std::string suffix;  // artifact name suffix
    std::vector<SATDComment> members;
    std::vector<report::StageCounts> stages;
    std::vector<CloneGroup> groups;
    std::optional<double> silhouette;
    std::map<std::int64_t, context::GroupSimilarity> context;
    std::map<std::size_t, std::map<std::int64_t, context::GroupSimilarity>> sensitivity;
    std::map<std::int64_t, std::vector<IntroductionRecord>> introductions;  // deduplicated
    std::map<std::int64_t, authorship::GroupAuthorshipMetrics> authorship;
    std::map<std::int64_t, std::optional<std::pair<double, double>>> messages;

    std::vector<const CloneGroup*> downstream() const {
        std::vector<const CloneGroup*> out;
        for (const auto& g : groups) {
            if (g.counts_downstream()) out.push_back(&g);
        }
        return out;
    }
};

std::vector<SourceComment> sources(std::span<const SATDComment> comments) {
    std::vector<SourceComment> out;
    out.reserve(comments.size());
    for (const auto& c : comments) out.push_back(c.comment);
    return out;
}

class Run {
public:
    Run(const config::PipelineConfig& cfg, const RunOptions& options) : cfg_(cfg), options_(options) {
        satd_.name = "SATD";
        baseline_.name = "non-SATD";
        baseline_.suffix = "_baseline";
    }

    RunSummary execute() {
        summary_.config_hash = config_hash(cfg_);
        fs::create_directories(cfg_.output_dir);
        io::write_file(out(kIncompleteMarker), "");

        keywords_ = cfg_.keywords_path ? detection::load_keywords(*cfg_.keywords_path, cfg_.match_mode)
                                       : detection::default_keywords(cfg_.match_mode);
        if (cfg_.taxonomy_path) taxonomy_ = taxonomy::Taxonomy::load(*cfg_.taxonomy_path);
        if (cfg_.taxonomy_labels_path) {
            taxonomy_labels_ = taxonomy::parse_labels_csv(io::read_file(*cfg_.taxonomy_labels_path), taxonomy_);
        }
        clustering::LabelMap labels;
        clustering::LabelMap baseline_labels;
        if (cfg_.labels_path) labels = clustering::load_labels(*cfg_.labels_path);
        if (cfg_.baseline_labels_path) baseline_labels = clustering::load_labels(*cfg_.baseline_labels_path);

        for (auto stage : kStages) {
            log(stage, "start");
            switch (stage) {
                case Stage::Scan: scan(); break;
                case Stage::Extract: extract(); break;
                case Stage::Detect: detect(); break;
                case Stage::Cluster:
                    cluster(satd_, labels);
                    cluster(baseline_, baseline_labels);
                    write_cluster_artifacts();
                    break;
                case Stage::Context: context_stage(); break;
                case Stage::Authorship: authorship_stage(); break;
                case Stage::Stats: stats_stage(); break;
                case Stage::Report: report_stage(); break;
            }
            completed_ = stage;
            write_manifest();
            if (stage == options_.until) break;
        }
        fs::remove(out(kIncompleteMarker));
        return std::move(summary_);
    }

private:
    fs::path out(const std::string& name) const { return cfg_.output_dir / name; }

    void log(Stage stage, const std::string& message) const {
        if (options_.log) *options_.log << "[" << to_string(stage) << "] " << message << '\n';
    }

    void warn(Stage stage, std::string message) {
        log(stage, "warning: " + message);
        warnings_.push_back({{"stage", to_string(stage)}, {"message", message}});
        summary_.warnings.push_back(std::move(message));
    }

    void count(Stage stage, const std::string& key, std::int64_t value) {
        summary_.stage_counts[std::string(to_string(stage))][key] = value;
    }

    // --- scan -------------------------------------------------------------

    void scan() {
        manifest_ = corpus::load_manifest(cfg_.manifest_path);
        const extraction::ExtractOptions extract_opts{cfg_.merge_adjacent};
        const auto conventions = corpus::ConventionSet::defaults();
        std::vector<corpus::ScanWarning> scan_warnings;
        corpus::BuildFileIndex index;
        std::string build_files;
        for (const auto& p : manifest_) {
            stars_[p.repo_id] = p.stars;
            languages_[p.repo_id] = p.primary_language;
            if (p.local_path.empty() || !fs::is_directory(p.local_path)) {
                warn(Stage::Scan, p.repo_id + ": local clone missing, no build files");
                continue;
            }
            roots_[p.repo_id] = p.local_path;
            auto files = corpus::identify_build_files(p.local_path, p.repo_id, conventions, &scan_warnings,
                                                      extract_opts);
            for (const auto& f : files) {
                build_files += nlohmann::json(f).dump();
                build_files += '\n';
            }
            index[p.repo_id] = std::move(files);
        }
        for (const auto& w : scan_warnings) {
            rejected_.emplace(w.repo_id, w.path);
            warn(Stage::Scan, w.repo_id + ":" + w.path + ": " + w.message);
        }

        const auto report = corpus::evaluate_projects(manifest_, index, cfg_.filter);
        retained_ = report.retained;
        for (const auto& r : retained_) {
            for (const auto& f : index[r.repo_id]) files_.push_back(f);
        }
        nlohmann::json projects;
        projects["evaluations"] = report.evaluations;
        projects["retained"] = nlohmann::json::array();
        for (const auto& r : retained_) projects["retained"].push_back(r.repo_id);
        io::write_file(out("projects.json"), io::dump_pretty(projects));
        io::write_file(out("build_files.jsonl"), build_files);

        std::vector<std::int64_t> commits, issues, contributors, build_lines, comment_lines;
        for (const auto& e : report.evaluations) {
            build_lines.push_back(e.build_lines);
            comment_lines.push_back(e.comment_lines);
        }
        for (const auto& p : manifest_) {
            commits.push_back(p.commit_count);
            issues.push_back(p.issue_count);
            contributors.push_back(p.contributor_count);
        }
        const std::pair<const char*, std::vector<std::int64_t>*> curves[] = {
            {"threshold_commits.csv", &commits},
            {"threshold_issues.csv", &issues},
            {"threshold_contributors.csv", &contributors},
            {"threshold_build_lines.csv", &build_lines},
            {"threshold_comment_lines.csv", &comment_lines}};
        for (const auto& [name, values] : curves) {
            io::CsvWriter w({"threshold", "projects"});
            for (const auto& [t, n] : corpus::threshold_curve(*values)) {
                w.add_row({std::to_string(t), std::to_string(n)});
            }
            io::write_file(out(name), w.str());
        }
        count(Stage::Scan, "projects", static_cast<std::int64_t>(manifest_.size()));
        count(Stage::Scan, "retained", static_cast<std::int64_t>(retained_.size()));
        count(Stage::Scan, "build_files", static_cast<std::int64_t>(files_.size()));
    }

    // --- extract ----------------------------------------------------------

    void extract() {
        const extraction::ExtractOptions opts{cfg_.merge_adjacent};
        std::size_t skipped = 0;
        for (const auto& f : files_) {
            if (rejected_.count({f.repo_id, f.relative_path})) {
                ++skipped;
                continue;
            }
            const std::string contents = io::read_file(roots_.at(f.repo_id) / f.relative_path);
            auto found = extraction::extract_comments(f, contents, opts);
            comments_.insert(comments_.end(), std::make_move_iterator(found.begin()),
                             std::make_move_iterator(found.end()));
        }
        std::sort(comments_.begin(), comments_.end(), [](const SourceComment& a, const SourceComment& b) {
            return std::tie(a.repo_id, a.relative_path, a.start_line, a.syntax) <
                   std::tie(b.repo_id, b.relative_path, b.start_line, b.syntax);
        });
        for (const auto& c : comments_) lookup_.emplace(c.id(), c);
        io::write_file(out("comments.jsonl"), io::to_jsonl(comments_));
        count(Stage::Extract, "files", static_cast<std::int64_t>(files_.size() - skipped));
        count(Stage::Extract, "files_skipped", static_cast<std::int64_t>(skipped));
        count(Stage::Extract, "comments", static_cast<std::int64_t>(comments_.size()));
    }

    // --- detect -----------------------------------------------------------

    void detect() {
        satd_.members = detection::detect_satd(comments_, keywords_);
        std::set<std::string> satd_ids;
        for (const auto& s : satd_.members) satd_ids.insert(s.comment.id());
        std::vector<SourceComment> non_satd;
        for (const auto& c : comments_) {
            if (!satd_ids.count(c.id())) non_satd.push_back(c);
        }
        for (auto& c : detection::select_adjacent_non_satd(comments_, keywords_)) {
            baseline_.members.push_back({std::move(c), {}});
        }

        std::vector<SourceComment> sample;
        if (!non_satd.empty()) {
            sample = detection::sample_for_validation(non_satd, cfg_.confidence, cfg_.interval, cfg_.seed);
        }
        io::write_file(out("satd.jsonl"), io::to_jsonl(satd_.members));
        io::write_file(out("baseline.jsonl"), io::to_jsonl(sources(baseline_.members)));
        io::write_file(out("validation_sample.jsonl"), io::to_jsonl(sample));

        const auto satd_src = sources(satd_.members);
        satd_.stages.push_back(report::count_stage("raw", satd_src));
        baseline_.stages.push_back(report::count_stage("raw", non_satd));
        baseline_.stages.push_back(report::count_stage("sample", sources(baseline_.members)));

        count(Stage::Detect, "satd", static_cast<std::int64_t>(satd_.members.size()));
        count(Stage::Detect, "non_satd", static_cast<std::int64_t>(non_satd.size()));
        count(Stage::Detect, "baseline", static_cast<std::int64_t>(baseline_.members.size()));
        count(Stage::Detect, "validation_sample", static_cast<std::int64_t>(sample.size()));
    }

    // --- cluster ----------------------------------------------------------

    std::vector<SourceComment> by_ids(const std::vector<std::string>& ids) const {
        std::vector<SourceComment> out;
        for (const auto& id : ids) out.push_back(lookup_.at(id));
        return out;
    }

    void cluster(Population& p, const clustering::LabelMap& labels) {
        const Stage S = Stage::Cluster;
        std::vector<clustering::PreprocessedComment> pre;
        pre.reserve(p.members.size());
        for (const auto& m : p.members) pre.push_back(clustering::preprocess_text(m));
        pre = clustering::drop_single_word(std::move(pre));
        std::vector<std::string> ci1;
        for (const auto& c : pre) ci1.push_back(c.id());
        p.stages.push_back(report::count_stage("CI1", by_ids(ci1)));

        const auto vectorizer = clustering::make_vectorizer(cfg_.vectorizer);
        auto vectors = vectorizer->vectorize(pre);
        std::vector<CommentVector> usable;
        for (auto& v : vectors) {
            if (v.is_zero()) {
                warn(S, p.name + ": zero vector dropped before CI3: " + v.comment_id);
            } else {
                usable.push_back(std::move(v));
            }
        }

        const clustering::SimilarityOptions sim{cfg_.jobs, true};
        const auto gated = clustering::similarity_gate(usable, cfg_.clustering.similarity_gate, sim);
        std::vector<std::string> ci3;
        for (const auto& v : gated) ci3.push_back(v.comment_id);
        p.stages.push_back(report::count_stage("CI3", by_ids(ci3)));

        auto groups = clustering::cluster(gated, cfg_.clustering, sim);
        std::vector<std::string> ci4;
        for (const auto& g : groups) ci4.insert(ci4.end(), g.member_ids.begin(), g.member_ids.end());
        p.stages.push_back(report::count_stage("CI4", by_ids(ci4)));

        groups = clustering::apply_labels(std::move(groups), labels);
        std::vector<std::string> ci5;
        for (auto& g : groups) {
            g = clustering::classify_dimensions(std::move(g), lookup_, languages_);
            if (g.counts_downstream()) ci5.insert(ci5.end(), g.member_ids.begin(), g.member_ids.end());
        }
        p.stages.push_back(report::count_stage("CI5", by_ids(ci5)));
        if (groups.size() >= 2) p.silhouette = clustering::silhouette(gated, groups);
        p.groups = std::move(groups);

        const std::string key = p.name == "SATD" ? "satd" : "baseline";
        for (const auto& s : p.stages) count(S, key + "_" + s.stage, s.sum());
        count(S, key + "_groups", static_cast<std::int64_t>(p.groups.size()));
    }

    nlohmann::json clusters_json(const Population& p) const {
        nlohmann::json j;
        j["population"] = p.name;
        j["silhouette"] = p.silhouette ? nlohmann::json(io::format_fixed(*p.silhouette)) : nlohmann::json();
        j["groups"] = nlohmann::json::array();
        for (const auto& g : p.groups) {
            nlohmann::json row = g;
            row["representative_text"] = lookup_.at(g.member_ids.front()).raw_text;
            j["groups"].push_back(std::move(row));
        }
        return j;
    }

    void write_cluster_artifacts() {
        io::write_file(out("clusters.json"), io::dump_pretty(clusters_json(satd_)));
        io::write_file(out("baseline_clusters.json"), io::dump_pretty(clusters_json(baseline_)));

        std::unordered_map<std::string, SATDComment> satd_by_id;
        for (const auto& s : satd_.members) satd_by_id.emplace(s.comment.id(), s);
        std::vector<CloneGroup> kept;
        for (const auto* g : satd_.downstream()) kept.push_back(*g);
        io::CsvWriter kw({"keyword", "groups"});
        for (const auto& [k, n] : detection::keyword_distribution(kept, satd_by_id)) {
            kw.add_row({k, std::to_string(n)});
        }
        io::write_file(out("keyword_distribution.csv"), kw.str());

        io::write_file(out("table1_stage_counts.csv"), report::table1_csv(satd_.stages, baseline_.stages));

        auto rows = report::dimension_rows("SATD", satd_.groups);
        auto more = report::dimension_rows("non-SATD", baseline_.groups);
        rows.insert(rows.end(), more.begin(), more.end());
        io::write_file(out("table2_dimensions.csv"), report::dimension_csv(rows));
        auto tools = report::same_tool_rows("SATD", satd_.groups, lookup_);
        auto tools_b = report::same_tool_rows("non-SATD", baseline_.groups, lookup_);
        tools.insert(tools.end(), tools_b.begin(), tools_b.end());
        io::write_file(out("table3_same_tool.csv"), report::dimension_csv(tools));
    }

    // --- context ----------------------------------------------------------

    const std::vector<std::string>& file_lines(const SourceComment& c) {
        const auto key = std::make_pair(c.repo_id, c.relative_path);
        auto it = lines_.find(key);
        if (it == lines_.end()) {
            const auto content = text::sanitize_utf8(io::read_file(roots_.at(c.repo_id) / c.relative_path));
            it = lines_.emplace(key, text::split_lines(content)).first;
        }
        return it->second;
    }

    const std::vector<context::LineSpan>& spans_of(const SourceComment& c) {
        if (spans_.empty()) {
            for (const auto& x : comments_) {
                spans_[{x.repo_id, x.relative_path}].push_back({x.start_line, x.end_line});
            }
        }
        return spans_[{c.repo_id, c.relative_path}];
    }

    std::map<std::int64_t, context::GroupSimilarity> similarities(Population& p, std::size_t window,
                                                                  bool report_skips) {
        std::vector<std::pair<std::int64_t, std::vector<context::StatementBlock>>> per_group;
        std::vector<context::StatementBlock> all;
        for (const auto* g : p.downstream()) {
            std::vector<context::StatementBlock> blocks;
            for (const auto& id : g->member_ids) {
                const auto& c = lookup_.at(id);
                blocks.push_back(context::extract_context(file_lines(c), c, window, spans_of(c)));
            }
            all.insert(all.end(), blocks.begin(), blocks.end());
            per_group.emplace_back(g->group_id, std::move(blocks));
        }
        context::DocumentFrequency corpus_df;
        const context::DocumentFrequency* reference = nullptr;
        if (cfg_.df_scope == config::DfScope::Corpus) {
            corpus_df = context::DocumentFrequency::from_blocks(all);
            reference = &corpus_df;
        }
        std::map<std::int64_t, context::GroupSimilarity> out;
        for (const auto& [id, blocks] : per_group) {
            auto r = context::group_similarity(id, blocks, reference);
            if (report_skips && r.zero_vectors > 0) {
                warn(Stage::Context, p.name + " group " + std::to_string(id) + ": " +
                                         std::to_string(r.zero_vectors) + " empty statement block(s) excluded");
            }
            if (r.similarity) {
                out.emplace(id, std::move(*r.similarity));
            } else if (report_skips) {
                warn(Stage::Context, p.name + " group " + std::to_string(id) + " skipped: " + r.skip_reason);
            }
        }
        return out;
    }

    void context_stage() {
        std::string pairs;
        for (auto* p : {&satd_, &baseline_}) {
            p->context = similarities(*p, cfg_.context_window, true);
            io::CsvWriter w({"group_id", "n_pairs", "mean", "median"});
            for (const auto& [id, g] : p->context) {
                w.add_row({std::to_string(id), std::to_string(g.pair_scores.size()), io::format_fixed(g.mean),
                           io::format_fixed(g.median)});
                nlohmann::json row{{"population", p->name}, {"group_id", id}, {"window", cfg_.context_window}};
                row["scores"] = nlohmann::json::array();
                for (double s : g.pair_scores) row["scores"].push_back(io::format_fixed(s));
                pairs += row.dump();
                pairs += '\n';
            }
            io::write_file(out("context_similarity" + p->suffix + ".csv"), w.str());
            count(Stage::Context, p->name == "SATD" ? "satd_groups_scored" : "baseline_groups_scored",
                  static_cast<std::int64_t>(p->context.size()));
        }
        io::write_file(out("context_pairs.jsonl"), pairs);

        io::CsvWriter sens({"window", "group_id", "n_pairs", "mean", "median"});
        for (auto w : cfg_.sensitivity_windows) {
            satd_.sensitivity[w] = w == cfg_.context_window ? satd_.context : similarities(satd_, w, false);
            for (const auto& [id, g] : satd_.sensitivity[w]) {
                sens.add_row({std::to_string(w), std::to_string(id), std::to_string(g.pair_scores.size()),
                              io::format_fixed(g.mean), io::format_fixed(g.median)});
            }
        }
        io::write_file(out("context_sensitivity.csv"), sens.str());
    }

    // --- authorship -------------------------------------------------------

    void authorship_stage() {
        if (!cfg_.authorship) {
            log(Stage::Authorship, "disabled");
            return;
        }
        std::map<std::string, fs::path> repos(roots_.begin(), roots_.end());
        authorship::GitHistoryProvider provider(std::move(repos), cfg_.counting);
        authorship::IntroductionCache cache(cfg_.output_dir / ".cache" /
                                            ("introductions-" + summary_.config_hash.substr(0, 16) + ".jsonl"));
        std::string introductions;
        for (auto* p : {&satd_, &baseline_}) {
            io::CsvWriter w({"group_id", "size", "uad", "mcd", "single_author", "median_commits_to_head",
                             "median_experience", "msg_mean", "msg_median"});
            for (const auto* g : p->downstream()) {
                std::vector<IntroductionRecord> records;
                for (const auto& id : g->member_ids) records.push_back(cache.resolve(lookup_.at(id), provider));
                records = authorship::dedupe_group(std::move(records));
                for (const auto& r : records) {
                    nlohmann::json row = r;
                    row["population"] = p->name;
                    row["group_id"] = g->group_id;
                    introductions += row.dump();
                    introductions += '\n';
                }
                const auto m = authorship::group_metrics(g->group_id, records);
                const auto msg = authorship::message_similarity(records);
                w.add_row({std::to_string(g->group_id), std::to_string(m.group_size_after_dedupe),
                           io::format_fixed(m.uad), io::format_fixed(m.mcd), m.single_author ? "true" : "false",
                           io::format_fixed(m.median_commits_to_head), io::format_fixed(m.median_author_experience),
                           msg ? io::format_fixed(msg->first) : "", msg ? io::format_fixed(msg->second) : ""});
                p->authorship.emplace(g->group_id, m);
                p->messages.emplace(g->group_id, msg);
                p->introductions.emplace(g->group_id, std::move(records));
            }
            io::write_file(out("authorship" + p->suffix + ".csv"), w.str());
        }
        cache.save();
        io::write_file(out("introductions.jsonl"), introductions);
        count(Stage::Authorship, "cache_hits", static_cast<std::int64_t>(cache.hits()));
        count(Stage::Authorship, "resolved", static_cast<std::int64_t>(cache.size()));

        std::vector<const CloneGroup*> top = satd_.downstream();
        std::stable_sort(top.begin(), top.end(), [](const CloneGroup* a, const CloneGroup* b) {
            return a->member_ids.size() > b->member_ids.size();
        });
        if (top.size() > cfg_.timeline_top_k) top.resize(cfg_.timeline_top_k);
        std::vector<report::TimelineRow> timeline;
        for (const auto* g : top) {
            auto rows = report::emit_timeline(*g, satd_.introductions.at(g->group_id), stars_, lookup_);
            timeline.insert(timeline.end(), rows.begin(), rows.end());
        }
        io::write_file(out("timeline.csv"), report::timeline_csv(timeline));
    }

    // --- stats ------------------------------------------------------------

    bool selected(const std::string& name) const {
        return std::find(cfg_.comparisons.begin(), cfg_.comparisons.end(), name) != cfg_.comparisons.end();
    }

    void add_comparison(std::vector<report::StatsRow>& rows, const std::string& name, const std::vector<double>& x,
                        const std::vector<double>& y) {
        if (x.empty() || y.empty()) {
            warn(Stage::Stats, name + ": skipped (empty sample)");
            return;
        }
        rows.push_back(report::compare(name, x, y));
    }

    template <typename Map, typename F>
    static std::vector<double> collect(const Map& m, F f) {
        std::vector<double> v;
        for (const auto& [id, value] : m) {
            if (auto x = f(value)) v.push_back(*x);
        }
        return v;
    }

    void stats_stage() {
        std::vector<report::StatsRow> rows;
        using GS = context::GroupSimilarity;
        auto mean_of = [](const GS& g) { return std::optional<double>(g.mean); };
        auto median_of = [](const GS& g) { return std::optional<double>(g.median); };
        const std::pair<const char*, std::optional<double> (*)(const GS&)> context_metrics[] = {
            {"context_mean", +mean_of}, {"context_median", +median_of}};
        for (const auto& [name, f] : context_metrics) {
            if (!selected(name)) continue;
            add_comparison(rows, name, collect(satd_.context, f), collect(baseline_.context, f));
            for (auto tool : kAllBuildTools) {
                auto only = [&](const Population& p) {
                    std::vector<double> v;
                    for (const auto& [id, g] : p.context) {
                        const auto& grp = p.groups.at(static_cast<std::size_t>(id - 1));
                        if (grp.tool_dimension == ToolDimension::SameTool &&
                            lookup_.at(grp.member_ids.front()).build_tool == tool) {
                            v.push_back(*f(g));
                        }
                    }
                    return v;
                };
                const auto x = only(satd_);
                const auto y = only(baseline_);
                if (!x.empty() && !y.empty()) {
                    rows.push_back(report::compare(std::string(name) + "[" + std::string(display_name(tool)) + "]",
                                                   x, y));
                }
            }
            std::vector<std::vector<double>> per_window;
            bool ok = satd_.sensitivity.size() >= 2;
            for (const auto& [w, m] : satd_.sensitivity) {
                per_window.push_back(collect(m, f));
                if (per_window.back().size() < 2) ok = false;
            }
            if (ok) {
                report::StatsRow r;
                r.comparison = std::string(name) + "_by_window";
                r.test = stats::one_way_anova(per_window);
                rows.push_back(std::move(r));
            } else if (!satd_.sensitivity.empty()) {
                warn(Stage::Stats, std::string(name) + "_by_window: skipped (fewer than 2 groups per window)");
            }
        }

        using AM = authorship::GroupAuthorshipMetrics;
        const std::pair<const char*, double AM::*> author_metrics[] = {
            {"uad", &AM::uad},
            {"mcd", &AM::mcd},
            {"commits_to_head", &AM::median_commits_to_head},
            {"author_experience", &AM::median_author_experience}};
        for (const auto& [name, field] : author_metrics) {
            if (!selected(name) || !cfg_.authorship) continue;
            auto f = [field = field](const AM& m) { return std::optional<double>(m.*field); };
            add_comparison(rows, name, collect(satd_.authorship, f), collect(baseline_.authorship, f));
        }
        using Msg = std::optional<std::pair<double, double>>;
        if (cfg_.authorship) {
            if (selected("message_mean")) {
                auto f = [](const Msg& m) { return m ? std::optional<double>(m->first) : std::nullopt; };
                add_comparison(rows, "message_mean", collect(satd_.messages, f), collect(baseline_.messages, f));
            }
            if (selected("message_median")) {
                auto f = [](const Msg& m) { return m ? std::optional<double>(m->second) : std::nullopt; };
                add_comparison(rows, "message_median", collect(satd_.messages, f), collect(baseline_.messages, f));
            }
        }
        io::write_file(out("stats.csv"), report::stats_csv(rows));
        count(Stage::Stats, "rows", static_cast<std::int64_t>(rows.size()));
    }

    // --- report -----------------------------------------------------------

    void report_stage() {
        const auto rows = taxonomy::ingest_taxonomy(taxonomy_labels_, satd_.groups, taxonomy_);
        io::CsvWriter w({"dimension", "category", "term", "count", "percent", "frequency"});
        for (const auto& r : rows) {
            w.add_row({r.dimension, r.category, r.term, std::to_string(r.count), std::to_string(r.percent),
                       r.frequency()});
        }
        io::write_file(out("taxonomy_frequency.csv"), w.str());
        count(Stage::Report, "taxonomy_labels", static_cast<std::int64_t>(taxonomy_labels_.size()));
    }

    void write_manifest() {
        nlohmann::json j;
        j["tool"] = "satdmine";
        j["version"] = SATDMINE_VERSION;
        j["config_hash"] = summary_.config_hash;
        j["config"] = cfg_.to_json();
        j["completed_through"] = to_string(completed_);
        j["stages"] = summary_.stage_counts;
        if (!satd_.stages.empty()) {
            auto table = [](const Population& p) {
                nlohmann::json rows = nlohmann::json::array();
                for (const auto& s : p.stages) {
                    nlohmann::json r{{"stage", s.stage}, {"sum", s.sum()}, {"repos", s.repos}};
                    for (const auto& [tool, n] : s.per_tool) r[std::string(display_name(tool))] = n;
                    rows.push_back(std::move(r));
                }
                return rows;
            };
            j["table1"] = {{"SATD", table(satd_)}, {"non-SATD", table(baseline_)}};
        }
        io::write_file(out("run_manifest.json"), io::dump_pretty(j));
        std::string w;
        for (const auto& x : warnings_) {
            w += x.dump();
            w += '\n';
        }
        io::write_file(out("warnings.jsonl"), w);
    }

    const config::PipelineConfig& cfg_;
    const RunOptions& options_;
    RunSummary summary_;
    Stage completed_ = Stage::Scan;
    std::vector<nlohmann::json> warnings_;

    detection::KeywordSet keywords_{{"todo"}};
    taxonomy::Taxonomy taxonomy_ = taxonomy::Taxonomy::defaults();
    std::vector<taxonomy::TaxonomyLabel> taxonomy_labels_;

    std::vector<ProjectRecord> manifest_;
    std::vector<ProjectRecord> retained_;
    std::map<std::string, fs::path> roots_;
    std::unordered_map<std::string, std::int64_t> stars_;
    clustering::LanguageIndex languages_;
    std::set<std::pair<std::string, std::string>> rejected_;
    std::vector<BuildFileRecord> files_;
    std::vector<SourceComment> comments_;
    clustering::CommentLookup lookup_;

    Population satd_;
    Population baseline_;

    std::map<std::pair<std::string, std::string>, std::vector<std::string>> lines_;
    std::map<std::pair<std::string, std::string>, std::vector<context::LineSpan>> spans_;
};

}  // namespace

RunSummary run_pipeline(const config::PipelineConfig& cfg, const RunOptions& options) {
    cfg.validate();
    return Run(cfg, options).execute();
}

}  // namespace satdmine::pipeline
