#include "satdmine/config.hpp"

#include <algorithm>
#include <set>

#include <toml.hpp>

#include "satdmine/io.hpp"

namespace satdmine::config {

std::string_view to_string(DfScope s) noexcept {
    return s == DfScope::Corpus ? "corpus" : "group";
}

namespace {

void require_file(const std::optional<std::filesystem::path>& p, const char* what) {
    if (p && !std::filesystem::is_regular_file(*p)) {
        throw ConfigError(std::string(what) + " not found: " + p->string());
    }
}

std::string path_string(const std::optional<std::filesystem::path>& p) {
    return p ? p->filename().generic_string() : std::string();
}

}  // namespace

void PipelineConfig::validate() const {
    if (manifest_path.empty()) throw ConfigError("manifest path is required");
    if (!std::filesystem::is_regular_file(manifest_path)) {
        throw ConfigError("manifest not found: " + manifest_path.string());
    }
    require_file(keywords_path, "keyword file");
    require_file(labels_path, "labels file");
    require_file(baseline_labels_path, "baseline labels file");
    require_file(taxonomy_labels_path, "taxonomy labels file");
    require_file(taxonomy_path, "taxonomy file");
    if (vectorizer.rfind("external:", 0) == 0) {
        require_file(std::filesystem::path(vectorizer.substr(9)), "external vectors file");
    } else if (vectorizer != "tfidf") {
        throw ConfigError("vectorizer must be 'tfidf' or 'external:<path>', got '" + vectorizer + "'");
    }
    filter.validate();
    clustering.validate();
    if (jobs == 0) throw ConfigError("jobs must be >= 1");
    if (confidence != 0.90 && confidence != 0.95 && confidence != 0.99) {
        throw ConfigError("confidence must be 0.90, 0.95 or 0.99");
    }
    if (!(interval > 0.0 && interval < 1.0)) throw ConfigError("interval must be in (0, 1)");
    if (context_window == 0) throw ConfigError("context window must be >= 1");
    for (auto w : sensitivity_windows) {
        if (w == 0) throw ConfigError("sensitivity windows must be >= 1");
    }
    const auto& known = all_comparisons();
    for (const auto& c : comparisons) {
        if (std::find(known.begin(), known.end(), c) == known.end()) {
            throw ConfigError("unknown comparison '" + c + "'");
        }
    }
}

nlohmann::json PipelineConfig::to_json() const {
    nlohmann::json j;
    j["manifest"] = manifest_path.filename().generic_string();
    j["seed"] = seed;
    j["filter"] = {{"min_commits", filter.min_commits},
                   {"min_issues", filter.min_issues},
                   {"max_inactive_days", filter.max_inactive_days},
                   {"reference_timestamp", filter.reference_timestamp},
                   {"min_contributors", filter.min_contributors},
                   {"exclude_forks", filter.exclude_forks},
                   {"min_build_lines", filter.min_build_lines},
                   {"min_comment_lines", filter.min_comment_lines}};
    j["extraction"] = {{"merge_adjacent", merge_adjacent}};
    j["detection"] = {{"keywords", path_string(keywords_path)},
                      {"match_mode", detection::to_string(match_mode)},
                      {"confidence", confidence},
                      {"interval", interval}};
    j["clustering"] = {{"gate", clustering.similarity_gate},
                       {"eps", clustering.eps},
                       {"min_samples", clustering.min_samples},
                       {"vectorizer", vectorizer.rfind("external:", 0) == 0
                                          ? "external:" + std::filesystem::path(vectorizer.substr(9)).filename().generic_string()
                                          : vectorizer},
                       {"labels", path_string(labels_path)},
                       {"baseline_labels", path_string(baseline_labels_path)}};
    j["context"] = {{"window", context_window},
                    {"sensitivity_windows", sensitivity_windows},
                    {"df_scope", to_string(df_scope)}};
    j["authorship"] = {{"enabled", authorship},
                       {"counting", counting == authorship::CommitCounting::FirstParent ? "first_parent" : "full_dag"}};
    j["stats"] = {{"comparisons", comparisons}};
    j["report"] = {{"timeline_top_k", timeline_top_k},
                   {"taxonomy_labels", path_string(taxonomy_labels_path)},
                   {"taxonomy", path_string(taxonomy_path)}};
    return j;
}

namespace {

class Section {
public:
    Section(const nlohmann::json& j, std::string name) : j_(j), name_(std::move(name)) {
        if (!j_.is_object()) throw ConfigError("config section '" + name_ + "' must be a table");
    }

    template <typename T>
    void get(const char* key, T& out) {
        used_.insert(key);
        if (!j_.contains(key)) return;
        try {
            out = j_.at(key).get<T>();
        } catch (const nlohmann::json::exception&) {
            throw ConfigError("config key '" + qualified(key) + "' has the wrong type");
        }
    }

    void path(const char* key, const std::filesystem::path& base, std::optional<std::filesystem::path>& out) {
        std::string s;
        get(key, s);
        if (!s.empty()) out = resolve(base, s);
    }

    void finish() const {
        for (const auto& [k, v] : j_.items()) {
            if (!used_.count(k)) throw ConfigError("unknown config key '" + qualified(k.c_str()) + "'");
        }
    }

    static std::filesystem::path resolve(const std::filesystem::path& base, const std::string& s) {
        std::filesystem::path p(s);
        return p.is_absolute() || base.empty() ? p : base / p;
    }

private:
    std::string qualified(const char* key) const { return name_.empty() ? key : name_ + "." + key; }

    const nlohmann::json& j_;
    std::string name_;
    std::set<std::string> used_;
};

const nlohmann::json& sub(const nlohmann::json& j, const char* key) {
    static const nlohmann::json empty = nlohmann::json::object();
    return j.contains(key) ? j.at(key) : empty;
}

}  // namespace

PipelineConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    PipelineConfig c;
    Section top(j, "");
    std::string s;
    top.get("manifest", s);
    if (!s.empty()) c.manifest_path = Section::resolve(base_dir, s);
    s.clear();
    top.get("output_dir", s);
    if (!s.empty()) c.output_dir = Section::resolve(base_dir, s);
    top.get("seed", c.seed);
    top.get("jobs", c.jobs);
    nlohmann::json ignored;
    for (const char* name : {"filter", "extraction", "detection", "clustering", "context", "authorship", "stats",
                             "report"}) {
        top.get(name, ignored);
    }
    top.finish();

    Section f(sub(j, "filter"), "filter");
    f.get("min_commits", c.filter.min_commits);
    f.get("min_issues", c.filter.min_issues);
    f.get("max_inactive_days", c.filter.max_inactive_days);
    f.get("reference_timestamp", c.filter.reference_timestamp);
    f.get("min_contributors", c.filter.min_contributors);
    f.get("exclude_forks", c.filter.exclude_forks);
    f.get("min_build_lines", c.filter.min_build_lines);
    f.get("min_comment_lines", c.filter.min_comment_lines);
    f.finish();

    Section e(sub(j, "extraction"), "extraction");
    e.get("merge_adjacent", c.merge_adjacent);
    e.finish();

    Section d(sub(j, "detection"), "detection");
    d.path("keywords", base_dir, c.keywords_path);
    std::string mode = std::string(detection::to_string(c.match_mode));
    d.get("match_mode", mode);
    c.match_mode = detection::parse_match_mode(mode);
    d.get("confidence", c.confidence);
    d.get("interval", c.interval);
    d.finish();

    Section k(sub(j, "clustering"), "clustering");
    k.get("gate", c.clustering.similarity_gate);
    k.get("eps", c.clustering.eps);
    k.get("min_samples", c.clustering.min_samples);
    k.get("vectorizer", c.vectorizer);
    if (c.vectorizer.rfind("external:", 0) == 0) {
        c.vectorizer = "external:" + Section::resolve(base_dir, c.vectorizer.substr(9)).generic_string();
    }
    k.path("labels", base_dir, c.labels_path);
    k.path("baseline_labels", base_dir, c.baseline_labels_path);
    k.finish();

    Section x(sub(j, "context"), "context");
    x.get("window", c.context_window);
    x.get("sensitivity_windows", c.sensitivity_windows);
    std::string scope = std::string(to_string(c.df_scope));
    x.get("df_scope", scope);
    if (scope == "corpus") {
        c.df_scope = DfScope::Corpus;
    } else if (scope == "group") {
        c.df_scope = DfScope::Group;
    } else {
        throw ConfigError("context.df_scope must be 'corpus' or 'group'");
    }
    x.finish();

    Section a(sub(j, "authorship"), "authorship");
    a.get("enabled", c.authorship);
    std::string counting = "first_parent";
    a.get("counting", counting);
    if (counting == "first_parent") {
        c.counting = authorship::CommitCounting::FirstParent;
    } else if (counting == "full_dag") {
        c.counting = authorship::CommitCounting::FullDag;
    } else {
        throw ConfigError("authorship.counting must be 'first_parent' or 'full_dag'");
    }
    a.finish();

    Section st(sub(j, "stats"), "stats");
    st.get("comparisons", c.comparisons);
    st.finish();

    Section r(sub(j, "report"), "report");
    r.get("timeline_top_k", c.timeline_top_k);
    r.path("taxonomy_labels", base_dir, c.taxonomy_labels_path);
    r.path("taxonomy", base_dir, c.taxonomy_path);
    r.finish();
    return c;
}

namespace {

nlohmann::json to_json(const toml::node& n) {
    if (const auto* t = n.as_table()) {
        nlohmann::json out = nlohmann::json::object();
        for (const auto& [k, v] : *t) out[std::string(k.str())] = to_json(v);
        return out;
    }
    if (const auto* a = n.as_array()) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& v : *a) out.push_back(to_json(v));
        return out;
    }
    if (const auto* v = n.as_string()) return v->get();
    if (const auto* v = n.as_integer()) return v->get();
    if (const auto* v = n.as_floating_point()) return v->get();
    if (const auto* v = n.as_boolean()) return v->get();
    const auto& src = n.source().begin;
    throw ConfigError("TOML line " + std::to_string(src.line) + ": date and time values are not supported");
}

}  // namespace

nlohmann::json parse_toml(std::string_view content) {
    try {
        return to_json(toml::parse(content));
    } catch (const toml::parse_error& e) {
        throw ConfigError("TOML line " + std::to_string(e.source().begin.line) + ": " +
                          std::string(e.description()));
    }
}

PipelineConfig load(const std::filesystem::path& path) {
    if (!std::filesystem::is_regular_file(path)) throw ConfigError("config file not found: " + path.string());
    const std::string content = io::read_file(path);
    nlohmann::json j;
    if (path.extension() == ".json") {
        try {
            j = nlohmann::json::parse(content);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(path.string() + ": " + e.what());
        }
    } else {
        j = parse_toml(content);
    }
    PipelineConfig c = from_json(j, path.parent_path());
    c.validate();
    return c;
}

}  // namespace satdmine::config
