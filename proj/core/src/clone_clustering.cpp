#include "satdmine/clone_clustering.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <regex>
#include <set>
#include <thread>

#include "satdmine/io.hpp"
#include "satdmine/text.hpp"

namespace satdmine::clustering {

std::string normalize_comment_text(std::string_view raw, CommentSyntax syntax) {
    static const std::regex kUrl(R"(https?://[^\s]+)");
    std::string s(raw);

    std::string with_urls;
    std::size_t last = 0;
    for (auto it = std::sregex_iterator(s.begin(), s.end(), kUrl); it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        const auto pos = static_cast<std::size_t>(m.position(0));
        with_urls.append(s, last, pos - last);
        std::string url = m.str(0);
        for (char& c : url) {
            switch (c) {
                case '/': case '.': case ':': case '-': case '_':
                case '?': case '=': case '&': case '#':
                    c = ' ';
                    break;
                default:
                    break;
            }
        }
        with_urls += url;
        last = pos + static_cast<std::size_t>(m.length(0));
    }
    with_urls.append(s, last, std::string::npos);

    std::vector<std::string> tokens;
    std::string current;
    for (char c : with_urls) {
        if (text::is_ascii_alnum(c)) {
            current += c;
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));

    std::size_t first = 0;
    if (syntax == CommentSyntax::Dnl) {
        while (first < tokens.size() && tokens[first] == "dnl") ++first;
    }
    std::string out;
    for (std::size_t i = first; i < tokens.size(); ++i) {
        if (!out.empty()) out += ' ';
        out += tokens[i];
    }
    return out;
}

PreprocessedComment preprocess_text(const SATDComment& comment) {
    PreprocessedComment p;
    p.source = comment;
    p.normalized_text = normalize_comment_text(comment.comment.raw_text, comment.comment.syntax);
    p.token_count = text::split_whitespace(p.normalized_text).size();
    return p;
}

std::vector<PreprocessedComment> drop_single_word(std::vector<PreprocessedComment> comments) {
    std::erase_if(comments, [](const PreprocessedComment& c) { return c.token_count < 2; });
    return comments;
}

void ClusteringConfig::validate() const {
    if (!(similarity_gate > 0.0 && similarity_gate < 1.0)) throw ConfigError("similarity gate must lie in (0, 1)");
    if (!(eps > 0.0 && eps < 2.0)) throw ConfigError("eps must lie in (0, 2)");
    if (min_samples < 2) throw ConfigError("min_samples must be >= 2");
}

namespace {

bool satisfies(const CommentVector& a, const CommentVector& b, NeighborRule rule, double threshold) {
    return rule == NeighborRule::SimilarityAtLeast ? cosine_similarity(a, b) >= threshold
                                                   : cosine_distance(a, b) <= threshold;
}

// Pairs (i, j), i < j, over the rows assigned to one worker.
void scan_rows(std::span<const CommentVector> vectors, NeighborRule rule, double threshold, bool use_index,
               const std::vector<std::vector<std::size_t>>& postings, std::size_t worker, std::size_t workers,
               std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    std::vector<std::size_t> stamp(vectors.size(), static_cast<std::size_t>(-1));
    for (std::size_t i = worker; i < vectors.size(); i += workers) {
        if (use_index) {
            std::vector<std::size_t> candidates;
            for (std::uint32_t t : vectors[i].indices) {
                for (std::size_t j : postings[t]) {
                    if (j > i && stamp[j] != i) {
                        stamp[j] = i;
                        candidates.push_back(j);
                    }
                }
            }
            for (std::size_t j : candidates) {
                if (satisfies(vectors[i], vectors[j], rule, threshold)) pairs.emplace_back(i, j);
            }
        } else {
            for (std::size_t j = i + 1; j < vectors.size(); ++j) {
                if (satisfies(vectors[i], vectors[j], rule, threshold)) pairs.emplace_back(i, j);
            }
        }
    }
}

}  // namespace

std::vector<std::vector<std::size_t>> neighbor_lists(std::span<const CommentVector> vectors, NeighborRule rule,
                                                     double threshold, const SimilarityOptions& options) {
    // Vectors without a shared coordinate have similarity 0 (distance 1); the
    // index only skips pairs that cannot satisfy the rule.
    const bool zero_fails = rule == NeighborRule::SimilarityAtLeast ? 0.0 < threshold : 1.0 > threshold;
    const bool use_index = options.inverted_index && zero_fails;

    std::vector<std::vector<std::size_t>> postings;
    if (use_index) {
        std::size_t dim = 0;
        for (const auto& v : vectors) {
            if (!v.indices.empty()) dim = std::max<std::size_t>(dim, v.indices.back() + 1);
        }
        postings.resize(dim);
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            for (std::uint32_t t : vectors[i].indices) postings[t].push_back(i);
        }
    }

    const std::size_t workers = std::max<std::size_t>(1, std::min(options.jobs, vectors.size()));
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs(workers);
    if (workers == 1) {
        scan_rows(vectors, rule, threshold, use_index, postings, 0, 1, pairs[0]);
    } else {
        std::vector<std::jthread> threads;
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] { scan_rows(vectors, rule, threshold, use_index, postings, w, workers, pairs[w]); });
        }
    }

    std::vector<std::vector<std::size_t>> adj(vectors.size());
    for (const auto& chunk : pairs) {
        for (const auto& [i, j] : chunk) {
            adj[i].push_back(j);
            adj[j].push_back(i);
        }
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
}

std::vector<CommentVector> similarity_gate(std::span<const CommentVector> vectors, double gate,
                                           const SimilarityOptions& options) {
    const auto adj = neighbor_lists(vectors, NeighborRule::SimilarityAtLeast, gate, options);
    std::vector<CommentVector> kept;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (!adj[i].empty()) kept.push_back(vectors[i]);
    }
    return kept;
}

std::vector<CloneGroup> cluster(std::span<const CommentVector> vectors, const ClusteringConfig& cfg,
                                const SimilarityOptions& options) {
    cfg.validate();
    const std::size_t n = vectors.size();
    const auto adj = neighbor_lists(vectors, NeighborRule::DistanceAtMost, cfg.eps, options);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vectors[a].comment_id < vectors[b].comment_id; });
    std::vector<std::size_t> rank(n);
    for (std::size_t r = 0; r < n; ++r) rank[order[r]] = r;

    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> label(n, kNone);
    auto is_core = [&](std::size_t i) { return adj[i].size() + 1 >= cfg.min_samples; };

    std::size_t clusters = 0;
    for (std::size_t seed : order) {
        if (label[seed] != kNone || !is_core(seed)) continue;
        const std::size_t c = clusters++;
        label[seed] = c;
        std::deque<std::size_t> queue{seed};
        while (!queue.empty()) {
            const std::size_t p = queue.front();
            queue.pop_front();
            std::vector<std::size_t> nbrs = adj[p];
            std::sort(nbrs.begin(), nbrs.end(), [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
            for (std::size_t q : nbrs) {
                if (label[q] != kNone) continue;
                label[q] = c;
                if (is_core(q)) queue.push_back(q);
            }
        }
    }

    std::vector<std::vector<std::string>> members(clusters);
    for (std::size_t i : order) {
        if (label[i] != kNone) members[label[i]].push_back(vectors[i].comment_id);
    }
    std::vector<CloneGroup> groups;
    for (auto& m : members) {
        if (m.size() < 2) continue;
        CloneGroup g;
        g.member_ids = std::move(m);
        groups.push_back(std::move(g));
    }
    std::sort(groups.begin(), groups.end(),
              [](const CloneGroup& a, const CloneGroup& b) { return a.member_ids.front() < b.member_ids.front(); });
    for (std::size_t i = 0; i < groups.size(); ++i) groups[i].group_id = static_cast<std::int64_t>(i + 1);
    return groups;
}

double silhouette(std::span<const CommentVector> vectors, std::span<const CloneGroup> groups) {
    if (groups.size() < 2) throw StatsError("silhouette score is undefined for fewer than two clusters");
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < vectors.size(); ++i) index.emplace(vectors[i].comment_id, i);

    std::vector<std::vector<std::size_t>> clusters;
    for (const auto& g : groups) {
        std::vector<std::size_t> pts;
        for (const auto& id : g.member_ids) {
            auto it = index.find(id);
            if (it == index.end()) throw StatsError("silhouette: no vector for member '" + id + "'");
            pts.push_back(it->second);
        }
        clusters.push_back(std::move(pts));
    }

    double total = 0.0;
    std::size_t count = 0;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        for (std::size_t i : clusters[c]) {
            ++count;
            if (clusters[c].size() < 2) continue;
            double a = 0.0;
            for (std::size_t j : clusters[c]) {
                if (j != i) a += cosine_distance(vectors[i], vectors[j]);
            }
            a /= static_cast<double>(clusters[c].size() - 1);
            double b = std::numeric_limits<double>::infinity();
            for (std::size_t o = 0; o < clusters.size(); ++o) {
                if (o == c) continue;
                double d = 0.0;
                for (std::size_t j : clusters[o]) d += cosine_distance(vectors[i], vectors[j]);
                b = std::min(b, d / static_cast<double>(clusters[o].size()));
            }
            const double denom = std::max(a, b);
            if (denom > 0.0) total += (b - a) / denom;
        }
    }
    return count == 0 ? 0.0 : total / static_cast<double>(count);
}

LabelMap parse_labels_csv(std::string_view content) {
    LabelMap labels;
    const auto rows = io::parse_csv(content);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (r == 0 && row.size() >= 1 && text::trim(row[0]) == "group_id") continue;
        if (row.size() != 2) {
            throw Error("labels row " + std::to_string(r + 1) + ": expected 'group_id,label'");
        }
        std::int64_t id = 0;
        try {
            std::size_t used = 0;
            const std::string field(text::trim(row[0]));
            id = std::stoll(field, &used);
            if (used != field.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw Error("labels row " + std::to_string(r + 1) + ": invalid group id '" + row[0] + "'");
        }
        const std::string label(text::trim(row[1]));
        if (label != "SATD" && label != "FALSE_POSITIVE") {
            throw Error("labels row " + std::to_string(r + 1) + ": label must be SATD or FALSE_POSITIVE");
        }
        labels[id] = parse_group_label(label);
    }
    return labels;
}

LabelMap load_labels(const std::filesystem::path& path) { return parse_labels_csv(io::read_file(path)); }

std::vector<CloneGroup> apply_labels(std::vector<CloneGroup> groups, const LabelMap& labels) {
    std::unordered_map<std::int64_t, CloneGroup*> by_id;
    for (auto& g : groups) by_id[g.group_id] = &g;
    for (const auto& [id, label] : labels) {
        auto it = by_id.find(id);
        if (it == by_id.end()) throw Error("labels reference unknown group id " + std::to_string(id));
        it->second->label = label;
    }
    return groups;
}

double cloning_rate(std::int64_t s_original, std::int64_t s_ci4, std::int64_t s_ci5) {
    if (s_ci5 < 0 || s_ci4 < s_ci5 || s_original < s_ci4) {
        throw Error("cloning rate requires s_original >= s_ci4 >= s_ci5 >= 0");
    }
    const std::int64_t denominator = s_original - (s_ci4 - s_ci5);
    if (denominator <= 0) throw Error("cloning rate denominator is not positive");
    return static_cast<double>(s_ci5) / static_cast<double>(denominator);
}

CloneGroup classify_dimensions(CloneGroup group, const CommentLookup& members, const LanguageIndex& languages) {
    std::set<std::string> repos;
    std::set<BuildTool> tools;
    std::set<std::string> langs;
    for (const auto& id : group.member_ids) {
        auto it = members.find(id);
        if (it == members.end()) throw Error("unknown clone member '" + id + "'");
        const SourceComment& c = it->second;
        auto lang = languages.find(c.repo_id);
        if (lang == languages.end()) throw Error("repository '" + c.repo_id + "' missing from project index");
        repos.insert(c.repo_id);
        tools.insert(c.build_tool);
        langs.insert(lang->second);
    }
    group.repo_dimension = repos.size() == 1 ? RepoDimension::Internal : RepoDimension::External;
    group.tool_dimension = tools.size() == 1 ? ToolDimension::SameTool : ToolDimension::CrossTool;
    group.language_dimension = langs.size() == 1 ? LanguageDimension::SameLanguage : LanguageDimension::CrossLanguage;
    return group;
}

}  // namespace satdmine::clustering
