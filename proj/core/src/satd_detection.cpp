#include "satdmine/satd_detection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include <boost/math/distributions/normal.hpp>

#include "satdmine/io.hpp"
#include "satdmine/text.hpp"

namespace satdmine::detection {

std::string_view to_string(MatchMode m) noexcept {
    return m == MatchMode::WordBoundary ? "word" : "substring";
}

MatchMode parse_match_mode(std::string_view text) {
    if (text == "word") return MatchMode::WordBoundary;
    if (text == "substring") return MatchMode::Substring;
    throw ConfigError("match mode must be 'word' or 'substring', got '" + std::string(text) + "'");
}

KeywordSet::KeywordSet(std::vector<std::string> patterns, MatchMode mode) : mode_(mode) {
    std::set<std::string> seen;
    for (auto& p : patterns) {
        std::string lowered = text::to_lower_ascii(text::trim(p));
        if (lowered.empty()) continue;
        if (seen.insert(lowered).second) patterns_.push_back(std::move(lowered));
    }
    if (patterns_.empty()) throw ConfigError("keyword set is empty");
}

bool occurs(std::string_view haystack, std::string_view pattern, MatchMode mode) {
    if (pattern.empty()) return false;
    std::size_t pos = haystack.find(pattern);
    if (mode == MatchMode::Substring) return pos != std::string_view::npos;
    while (pos != std::string_view::npos) {
        const bool left_ok = pos == 0 || !text::is_word_char(haystack[pos - 1]);
        const std::size_t end = pos + pattern.size();
        const bool right_ok = end >= haystack.size() || !text::is_word_char(haystack[end]);
        if (left_ok && right_ok) return true;
        pos = haystack.find(pattern, pos + 1);
    }
    return false;
}

std::vector<std::string> KeywordSet::match(std::string_view raw) const {
    const std::string lowered = text::to_lower_ascii(raw);
    std::vector<std::string> hits;
    for (const auto& p : patterns_) {
        if (occurs(lowered, p, mode_)) hits.push_back(p);
    }
    return hits;
}

KeywordSet parse_keywords(std::string_view content, MatchMode mode) {
    std::vector<std::string> patterns;
    for (const auto& line : text::split_lines(content)) {
        const std::string_view t = text::trim(line);
        if (t.empty() || t.front() == '#') continue;
        patterns.emplace_back(t);
    }
    return KeywordSet(std::move(patterns), mode);
}

KeywordSet load_keywords(const std::filesystem::path& path, MatchMode mode) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw ConfigError("keyword file '" + path.string() + "' does not exist");
    }
    return parse_keywords(io::read_file(path), mode);
}

const std::vector<std::string>& default_patterns() {
    static const std::vector<std::string> kPatterns = {
        "todo", "fixme", "fix", "workaround", "hack", "xxx", "broken",
        "retarded", "at a loss", "stupid", "remove this code", "ugly", "take care",
        "something's gone wrong", "nuke", "is problematic", "may cause problem", "hacky",
        "unknown why we ever experience this", "treat this as a soft error", "silly",
        "workaround for bug", "kludge", "this isn't quite right", "trial and error", "give up",
        "this is wrong", "hang our heads in shame", "temporary solution", "causes issue",
        "something bad is going on", "cause for issue", "this doesn't look right",
        "is this next line safe", "this indicates a more fundamental problem", "temporary crutch",
        "this can be a mess", "this isn't very solid", "this is temporary and will go away",
        "is this line really safe", "there is a problem", "some fatal error",
        "something serious is wrong", "don't use this", "get rid of this",
        "doubt that this would work", "this is bs", "give up and go away",
        "risk of this blowing up", "just abandon it", "prolly a bug", "probably a bug",
        "hope everything will work", "toss it", "barf", "something bad happened",
        "fix this crap", "yuck", "certainly buggy", "remove me before production",
        "you can be unhappy now", "this is uncool", "bail out", "it doesn't work yet", "crap",
        "inconsistency", "abandon all hope", "kaboom",
    };
    return kPatterns;
}

KeywordSet default_keywords(MatchMode mode) { return KeywordSet(default_patterns(), mode); }

std::vector<SATDComment> detect_satd(std::span<const SourceComment> comments, const KeywordSet& kw) {
    std::vector<SATDComment> out;
    for (const auto& c : comments) {
        auto hits = kw.match(c.raw_text);
        if (!hits.empty()) out.push_back({c, std::move(hits)});
    }
    return out;
}

std::size_t validation_sample_size(std::size_t population, double confidence, double interval) {
    if (population == 0) throw Error("validation sample requires a non-empty population");
    const bool allowed = std::abs(confidence - 0.90) < 1e-12 || std::abs(confidence - 0.95) < 1e-12 ||
                         std::abs(confidence - 0.99) < 1e-12;
    if (!allowed) throw ConfigError("confidence must be one of 0.90, 0.95, 0.99");
    if (!(interval > 0.0 && interval < 1.0)) throw ConfigError("confidence interval must lie in (0, 1)");

    const boost::math::normal standard;
    const double z = boost::math::quantile(standard, 1.0 - (1.0 - confidence) / 2.0);
    const double n0 = z * z * 0.25 / (interval * interval);
    const double n = n0 / (1.0 + (n0 - 1.0) / static_cast<double>(population));
    const auto rounded = static_cast<std::size_t>(std::llround(n));
    return std::clamp<std::size_t>(rounded, 1, population);
}

std::vector<SourceComment> sample_for_validation(std::span<const SourceComment> population, double confidence,
                                                 double interval, std::uint64_t seed) {
    const std::size_t n = validation_sample_size(population.size(), confidence, interval);
    std::vector<std::size_t> idx(population.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    idx.resize(n);
    std::sort(idx.begin(), idx.end());
    std::vector<SourceComment> out;
    out.reserve(n);
    for (std::size_t i : idx) out.push_back(population[i]);
    return out;
}

std::map<std::string, std::size_t> keyword_distribution(
    std::span<const CloneGroup> groups, const std::unordered_map<std::string, SATDComment>& satd_by_id) {
    std::map<std::string, std::size_t> counts;
    for (const auto& g : groups) {
        std::set<std::string> present;
        for (const auto& id : g.member_ids) {
            if (auto it = satd_by_id.find(id); it != satd_by_id.end()) {
                present.insert(it->second.matched_keywords.begin(), it->second.matched_keywords.end());
            }
        }
        for (const auto& k : present) ++counts[k];
    }
    return counts;
}

std::vector<SourceComment> select_adjacent_non_satd(std::span<const SourceComment> comments,
                                                    const KeywordSet& kw) {
    std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> by_file;
    for (std::size_t i = 0; i < comments.size(); ++i) {
        by_file[{comments[i].repo_id, comments[i].relative_path}].push_back(i);
    }
    std::vector<bool> is_satd(comments.size());
    for (std::size_t i = 0; i < comments.size(); ++i) is_satd[i] = !kw.match(comments[i].raw_text).empty();

    std::vector<bool> chosen(comments.size(), false);
    for (auto& [file, idx] : by_file) {
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (comments[a].start_line != comments[b].start_line)
                return comments[a].start_line < comments[b].start_line;
            return comments[a].syntax < comments[b].syntax;
        });
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (!is_satd[idx[k]]) continue;
            for (std::size_t up = k; up-- > 0;) {
                if (!is_satd[idx[up]]) {
                    chosen[idx[up]] = true;
                    break;
                }
            }
            for (std::size_t down = k + 1; down < idx.size(); ++down) {
                if (!is_satd[idx[down]]) {
                    chosen[idx[down]] = true;
                    break;
                }
            }
        }
    }
    std::vector<SourceComment> out;
    for (std::size_t i = 0; i < comments.size(); ++i) {
        if (chosen[i]) out.push_back(comments[i]);
    }
    return out;
}

}  // namespace satdmine::detection
