#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "satdmine/io.hpp"
#include "satdmine/satd_detection.hpp"
#include "satdmine/text.hpp"
#include "test_support.hpp"

using namespace satdmine;
using namespace satdmine::detection;

namespace {

SourceComment comment(std::string text, std::size_t line = 1, std::string path = "CMakeLists.txt") {
    SourceComment c;
    c.repo_id = "r";
    c.relative_path = std::move(path);
    c.start_line = c.end_line = line;
    c.raw_text = std::move(text);
    return c;
}

std::vector<SourceComment> population(std::size_t n) {
    std::vector<SourceComment> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(comment("c" + std::to_string(i), i + 1));
    return out;
}

// Cochran with finite-population correction from tabulated two-sided z values.
std::size_t cochran_oracle(double n_population, double z, double e) {
    const double n0 = z * z * 0.25 / (e * e);
    const double n = n0 / (1.0 + (n0 - 1.0) / n_population);
    return static_cast<std::size_t>(std::min(n_population, std::max(1.0, std::floor(n + 0.5))));
}

// Word-boundary scan written independently of the library.
bool boundary_oracle(const std::string& hay, const std::string& needle) {
    auto word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    for (std::size_t at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) {
        const bool left = at == 0 || !word(hay[at - 1]) || !word(needle.front());
        const std::size_t end = at + needle.size();
        const bool right = end == hay.size() || !word(hay[end]) || !word(needle.back());
        if (left && right) return true;
    }
    return false;
}

}  // namespace

TEST(KeywordSet, LowercasesAndDeduplicates) {
    KeywordSet kw({"TODO", "todo", "Hack"});
    EXPECT_EQ(kw.patterns(), (std::vector<std::string>{"todo", "hack"}));
    EXPECT_THROW(KeywordSet({}), ConfigError);
    EXPECT_THROW(KeywordSet({"  "}), ConfigError);
}

TEST(KeywordSet, ParsesFileFormat) {
    const auto kw = parse_keywords("# header\n\nTODO\n  fixme  \n# ignored\nhack\n");
    EXPECT_EQ(kw.patterns(), (std::vector<std::string>{"todo", "fixme", "hack"}));
}

TEST(KeywordSet, BundledFileEqualsBuiltInList) {
    const auto kw = load_keywords(satdmine::testing::data_dir() / "satd_keywords.txt");
    EXPECT_EQ(kw.patterns(), default_patterns());
    for (const char* tag : {"todo", "fixme", "fix", "workaround", "hack", "xxx", "broken"}) {
        EXPECT_NE(std::find(kw.patterns().begin(), kw.patterns().end(), tag), kw.patterns().end()) << tag;
    }
}

TEST(DetectSatd, TodoAndHack) {
    const KeywordSet kw({"todo", "hack"});
    const std::vector<SourceComment> in{comment("TODO: remove this hack")};
    const auto out = detect_satd(in, kw);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].matched_keywords, (std::vector<std::string>{"todo", "hack"}));
}

TEST(DetectSatd, CopyrightIsNotSatd) {
    const std::vector<SourceComment> in{comment("Copyright 2020")};
    EXPECT_TRUE(detect_satd(in, default_keywords()).empty());
}

TEST(DetectSatd, WordBoundaryVersusSubstring) {
    const std::vector<SourceComment> in{comment("method todos")};
    EXPECT_TRUE(detect_satd(in, KeywordSet({"todo"}, MatchMode::WordBoundary)).empty());
    EXPECT_EQ(detect_satd(in, KeywordSet({"todo"}, MatchMode::Substring)).size(), 1u);
    EXPECT_TRUE(detect_satd(std::vector{comment("add prefix")}, KeywordSet({"fix"})).empty());
}

TEST(DetectSatd, MultiWordPatternsAndPunctuation) {
    const KeywordSet kw({"is this right", "fix"});
    EXPECT_EQ(kw.match("Hmm, is this right?"), (std::vector<std::string>{"is this right"}));
    EXPECT_EQ(kw.match("(fix)"), (std::vector<std::string>{"fix"}));
}

TEST(DetectSatd, PreservesInputOrder) {
    const auto in = std::vector{comment("b todo", 3), comment("nothing", 1), comment("a fixme", 2)};
    const auto out = detect_satd(in, default_keywords());
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].comment.start_line, 3u);
    EXPECT_EQ(out[1].comment.start_line, 2u);
}

TEST(DetectSatd, MatchesAgreeWithBoundaryOracle) {
    const auto kw = default_keywords();
    std::mt19937_64 rng(23);
    const auto& pats = kw.patterns();
    const char* fillers[] = {" ", "x", "_", "-", ".", "ab", "\n", "s"};
    for (int round = 0; round < 500; ++round) {
        std::string t;
        for (int i = 0; i < 4; ++i) {
            t += fillers[rng() % std::size(fillers)];
            if (rng() % 2) t += pats[rng() % pats.size()];
        }
        const auto lower = text::to_lower_ascii(t);
        const auto got = kw.match(t);
        for (const auto& p : pats) {
            const bool listed = std::find(got.begin(), got.end(), p) != got.end();
            EXPECT_EQ(listed, boundary_oracle(lower, p)) << t << " / " << p;
        }
    }
}

TEST(DetectSatd, CaseInsensitiveAndIdempotent) {
    const auto kw = default_keywords();
    std::vector<SourceComment> in{comment("Todo later"), comment("a Kludge"), comment("fine"),
                                  comment("this is a HACK"), comment("Workaround for bug")};
    const auto base = detect_satd(in, kw);
    for (auto& c : in) {
        std::transform(c.raw_text.begin(), c.raw_text.end(), c.raw_text.begin(),
                       [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    }
    const auto upper = detect_satd(in, kw);
    ASSERT_EQ(base.size(), upper.size());
    for (std::size_t i = 0; i < base.size(); ++i) EXPECT_EQ(base[i].matched_keywords, upper[i].matched_keywords);

    std::vector<SourceComment> again;
    for (const auto& s : upper) again.push_back(s.comment);
    EXPECT_EQ(detect_satd(again, kw).size(), upper.size());
}

TEST(DetectSatd, AddingAPatternNeverRemovesAComment) {
    std::mt19937_64 rng(8);
    const char* words[] = {"todo", "fix", "later", "ugly", "build", "temp", "hack", "ok", "xxx", "note"};
    std::vector<SourceComment> in;
    for (int i = 0; i < 200; ++i) {
        std::string t;
        for (int k = 0; k < 3; ++k) t += std::string(words[rng() % std::size(words)]) + " ";
        in.push_back(comment(t, static_cast<std::size_t>(i + 1)));
    }
    std::vector<std::string> pats{"todo"};
    std::set<std::size_t> previous;
    for (const char* extra : {"fix", "ugly", "temp", "xxx"}) {
        pats.push_back(extra);
        std::set<std::size_t> now;
        for (const auto& s : detect_satd(in, KeywordSet(pats))) now.insert(s.comment.start_line);
        EXPECT_TRUE(std::includes(now.begin(), now.end(), previous.begin(), previous.end()));
        previous = now;
    }
}

TEST(SampleSize, LargePopulationGives384) {
    EXPECT_EQ(validation_sample_size(2'564'906, 0.95, 0.05), 384u);
    EXPECT_EQ(cochran_oracle(2'564'906, 1.959963984540054, 0.05), 384u);
}

TEST(SampleSize, SmallPopulationIsFullyCovered) {
    EXPECT_EQ(validation_sample_size(10, 0.95, 0.05), 10u);
    EXPECT_EQ(validation_sample_size(1, 0.99, 0.01), 1u);
}

TEST(SampleSize, MatchesFormulaOracle) {
    const std::pair<double, double> levels[] = {
        {0.90, 1.6448536269514722}, {0.95, 1.959963984540054}, {0.99, 2.5758293035489004}};
    for (const auto& [conf, z] : levels) {
        for (std::size_t n : {1u, 2u, 7u, 50u, 383u, 1000u, 12345u, 999999u}) {
            for (double e : {0.01, 0.03, 0.05, 0.1}) {
                const auto got = validation_sample_size(n, conf, e);
                EXPECT_EQ(got, cochran_oracle(static_cast<double>(n), z, e)) << n << " " << conf << " " << e;
                EXPECT_LE(got, n);
            }
        }
    }
}

TEST(SampleSize, RejectsUnsupportedParameters) {
    EXPECT_THROW(validation_sample_size(100, 0.8, 0.05), ConfigError);
    EXPECT_THROW(validation_sample_size(100, 0.95, 0.0), ConfigError);
    EXPECT_THROW(validation_sample_size(0, 0.95, 0.05), Error);
}

TEST(Sampling, DeterministicDistinctAndSized) {
    const auto pop = population(1000);
    const auto a = sample_for_validation(pop, 0.95, 0.05, 42);
    const auto b = sample_for_validation(pop, 0.95, 0.05, 42);
    const auto c = sample_for_validation(pop, 0.95, 0.05, 43);
    ASSERT_EQ(a.size(), validation_sample_size(1000, 0.95, 0.05));
    std::set<std::string> ids;
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].id(), b[i].id());
        ids.insert(a[i].id());
    }
    EXPECT_EQ(ids.size(), a.size());
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) differs |= a[i].id() != c[i].id();
    EXPECT_TRUE(differs);
    EXPECT_TRUE(std::is_sorted(a.begin(), a.end(),
                               [](const auto& x, const auto& y) { return x.start_line < y.start_line; }));
}

TEST(KeywordDistribution, Examples) {
    std::unordered_map<std::string, SATDComment> by_id;
    auto add = [&](const SourceComment& c, std::vector<std::string> kws) {
        by_id[c.id()] = SATDComment{c, std::move(kws)};
        return c.id();
    };
    CloneGroup g1{1, {add(comment("todo a", 1), {"todo"}), add(comment("todo b", 2), {"todo"})}};
    CloneGroup g2{2, {add(comment("todo c", 3), {"todo"}), add(comment("fixme d", 4), {"fixme"})}};
    const std::vector<CloneGroup> groups{g1, g2};
    const auto d = keyword_distribution(groups, by_id);
    EXPECT_EQ(d.at("todo"), 2u);
    EXPECT_EQ(d.at("fixme"), 1u);
    EXPECT_EQ(d.size(), 2u);
    EXPECT_TRUE(keyword_distribution({}, by_id).empty());
}

TEST(AdjacentBaseline, NearestNonSatdAboveAndBelow) {
    const KeywordSet kw({"todo"});
    const std::vector<SourceComment> in{comment("plain a", 1), comment("plain b", 3), comment("todo x", 5),
                                        comment("todo y", 7),  comment("plain c", 9), comment("plain d", 11),
                                        comment("plain other", 2, "other.cmake")};
    const auto out = select_adjacent_non_satd(in, kw);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].raw_text, "plain b");
    EXPECT_EQ(out[1].raw_text, "plain c");
}
