#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "satdmine/context_similarity.hpp"
#include "satdmine/text.hpp"

using namespace satdmine;
using namespace satdmine::context;

namespace {

SourceComment at_line(std::size_t start, std::size_t end = 0) {
    SourceComment c;
    c.repo_id = "r";
    c.relative_path = "CMakeLists.txt";
    c.start_line = start;
    c.end_line = end ? end : start;
    return c;
}

std::vector<std::string> numbered(std::size_t n) {
    std::vector<std::string> lines;
    for (std::size_t i = 1; i <= n; ++i) lines.push_back("stmt" + std::to_string(i));
    return lines;
}

StatementBlock block(std::string id, std::string text) {
    StatementBlock b;
    b.comment_id = std::move(id);
    b.upper_lines = {text};
    b.joined_text = std::move(text);
    return b;
}

// Brute force: count tokens, drop those in more than half the blocks,
// dense cosine over every pair of non-empty documents.
std::vector<double> naive_pair_scores(const std::vector<StatementBlock>& blocks) {
    std::vector<std::map<std::string, double>> counts;
    std::map<std::string, std::size_t> df;
    for (const auto& b : blocks) {
        std::map<std::string, double> c;
        std::string cur;
        for (char ch : b.joined_text + " ") {
            const bool sep = std::isspace(static_cast<unsigned char>(ch)) || std::ispunct(static_cast<unsigned char>(ch));
            if (sep) {
                if (!cur.empty()) c[cur] += 1.0;
                cur.clear();
            } else {
                cur += ch;
            }
        }
        for (const auto& [t, _] : c) ++df[t];
        counts.push_back(std::move(c));
    }
    for (auto& c : counts) {
        for (auto it = c.begin(); it != c.end();) {
            it = 2 * df[it->first] > blocks.size() ? c.erase(it) : std::next(it);
        }
    }
    std::vector<const std::map<std::string, double>*> usable;
    for (const auto& c : counts) {
        if (!c.empty()) usable.push_back(&c);
    }
    std::vector<double> scores;
    for (std::size_t i = 0; i < usable.size(); ++i) {
        for (std::size_t j = i + 1; j < usable.size(); ++j) {
            double d = 0, na = 0, nb = 0;
            for (const auto& [t, v] : *usable[i]) {
                na += v * v;
                if (auto it = usable[j]->find(t); it != usable[j]->end()) d += v * it->second;
            }
            for (const auto& [_, v] : *usable[j]) nb += v * v;
            scores.push_back(d / (std::sqrt(na) * std::sqrt(nb)));
        }
    }
    return scores;
}

}  // namespace

TEST(ExtractContext, FiveLinesEachSide) {
    const auto lines = numbered(20);
    const auto b = extract_context(lines, at_line(10), 5, {});
    EXPECT_EQ(b.upper_lines, (std::vector<std::string>{"stmt5", "stmt6", "stmt7", "stmt8", "stmt9"}));
    EXPECT_EQ(b.lower_lines, (std::vector<std::string>{"stmt11", "stmt12", "stmt13", "stmt14", "stmt15"}));
    EXPECT_EQ(b.joined_text, "stmt5\nstmt6\nstmt7\nstmt8\nstmt9\nstmt11\nstmt12\nstmt13\nstmt14\nstmt15");
}

TEST(ExtractContext, FileEdges) {
    const auto lines = numbered(3);
    auto b = extract_context(lines, at_line(1), 5, {});
    EXPECT_TRUE(b.upper_lines.empty());
    EXPECT_EQ(b.lower_lines.size(), 2u);
    b = extract_context(lines, at_line(3), 5, {});
    EXPECT_EQ(b.upper_lines.size(), 2u);
    EXPECT_TRUE(b.lower_lines.empty());
}

TEST(ExtractContext, SkipsOtherCommentsAndBlanks) {
    std::vector<std::string> lines{"a()", "b()", "", "# earlier", "# comment", "# target", "", "c()"};
    const std::vector<LineSpan> spans{{4, 5}, {6, 6}};
    const auto b = extract_context(lines, at_line(6), 5, spans);
    EXPECT_EQ(b.upper_lines, (std::vector<std::string>{"a()", "b()"}));
    EXPECT_EQ(b.lower_lines, (std::vector<std::string>{"c()"}));
}

TEST(ExtractContext, MultiLineCommentAndWindowBound) {
    const auto lines = numbered(30);
    const std::vector<LineSpan> spans{{10, 12}};
    const auto b = extract_context(lines, at_line(10, 12), 3, spans);
    EXPECT_EQ(b.upper_lines, (std::vector<std::string>{"stmt7", "stmt8", "stmt9"}));
    EXPECT_EQ(b.lower_lines, (std::vector<std::string>{"stmt13", "stmt14", "stmt15"}));
    EXPECT_THROW(extract_context(lines, at_line(2), 0, {}), Error);
}

TEST(Tokens, PunctuationRemovedCaseKept) {
    EXPECT_EQ(statement_tokens("set(CMAKE_C_FLAGS \"-O2\")"),
              (std::vector<std::string>{"set", "CMAKE", "C", "FLAGS", "O2"}));
    EXPECT_EQ(statement_tokens("<dependency>junit</dependency>"),
              (std::vector<std::string>{"dependency", "junit", "dependency"}));
}

TEST(Vectorize, ThreeOfFourIsRemovedTwoOfFourKept) {
    const std::vector<StatementBlock> blocks{block("1", "set alpha"), block("2", "set beta"),
                                             block("3", "set alpha"), block("4", "gamma")};
    const auto df = DocumentFrequency::from_blocks(blocks);
    EXPECT_EQ(df.frequency("set"), 3u);
    EXPECT_TRUE(df.too_common("set"));
    EXPECT_EQ(df.frequency("alpha"), 2u);
    EXPECT_FALSE(df.too_common("alpha"));

    const auto v = vectorize_statements(blocks);
    ASSERT_EQ(v.size(), 4u);
    // Vocabulary left: alpha, beta, gamma.
    EXPECT_EQ(v[0].dimension, 3u);
    EXPECT_NEAR(cosine_similarity(v[0], v[2]), 1.0, 1e-12);
    EXPECT_EQ(cosine_similarity(v[0], v[1]), 0.0);
}

TEST(Vectorize, IdenticalBlocksScoreOne) {
    const std::vector<StatementBlock> blocks{block("1", "a b c"), block("2", "a b c"), block("3", "x y"),
                                             block("4", "z w")};
    const auto v = vectorize_statements(blocks);
    EXPECT_NEAR(cosine_similarity(v[0], v[1]), 1.0, 1e-12);
}

TEST(Vectorize, EmptiedBlocksBecomeZeroVectors) {
    const std::vector<StatementBlock> blocks{block("1", "same"), block("2", "same"), block("3", "same other")};
    const auto v = vectorize_statements(blocks);
    EXPECT_TRUE(v[0].is_zero());
    EXPECT_FALSE(v[2].is_zero());
}

TEST(Vectorize, ReferenceFrequenciesOverrideGroup) {
    const std::vector<StatementBlock> group{block("1", "set x"), block("2", "set y")};
    DocumentFrequency corpus;
    for (const char* doc : {"set", "x", "y", "other"}) corpus.add_document(doc);
    const auto v = vectorize_statements(group, &corpus);
    EXPECT_EQ(v[0].dimension, 3u);
    EXPECT_NEAR(cosine_similarity(v[0], v[1]), 0.5, 1e-12);
    const auto local = vectorize_statements(group);
    EXPECT_EQ(local[0].dimension, 2u);
    EXPECT_EQ(cosine_similarity(local[0], local[1]), 0.0);
}

TEST(GroupSimilarity, MeanAndMedian) {
    const std::vector<StatementBlock> two{block("1", "a b"), block("2", "a b")};
    // Within the pair every token is in both blocks, so the group filter
    // empties them.
    const auto filtered = group_similarity(1, two);
    EXPECT_FALSE(filtered.similarity);
    EXPECT_EQ(filtered.zero_vectors, 2u);

    DocumentFrequency wide;
    for (int i = 0; i < 10; ++i) wide.add_document("filler" + std::to_string(i));
    wide.add_document("a b");
    const auto r = group_similarity(1, two, &wide);
    ASSERT_TRUE(r.similarity);
    EXPECT_DOUBLE_EQ(r.similarity->mean, 1.0);
    EXPECT_DOUBLE_EQ(r.similarity->median, 1.0);
}

TEST(GroupSimilarity, ThreeScores) {
    DocumentFrequency wide;
    for (int i = 0; i < 10; ++i) wide.add_document("filler" + std::to_string(i));
    // Pairs (1,2) = 1, (1,3) = 0, (2,3) = 0 -> mean 1/3, median 0.
    const std::vector<StatementBlock> blocks{block("1", "a"), block("2", "a"), block("3", "b")};
    const auto r = group_similarity(7, blocks, &wide);
    ASSERT_TRUE(r.similarity);
    EXPECT_EQ(r.similarity->group_id, 7);
    EXPECT_EQ(r.similarity->pair_scores, (std::vector<double>{1.0, 0.0, 0.0}));
    EXPECT_NEAR(r.similarity->mean, 1.0 / 3.0, 1e-15);
    EXPECT_EQ(r.similarity->median, 0.0);
}

TEST(GroupSimilarity, SkipsWithFewerThanTwoUsableBlocks) {
    const std::vector<StatementBlock> blocks{block("1", "a"), block("2", "")};
    const auto r = group_similarity(1, blocks);
    EXPECT_FALSE(r.similarity);
    EXPECT_FALSE(r.skip_reason.empty());
}

TEST(GroupSimilarity, MatchesNaiveOracleOnHandBuiltBlocks) {
    const std::vector<StatementBlock> blocks{
        block("1", "set(A 1) add_library(foo a.c)"), block("2", "set(B 1) add_library(bar b.c) foo"),
        block("3", "project(x) set(A 2)"), block("4", "install(TARGETS foo) a.c")};
    const auto r = group_similarity(1, blocks);
    ASSERT_TRUE(r.similarity);
    const auto expected = naive_pair_scores(blocks);
    ASSERT_EQ(r.similarity->pair_scores.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(r.similarity->pair_scores[i], expected[i], 1e-12);
}

TEST(GroupSimilarity, InvariantUnderReordering) {
    std::mt19937_64 rng(12);
    const char* vocab[] = {"set", "A", "B", "foo", "bar", "target", "link", "x", "y", "z"};
    for (int round = 0; round < 50; ++round) {
        std::vector<StatementBlock> blocks;
        for (int m = 0; m < 5; ++m) {
            std::string t;
            for (int k = 0; k < 6; ++k) t += std::string(vocab[rng() % std::size(vocab)]) + " ";
            blocks.push_back(block(std::to_string(m), t));
        }
        const auto a = group_similarity(1, blocks);
        std::shuffle(blocks.begin(), blocks.end(), rng);
        const auto b = group_similarity(1, blocks);
        ASSERT_EQ(a.similarity.has_value(), b.similarity.has_value());
        if (!a.similarity) continue;
        EXPECT_NEAR(a.similarity->mean, b.similarity->mean, 1e-12);
        EXPECT_NEAR(a.similarity->median, b.similarity->median, 1e-12);
        for (double s : a.similarity->pair_scores) {
            EXPECT_GE(s, 0.0);
            EXPECT_LE(s, 1.0);
        }
    }
}

TEST(PairwiseMeanMedian, ZeroVectorsScoreZero) {
    const auto v = bag_of_words(std::vector<std::pair<std::string, std::string>>{{"a", "fix build"},
                                                                                 {"b", "fix build"},
                                                                                 {"c", ""}});
    const auto [mean, median] = pairwise_mean_median(v);
    EXPECT_NEAR(mean, 1.0 / 3.0, 1e-12);
    EXPECT_EQ(median, 0.0);
}
