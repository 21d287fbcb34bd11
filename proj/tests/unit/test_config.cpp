#include <gtest/gtest.h>

#include "satdmine/config.hpp"
#include "test_support.hpp"

using namespace satdmine;
using namespace satdmine::config;
using satdmine::testing::TempDir;

TEST(Toml, ScalarsTablesAndArrays) {
    const auto j = parse_toml(
        "# comment\nname = \"demo\" # trailing\nseed = 1_000\nratio = 0.25\nflag = true\n"
        "[context]\nsensitivity_windows = [5, 10, 15]\nlabel = 'raw\\path'\n");
    EXPECT_EQ(j["name"], "demo");
    EXPECT_EQ(j["seed"], 1000);
    EXPECT_DOUBLE_EQ(j["ratio"].get<double>(), 0.25);
    EXPECT_EQ(j["flag"], true);
    EXPECT_EQ(j["context"]["sensitivity_windows"], nlohmann::json::array({5, 10, 15}));
    EXPECT_EQ(j["context"]["label"], "raw\\path");
}

TEST(Toml, SyntaxErrorsNameTheLine) {
    try {
        parse_toml("a = 1\nb = \n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_toml("a = 1\na = 2\n"), ConfigError);
    EXPECT_THROW(parse_toml("[t]\n[t]\n"), ConfigError);
    EXPECT_THROW(parse_toml("when = 2020-01-01\n"), ConfigError);
}

TEST(FromJson, DefaultsAndOverrides) {
    const auto c = from_json(nlohmann::json::parse(R"({"manifest": "m.json", "filter": {"min_commits": 5},
        "clustering": {"eps": 0.2}, "context": {"df_scope": "group"},
        "authorship": {"counting": "full_dag"}})"),
                             "/base");
    EXPECT_EQ(c.manifest_path, std::filesystem::path("/base/m.json"));
    EXPECT_EQ(c.filter.min_commits, 5);
    EXPECT_EQ(c.filter.min_comment_lines, 60);
    EXPECT_DOUBLE_EQ(c.clustering.eps, 0.2);
    EXPECT_DOUBLE_EQ(c.clustering.similarity_gate, 0.8);
    EXPECT_EQ(c.df_scope, DfScope::Group);
    EXPECT_EQ(c.counting, authorship::CommitCounting::FullDag);
    EXPECT_EQ(c.context_window, 5u);
    EXPECT_EQ(c.seed, 42u);
}

TEST(FromJson, AbsolutePathsKept) {
    const auto c = from_json(nlohmann::json::parse(R"({"manifest": "/abs/m.json"})"), "/base");
    EXPECT_EQ(c.manifest_path, std::filesystem::path("/abs/m.json"));
}

TEST(FromJson, UnknownKeysAndBadValuesRejected) {
    EXPECT_THROW(from_json(nlohmann::json::parse(R"({"mystery": 1})"), ""), ConfigError);
    EXPECT_THROW(from_json(nlohmann::json::parse(R"({"filter": {"min_comits": 1}})"), ""), ConfigError);
    EXPECT_THROW(from_json(nlohmann::json::parse(R"({"seed": "x"})"), ""), ConfigError);
    EXPECT_THROW(from_json(nlohmann::json::parse(R"({"context": {"df_scope": "repo"}})"), ""), ConfigError);
    EXPECT_THROW(from_json(nlohmann::json::parse(R"({"filter": 3})"), ""), ConfigError);
}

TEST(Validate, RangesAndFiles) {
    TempDir dir;
    io::write_file(dir / "m.json", "[]");
    PipelineConfig c;
    c.manifest_path = dir / "m.json";
    EXPECT_NO_THROW(c.validate());

    auto bad = c;
    bad.confidence = 0.97;
    EXPECT_THROW(bad.validate(), ConfigError);
    bad = c;
    bad.jobs = 0;
    EXPECT_THROW(bad.validate(), ConfigError);
    bad = c;
    bad.comparisons = {"uad", "vibes"};
    EXPECT_THROW(bad.validate(), ConfigError);
    bad = c;
    bad.keywords_path = dir / "missing.txt";
    EXPECT_THROW(bad.validate(), ConfigError);
    bad = c;
    bad.vectorizer = "word2vec";
    EXPECT_THROW(bad.validate(), ConfigError);
    bad = c;
    bad.manifest_path = dir / "nope.json";
    EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(Load, FixtureTomlResolvesRelativeToItsDirectory) {
    const auto c = load(satdmine::testing::fixture_dir() / "pipeline.toml");
    EXPECT_EQ(c.manifest_path, satdmine::testing::fixture_dir() / "manifest.json");
    ASSERT_TRUE(c.taxonomy_labels_path);
    EXPECT_EQ(*c.taxonomy_labels_path, satdmine::testing::fixture_dir() / "taxonomy_labels.csv");
    EXPECT_EQ(c.seed, 7u);
    EXPECT_EQ(c.filter.min_commits, 1);
    EXPECT_EQ(c.sensitivity_windows, (std::vector<std::size_t>{5, 10, 15, 20}));
}

TEST(Load, JsonAndTomlAgree) {
    TempDir dir;
    io::write_file(dir / "m.json", "[]");
    io::write_file(dir / "c.toml", "manifest = \"m.json\"\nseed = 9\n[clustering]\neps = 0.15\n");
    io::write_file(dir / "c.json", R"({"manifest": "m.json", "seed": 9, "clustering": {"eps": 0.15}})");
    EXPECT_EQ(load(dir / "c.toml").to_json(), load(dir / "c.json").to_json());
    EXPECT_THROW(load(dir / "absent.toml"), ConfigError);
    io::write_file(dir / "broken.json", "{");
    EXPECT_THROW(load(dir / "broken.json"), ConfigError);
}

TEST(ToJson, PathsReducedToFileNames) {
    PipelineConfig c;
    c.manifest_path = "/very/long/prefix/manifest.json";
    c.keywords_path = "/elsewhere/k.txt";
    const auto j = c.to_json();
    EXPECT_EQ(j["manifest"], "manifest.json");
    EXPECT_EQ(j["detection"]["keywords"], "k.txt");
    EXPECT_FALSE(j.contains("output_dir"));
    EXPECT_FALSE(j.contains("jobs"));
}
