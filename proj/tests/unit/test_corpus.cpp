#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "satdmine/corpus.hpp"
#include "satdmine/io.hpp"
#include "test_support.hpp"

using namespace satdmine;
using satdmine::testing::TempDir;
namespace fs = std::filesystem;

namespace {

void touch(const fs::path& p, std::string_view content = "x\n") { io::write_file(p, content); }

ProjectRecord passing_project(const std::string& id) {
    ProjectRecord p;
    p.repo_id = id;
    p.primary_language = "C";
    p.commit_count = 100;
    p.issue_count = 1;
    p.contributor_count = 3;
    p.last_commit_timestamp = 1'000'000'000;
    p.is_fork = false;
    return p;
}

corpus::FilterConfig config_at(std::int64_t reference) {
    corpus::FilterConfig cfg;
    cfg.reference_timestamp = reference;
    return cfg;
}

corpus::BuildFileIndex index_with(const std::string& id, std::size_t lines, std::size_t comment_lines) {
    BuildFileRecord r;
    r.repo_id = id;
    r.relative_path = "CMakeLists.txt";
    r.line_count = lines;
    r.comment_line_count = comment_lines;
    return {{id, {r}}};
}

}  // namespace

TEST(Conventions, DefaultsClassifyBasenames) {
    const auto c = corpus::ConventionSet::defaults();
    EXPECT_EQ(c.classify("pom.xml"), BuildTool::Maven);
    EXPECT_EQ(c.classify("maven.xml"), BuildTool::Maven);
    EXPECT_EQ(c.classify("maven2.xml"), BuildTool::Maven);
    EXPECT_EQ(c.classify("maven4.xml"), std::nullopt);
    EXPECT_EQ(c.classify("build.xml"), BuildTool::Ant);
    EXPECT_EQ(c.classify("ivy.xml"), BuildTool::Ivy);
    EXPECT_EQ(c.classify("CMakeLists.txt"), BuildTool::Cmake);
    EXPECT_EQ(c.classify("FindFoo.cmake"), BuildTool::Cmake);
    EXPECT_EQ(c.classify("configure.ac"), BuildTool::Autotools);
    EXPECT_EQ(c.classify("configure.in"), BuildTool::Autotools);
    EXPECT_EQ(c.classify("Makefile.am"), BuildTool::Autotools);
    EXPECT_EQ(c.classify("aclocal.m4"), BuildTool::Autotools);
    EXPECT_EQ(c.classify("ax_pthread.m4"), BuildTool::Autotools);
    EXPECT_EQ(c.classify("cmakelists.txt"), std::nullopt);
    EXPECT_EQ(c.classify("README.md"), std::nullopt);
}

TEST(IdentifyBuildFiles, PomAndNestedCMake) {
    TempDir dir;
    touch(dir / "pom.xml", "<project/>\n");
    touch(dir.path() / "src" / "CMakeLists.txt", "project(x)\n");
    const auto files = corpus::identify_build_files(dir.path(), "r");
    ASSERT_EQ(files.size(), 2u);
    EXPECT_EQ(files[0].relative_path, "pom.xml");
    EXPECT_EQ(files[0].build_tool, BuildTool::Maven);
    EXPECT_EQ(files[1].relative_path, "src/CMakeLists.txt");
    EXPECT_EQ(files[1].build_tool, BuildTool::Cmake);
}

TEST(IdentifyBuildFiles, Maven2Xml) {
    TempDir dir;
    touch(dir / "maven2.xml", "<project/>\n");
    const auto files = corpus::identify_build_files(dir.path(), "r");
    ASSERT_EQ(files.size(), 1u);
    EXPECT_EQ(files[0].build_tool, BuildTool::Maven);
}

TEST(IdentifyBuildFiles, ReadmeOnlyGivesNothing) {
    TempDir dir;
    touch(dir / "README.md");
    EXPECT_TRUE(corpus::identify_build_files(dir.path(), "r").empty());
}

TEST(IdentifyBuildFiles, CountsLinesAndCommentLines) {
    TempDir dir;
    touch(dir / "CMakeLists.txt", "# one\n# two\nproject(x) # three\n\nset(A 1)\n");
    const auto files = corpus::identify_build_files(dir.path(), "r");
    ASSERT_EQ(files.size(), 1u);
    EXPECT_EQ(files[0].line_count, 5u);
    EXPECT_EQ(files[0].comment_line_count, 3u);
    EXPECT_LE(files[0].comment_line_count, files[0].line_count);
}

TEST(IdentifyBuildFiles, SkipsGitDirectory) {
    TempDir dir;
    touch(dir.path() / ".git" / "hooks" / "thing.m4");
    touch(dir / "configure.ac", "AC_INIT\n");
    const auto files = corpus::identify_build_files(dir.path(), "r");
    ASSERT_EQ(files.size(), 1u);
    EXPECT_EQ(files[0].relative_path, "configure.ac");
}

TEST(IdentifyBuildFiles, SymlinkCycleIsSkippedWithWarning) {
    TempDir dir;
    touch(dir.path() / "a" / "CMakeLists.txt", "project(x)\n");
    fs::create_directory_symlink(dir.path() / "a", dir.path() / "a" / "loop");
    std::vector<corpus::ScanWarning> warnings;
    const auto files =
        corpus::identify_build_files(dir.path(), "r", corpus::ConventionSet::defaults(), &warnings);
    ASSERT_EQ(files.size(), 1u);
    EXPECT_EQ(files[0].relative_path, "a/CMakeLists.txt");
    ASSERT_FALSE(warnings.empty());
    EXPECT_EQ(warnings[0].repo_id, "r");
}

TEST(IdentifyBuildFiles, UnterminatedXmlCommentKeptWithWarning) {
    TempDir dir;
    touch(dir / "pom.xml", "<project>\n<!-- never closed\n");
    std::vector<corpus::ScanWarning> warnings;
    const auto files =
        corpus::identify_build_files(dir.path(), "r", corpus::ConventionSet::defaults(), &warnings);
    ASSERT_EQ(files.size(), 1u);
    EXPECT_EQ(files[0].comment_line_count, 0u);
    EXPECT_EQ(warnings.size(), 1u);
}

TEST(IdentifyBuildFiles, MissingRootIsIoError) {
    TempDir dir;
    EXPECT_THROW(corpus::identify_build_files(dir / "absent", "r"), IoError);
}

TEST(IdentifyBuildFiles, OutputIsSortedAndDeterministic) {
    TempDir dir;
    for (const char* p : {"z/pom.xml", "b/CMakeLists.txt", "a/x.cmake", "Makefile.am", "m/ivy.xml"}) {
        touch(dir.path() / p, "\n");
    }
    const auto first = corpus::identify_build_files(dir.path(), "r");
    const auto second = corpus::identify_build_files(dir.path(), "r");
    ASSERT_EQ(first.size(), 5u);
    EXPECT_TRUE(std::is_sorted(first.begin(), first.end(),
                               [](const auto& a, const auto& b) { return a.relative_path < b.relative_path; }));
    for (std::size_t i = 0; i < first.size(); ++i) EXPECT_EQ(first[i].relative_path, second[i].relative_path);
}

TEST(FilterProjects, NinetyNineCommitsExcluded) {
    auto p = passing_project("a");
    p.commit_count = 99;
    const auto kept = corpus::filter_projects({p}, index_with("a", 500, 60), config_at(p.last_commit_timestamp));
    EXPECT_TRUE(kept.empty());
}

TEST(FilterProjects, BoundaryPassOnEveryCriterion) {
    auto p = passing_project("a");
    const auto kept = corpus::filter_projects({p}, index_with("a", 500, 60),
                                              config_at(p.last_commit_timestamp + 365 * 86400));
    ASSERT_EQ(kept.size(), 1u);
    EXPECT_EQ(kept[0].repo_id, "a");
}

TEST(FilterProjects, ForkExcluded) {
    auto p = passing_project("a");
    p.is_fork = true;
    EXPECT_TRUE(corpus::filter_projects({p}, index_with("a", 500, 60), config_at(p.last_commit_timestamp)).empty());
}

TEST(FilterProjects, StaleProjectExcluded) {
    auto p = passing_project("a");
    const auto report = corpus::evaluate_projects({p}, index_with("a", 500, 60),
                                                  config_at(p.last_commit_timestamp + 365 * 86400 + 1));
    EXPECT_TRUE(report.retained.empty());
    EXPECT_FALSE(report.evaluations[0].c2_recent);
}

TEST(FilterProjects, MissingBuildFilesFailC3AndAreRecorded) {
    auto p = passing_project("a");
    const auto report = corpus::evaluate_projects({p}, {}, config_at(p.last_commit_timestamp));
    ASSERT_EQ(report.evaluations.size(), 1u);
    EXPECT_TRUE(report.evaluations[0].missing_build_files);
    EXPECT_FALSE(report.evaluations[0].c3_build_lines);
    EXPECT_TRUE(report.retained.empty());
}

TEST(FilterProjects, TooFewCommentLinesExcluded) {
    auto p = passing_project("a");
    const auto report = corpus::evaluate_projects({p}, index_with("a", 500, 59), config_at(p.last_commit_timestamp));
    EXPECT_FALSE(report.evaluations[0].c4_comment_lines);
    EXPECT_TRUE(report.retained.empty());
}

TEST(FilterProjects, RaisingAThresholdNeverAddsProjects) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> small(0, 200);
    std::vector<ProjectRecord> manifest;
    corpus::BuildFileIndex index;
    const std::int64_t now = 2'000'000'000;
    for (int i = 0; i < 200; ++i) {
        ProjectRecord p;
        p.repo_id = "r" + std::to_string(i);
        p.commit_count = small(rng);
        p.issue_count = small(rng) % 5;
        p.contributor_count = small(rng) % 10;
        p.last_commit_timestamp = now - small(rng) * 3 * 86400;
        p.is_fork = small(rng) % 7 == 0;
        manifest.push_back(p);
        auto files = index_with(p.repo_id, static_cast<std::size_t>(small(rng) * 5),
                                static_cast<std::size_t>(small(rng) / 2));
        index.insert(files.begin(), files.end());
    }
    corpus::FilterConfig base = config_at(now);
    base.min_commits = 50;
    base.min_build_lines = 200;
    base.min_comment_lines = 20;
    const auto baseline = corpus::filter_projects(manifest, index, base);

    auto ids = [](const std::vector<ProjectRecord>& v) {
        std::vector<std::string> out;
        for (const auto& p : v) out.push_back(p.repo_id);
        return out;
    };
    const auto base_ids = ids(baseline);
    std::vector<corpus::FilterConfig> raised(6, base);
    raised[0].min_commits += 30;
    raised[1].min_issues += 2;
    raised[2].max_inactive_days -= 200;
    raised[3].min_contributors += 3;
    raised[4].min_build_lines += 300;
    raised[5].min_comment_lines += 40;
    for (const auto& cfg : raised) {
        for (const auto& id : ids(corpus::filter_projects(manifest, index, cfg))) {
            EXPECT_TRUE(std::find(base_ids.begin(), base_ids.end(), id) != base_ids.end()) << id;
        }
    }
}

TEST(ThresholdCurve, Examples) {
    using Curve = std::vector<std::pair<std::int64_t, std::size_t>>;
    EXPECT_EQ(corpus::threshold_curve({1, 2, 2, 5}), (Curve{{1, 4}, {2, 3}, {5, 1}}));
    EXPECT_EQ(corpus::threshold_curve({}), Curve{});
    EXPECT_EQ(corpus::threshold_curve({7, 7, 7}), (Curve{{7, 3}}));
}

TEST(ThresholdCurve, StrictlyDecreasingAndMatchesCounting) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> v(0, 40);
    for (int round = 0; round < 50; ++round) {
        std::vector<std::int64_t> values(static_cast<std::size_t>(v(rng)) + 1);
        for (auto& x : values) x = v(rng);
        const auto curve = corpus::threshold_curve(values);
        for (std::size_t i = 0; i < curve.size(); ++i) {
            const auto expected = static_cast<std::size_t>(
                std::count_if(values.begin(), values.end(), [&](auto x) { return x >= curve[i].first; }));
            EXPECT_EQ(curve[i].second, expected);
            if (i > 0) {
                EXPECT_LT(curve[i - 1].first, curve[i].first);
                EXPECT_GT(curve[i - 1].second, curve[i].second);
            }
        }
    }
}

TEST(Manifest, ParsesAndResolvesRelativePaths) {
    const auto j = nlohmann::json::parse(R"([{"repo_id":"o/a","primary_language":"C","commit_count":5,
        "issue_count":1,"contributor_count":2,"last_commit_timestamp":10,"is_fork":false,"stars":3,
        "local_path":"repos/a"}])");
    const auto m = corpus::parse_manifest(j, "/base");
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m[0].local_path, fs::path("/base/repos/a"));
    EXPECT_EQ(m[0].stars, 3);
}

TEST(Manifest, RejectsDuplicatesAndNegativeCounts) {
    const auto dup = nlohmann::json::parse(R"([{"repo_id":"a"},{"repo_id":"a"}])");
    EXPECT_THROW(corpus::parse_manifest(dup, "."), ConfigError);
    const auto neg = nlohmann::json::parse(R"([{"repo_id":"a","commit_count":-1}])");
    EXPECT_THROW(corpus::parse_manifest(neg, "."), ConfigError);
    EXPECT_THROW(corpus::parse_manifest(nlohmann::json::object(), "."), ConfigError);
}

TEST(Manifest, FixtureManifestLoads) {
    const auto m = corpus::load_manifest(satdmine::testing::fixture_dir() / "manifest.json");
    ASSERT_EQ(m.size(), 3u);
    EXPECT_EQ(m[0].repo_id, "fixture/cmake-app");
}
