#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "satdmine/io.hpp"

#include "satdmine/authorship.hpp"

namespace satdmine::testing {

inline std::filesystem::path fixture_dir() { return SATDMINE_FIXTURE_DIR; }
inline std::filesystem::path data_dir() { return SATDMINE_DATA_DIR; }

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag = "satdmine") {
        static std::atomic<unsigned> counter{0};
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                (tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

// Builds the fixture repositories into `dest` with the bundled script.
inline void build_fixture_repos(const std::filesystem::path& dest) {
    const auto r = authorship::run_process(
        {"bash", (fixture_dir() / "build_fixture_repos.sh").string(), (fixture_dir() / "corpus").string(),
         dest.string()});
    if (r.exit_code != 0) throw std::runtime_error("fixture script failed: " + r.err);
}

// Deterministic environment for scripted git commits.
inline void git_commit_env(const std::string& name, const std::string& email, const std::string& date) {
    setenv("GIT_CONFIG_NOSYSTEM", "1", 1);
    setenv("GIT_CONFIG_GLOBAL", "/dev/null", 1);
    setenv("GIT_AUTHOR_NAME", name.c_str(), 1);
    setenv("GIT_AUTHOR_EMAIL", email.c_str(), 1);
    setenv("GIT_AUTHOR_DATE", date.c_str(), 1);
    setenv("GIT_COMMITTER_NAME", name.c_str(), 1);
    setenv("GIT_COMMITTER_EMAIL", email.c_str(), 1);
    setenv("GIT_COMMITTER_DATE", date.c_str(), 1);
}

// Five-commit repository with a known line-range history for CMakeLists.txt:
//   c1 Bob    project(demo), set(A 1)
//   c2 Bob    two "# TODO remove this hack" comments and set(B 2)
//   c3 Alice  "# FIXME check C" and set(C 3)   (Alice's first commit)
//   c4 Bob    cmake_minimum_required inserted at the top (moves everything)
//   c5 Alice  set(A 1) -> set(A 10)
// Final comment lines: 3 and 5 (introduced in c2), 7 (introduced in c3).
struct ScriptedRepo {
    std::filesystem::path root;
    std::vector<std::string> shas;  // c1..c5
};

inline ScriptedRepo build_five_commit_repo(const std::filesystem::path& root) {
    auto git = [&](std::vector<std::string> args) {
        args.insert(args.begin(), {"git", "-C", root.string()});
        const auto r = authorship::run_process(args);
        if (r.exit_code != 0) throw std::runtime_error("git failed: " + r.err);
        return r.out;
    };
    std::filesystem::create_directories(root);
    git_commit_env("Bob", "bob@example.org", "2020-01-01T00:00:00Z");
    git({"-c", "init.defaultBranch=main", "init", "-q"});
    const std::string steps[5][4] = {
        {"Bob", "bob@example.org", "2020-01-01T00:00:00Z", "project(demo)\nset(A 1)\n"},
        {"Bob", "bob@example.org", "2020-01-02T00:00:00Z",
         "project(demo)\n# TODO remove this hack\nset(A 1)\n# TODO remove this hack\nset(B 2)\n"},
        {"Alice", "alice@example.org", "2020-01-03T00:00:00Z",
         "project(demo)\n# TODO remove this hack\nset(A 1)\n# TODO remove this hack\nset(B 2)\n"
         "# FIXME check C\nset(C 3)\n"},
        {"Bob", "bob@example.org", "2020-01-04T00:00:00Z",
         "cmake_minimum_required(VERSION 3.10)\nproject(demo)\n# TODO remove this hack\nset(A 1)\n"
         "# TODO remove this hack\nset(B 2)\n# FIXME check C\nset(C 3)\n"},
        {"Alice", "alice@example.org", "2020-01-05T00:00:00Z",
         "cmake_minimum_required(VERSION 3.10)\nproject(demo)\n# TODO remove this hack\nset(A 10)\n"
         "# TODO remove this hack\nset(B 2)\n# FIXME check C\nset(C 3)\n"},
    };
    ScriptedRepo repo{root, {}};
    int n = 0;
    for (const auto& step : steps) {
        io::write_file(root / "CMakeLists.txt", step[3]);
        git_commit_env(step[0], step[1], step[2]);
        git({"add", "-A"});
        git({"-c", "commit.gpgsign=false", "commit", "-q", "-m", "step " + std::to_string(++n)});
        auto sha = git({"rev-parse", "HEAD"});
        sha.erase(sha.find_last_not_of("\n") + 1);
        repo.shas.push_back(sha);
    }
    return repo;
}

}  // namespace satdmine::testing
