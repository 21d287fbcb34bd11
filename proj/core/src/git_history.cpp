#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstring>

#include "satdmine/authorship.hpp"

namespace satdmine::authorship {

ProcessResult run_process(const std::vector<std::string>& argv, const std::filesystem::path& cwd) {
    if (argv.empty()) throw Error("run_process: empty argv");
    int out_pipe[2];
    int err_pipe[2];
    if (pipe(out_pipe) != 0 || pipe(err_pipe) != 0) throw Error(std::string("pipe: ") + std::strerror(errno));

    const pid_t pid = fork();
    if (pid < 0) throw Error(std::string("fork: ") + std::strerror(errno));
    if (pid == 0) {
        dup2(out_pipe[1], STDOUT_FILENO);
        dup2(err_pipe[1], STDERR_FILENO);
        close(out_pipe[0]);
        close(out_pipe[1]);
        close(err_pipe[0]);
        close(err_pipe[1]);
        const int devnull = open("/dev/null", O_RDONLY);
        if (devnull >= 0) dup2(devnull, STDIN_FILENO);
        if (!cwd.empty() && chdir(cwd.c_str()) != 0) _exit(127);
        std::vector<char*> args;
        for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
        args.push_back(nullptr);
        execvp(args[0], args.data());
        _exit(127);
    }
    close(out_pipe[1]);
    close(err_pipe[1]);

    ProcessResult result;
    std::array<pollfd, 2> fds{{{out_pipe[0], POLLIN, 0}, {err_pipe[0], POLLIN, 0}}};
    std::array<std::string*, 2> sinks{&result.out, &result.err};
    std::array<char, 65536> buffer{};
    int open_fds = 2;
    while (open_fds > 0) {
        if (poll(fds.data(), fds.size(), -1) < 0) {
            if (errno == EINTR) continue;
            break;
        }
        for (std::size_t i = 0; i < fds.size(); ++i) {
            if (fds[i].fd < 0 || fds[i].revents == 0) continue;
            const ssize_t n = read(fds[i].fd, buffer.data(), buffer.size());
            if (n > 0) {
                sinks[i]->append(buffer.data(), static_cast<std::size_t>(n));
            } else if (n == 0 || errno != EINTR) {
                close(fds[i].fd);
                fds[i].fd = -1;
                --open_fds;
            }
        }
    }
    int status = 0;
    while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    return result;
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string strip_newlines(std::string s) {
    const auto b = s.find_first_not_of('\n');
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of('\n');
    return s.substr(b, e - b + 1);
}

ProcessResult git(const std::filesystem::path& root, std::vector<std::string> args) {
    args.insert(args.begin(), {"git", "-c", "core.quotepath=off"});
    return run_process(args, root);
}

}  // namespace

GitHistoryProvider::GitHistoryProvider(std::map<std::string, std::filesystem::path> repositories,
                                       CommitCounting counting)
    : repositories_(std::move(repositories)), counting_(counting) {}

const std::filesystem::path& GitHistoryProvider::root(const std::string& repo_id) const {
    auto it = repositories_.find(repo_id);
    if (it == repositories_.end()) throw ResolutionError("no local clone for repository " + repo_id);
    return it->second;
}

const CommitGraph& GitHistoryProvider::graph(const std::string& repo_id) {
    if (auto it = graphs_.find(repo_id); it != graphs_.end()) return it->second;
    const auto& path = root(repo_id);

    const auto shallow = git(path, {"rev-parse", "--is-shallow-repository"});
    if (shallow.exit_code != 0) throw ResolutionError(repo_id + ": not a git repository: " + shallow.err);
    if (strip_newlines(shallow.out) == "true") {
        throw ResolutionError(repo_id + ": shallow clone; authorship needs a full clone (try git fetch --unshallow)");
    }
    const auto head = git(path, {"rev-parse", "HEAD"});
    if (head.exit_code != 0) throw ResolutionError(repo_id + ": cannot resolve HEAD: " + head.err);

    const auto log = git(path, {"log", "--format=%H%x1f%P%x1f%an%x1f%ae%x1f%at%x1f%B%x1e", "HEAD"});
    if (log.exit_code != 0) throw ResolutionError(repo_id + ": git log failed: " + log.err);

    CommitGraph g;
    for (auto& record : split(log.out, '\x1e')) {
        record = strip_newlines(record);
        if (record.empty()) continue;
        auto fields = split(record, '\x1f');
        if (fields.size() < 6) throw ResolutionError(repo_id + ": malformed git log record");
        CommitInfo c;
        c.sha = fields[0];
        for (auto& p : split(fields[1], ' ')) {
            if (!p.empty()) c.parents.push_back(std::move(p));
        }
        c.author_name = fields[2];
        c.author_email = fields[3];
        c.authored_timestamp = std::stoll(fields[4]);
        c.message = strip_newlines(fields[5]);
        g.add(std::move(c));
    }
    g.set_head(strip_newlines(head.out));
    return graphs_.emplace(repo_id, std::move(g)).first->second;
}

std::vector<CommitInfo> GitHistoryProvider::line_history(const std::string& repo_id, const std::string& path,
                                                         std::size_t start_line, std::size_t end_line) {
    const auto& g = graph(repo_id);
    const std::string range = std::to_string(start_line) + "," + std::to_string(end_line) + ":" + path;
    const auto log = git(root(repo_id), {"log", "--format=%H%x1e", "--no-patch", "-L", range, "HEAD"});
    if (log.exit_code != 0) {
        throw ResolutionError(repo_id + ":" + path + ":" + std::to_string(start_line) + ": git log -L failed: " +
                              strip_newlines(log.err));
    }
    std::vector<CommitInfo> out;
    for (auto& sha : split(log.out, '\x1e')) {
        sha = strip_newlines(sha);
        if (!sha.empty()) out.push_back(g.at(sha));
    }
    return out;
}

std::int64_t GitHistoryProvider::prior_commit_count(const std::string& repo_id, const AuthorIdentity& author,
                                                    const std::string& sha) {
    return graph(repo_id).prior_commit_count(author, sha);
}

std::int64_t GitHistoryProvider::commits_to_head(const std::string& repo_id, const std::string& sha) {
    return graph(repo_id).commits_to_head(sha, counting_);
}

}  // namespace satdmine::authorship
