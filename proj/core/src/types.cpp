#include "satdmine/types.hpp"

namespace satdmine {

std::string_view to_string(BuildTool tool) noexcept {
    switch (tool) {
        case BuildTool::Autotools: return "AUTOTOOLS";
        case BuildTool::Cmake: return "CMAKE";
        case BuildTool::Maven: return "MAVEN";
        case BuildTool::Ant: return "ANT";
        case BuildTool::Ivy: return "IVY";
    }
    return "UNKNOWN";
}

std::string_view display_name(BuildTool tool) noexcept {
    switch (tool) {
        case BuildTool::Autotools: return "Autotools";
        case BuildTool::Cmake: return "CMake";
        case BuildTool::Maven: return "Maven";
        case BuildTool::Ant: return "Ant";
        case BuildTool::Ivy: return "Ivy";
    }
    return "Unknown";
}

BuildTool parse_build_tool(std::string_view text) {
    for (BuildTool t : kAllBuildTools) {
        if (to_string(t) == text) return t;
    }
    throw Error("unknown build tool '" + std::string(text) + "'");
}

std::string_view to_string(CommentSyntax syntax) noexcept {
    switch (syntax) {
        case CommentSyntax::Hash: return "HASH";
        case CommentSyntax::Dnl: return "DNL";
        case CommentSyntax::XmlBlock: return "XML_BLOCK";
    }
    return "UNKNOWN";
}

CommentSyntax parse_comment_syntax(std::string_view text) {
    if (text == "HASH") return CommentSyntax::Hash;
    if (text == "DNL") return CommentSyntax::Dnl;
    if (text == "XML_BLOCK") return CommentSyntax::XmlBlock;
    throw Error("unknown comment syntax '" + std::string(text) + "'");
}

std::string SourceComment::id() const {
    return repo_id + ":" + relative_path + ":" + std::to_string(start_line) + ":" +
           std::string(to_string(syntax));
}

std::string_view to_string(RepoDimension d) noexcept {
    return d == RepoDimension::Internal ? "INTERNAL" : "EXTERNAL";
}

std::string_view to_string(ToolDimension d) noexcept {
    return d == ToolDimension::SameTool ? "SAME_TOOL" : "CROSS_TOOL";
}

std::string_view to_string(LanguageDimension d) noexcept {
    return d == LanguageDimension::SameLanguage ? "SAME_LANGUAGE" : "CROSS_LANGUAGE";
}

std::string_view to_string(GroupLabel l) noexcept {
    switch (l) {
        case GroupLabel::Unlabeled: return "UNLABELED";
        case GroupLabel::Satd: return "SATD";
        case GroupLabel::FalsePositive: return "FALSE_POSITIVE";
    }
    return "UNLABELED";
}

GroupLabel parse_group_label(std::string_view text) {
    if (text == "SATD") return GroupLabel::Satd;
    if (text == "FALSE_POSITIVE") return GroupLabel::FalsePositive;
    if (text == "UNLABELED") return GroupLabel::Unlabeled;
    throw Error("unknown group label '" + std::string(text) + "'");
}

void to_json(nlohmann::json& j, const ProjectRecord& p) {
    j = nlohmann::json{{"repo_id", p.repo_id},
                       {"primary_language", p.primary_language},
                       {"commit_count", p.commit_count},
                       {"issue_count", p.issue_count},
                       {"contributor_count", p.contributor_count},
                       {"last_commit_timestamp", p.last_commit_timestamp},
                       {"is_fork", p.is_fork},
                       {"stars", p.stars},
                       {"local_path", p.local_path.generic_string()}};
}

void from_json(const nlohmann::json& j, ProjectRecord& p) {
    j.at("repo_id").get_to(p.repo_id);
    p.primary_language = j.value("primary_language", std::string{});
    p.commit_count = j.value("commit_count", std::int64_t{0});
    p.issue_count = j.value("issue_count", std::int64_t{0});
    p.contributor_count = j.value("contributor_count", std::int64_t{0});
    p.last_commit_timestamp = j.value("last_commit_timestamp", std::int64_t{0});
    p.is_fork = j.value("is_fork", false);
    p.stars = j.value("stars", std::int64_t{0});
    p.local_path = j.value("local_path", std::string{});
}

void to_json(nlohmann::json& j, const BuildFileRecord& b) {
    j = nlohmann::json{{"repo_id", b.repo_id},
                       {"relative_path", b.relative_path},
                       {"build_tool", to_string(b.build_tool)},
                       {"line_count", b.line_count},
                       {"comment_line_count", b.comment_line_count}};
}

void from_json(const nlohmann::json& j, BuildFileRecord& b) {
    j.at("repo_id").get_to(b.repo_id);
    j.at("relative_path").get_to(b.relative_path);
    b.build_tool = parse_build_tool(j.at("build_tool").get<std::string>());
    j.at("line_count").get_to(b.line_count);
    j.at("comment_line_count").get_to(b.comment_line_count);
}

void to_json(nlohmann::json& j, const SourceComment& c) {
    j = nlohmann::json{{"comment_id", c.id()},
                       {"repo_id", c.repo_id},
                       {"relative_path", c.relative_path},
                       {"build_tool", to_string(c.build_tool)},
                       {"start_line", c.start_line},
                       {"end_line", c.end_line},
                       {"raw_text", c.raw_text},
                       {"syntax", to_string(c.syntax)}};
}

void from_json(const nlohmann::json& j, SourceComment& c) {
    j.at("repo_id").get_to(c.repo_id);
    j.at("relative_path").get_to(c.relative_path);
    c.build_tool = parse_build_tool(j.at("build_tool").get<std::string>());
    j.at("start_line").get_to(c.start_line);
    j.at("end_line").get_to(c.end_line);
    j.at("raw_text").get_to(c.raw_text);
    c.syntax = parse_comment_syntax(j.at("syntax").get<std::string>());
}

void to_json(nlohmann::json& j, const SATDComment& c) {
    to_json(j, c.comment);
    j["matched_keywords"] = c.matched_keywords;
}

void to_json(nlohmann::json& j, const CloneGroup& g) {
    auto opt = [](const auto& v) -> nlohmann::json {
        if (!v) return nullptr;
        return std::string(to_string(*v));
    };
    j = nlohmann::json{{"group_id", g.group_id},
                       {"member_ids", g.member_ids},
                       {"size", g.member_ids.size()},
                       {"repo_dimension", opt(g.repo_dimension)},
                       {"tool_dimension", opt(g.tool_dimension)},
                       {"language_dimension", opt(g.language_dimension)},
                       {"label", to_string(g.label)}};
}

void to_json(nlohmann::json& j, const IntroductionRecord& r) {
    j = nlohmann::json{{"comment_id", r.comment_id},
                       {"repo_id", r.repo_id},
                       {"commit_sha", r.commit_sha},
                       {"author_name", r.author_name},
                       {"author_email", r.author_email},
                       {"authored_timestamp", r.authored_timestamp},
                       {"commit_message", r.commit_message},
                       {"author_prior_commit_count", r.author_prior_commit_count},
                       {"commits_to_head", r.commits_to_head}};
}

void from_json(const nlohmann::json& j, IntroductionRecord& r) {
    j.at("comment_id").get_to(r.comment_id);
    j.at("repo_id").get_to(r.repo_id);
    j.at("commit_sha").get_to(r.commit_sha);
    j.at("author_name").get_to(r.author_name);
    j.at("author_email").get_to(r.author_email);
    j.at("authored_timestamp").get_to(r.authored_timestamp);
    j.at("commit_message").get_to(r.commit_message);
    j.at("author_prior_commit_count").get_to(r.author_prior_commit_count);
    j.at("commits_to_head").get_to(r.commits_to_head);
}

}  // namespace satdmine
