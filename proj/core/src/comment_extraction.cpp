#include "satdmine/comment_extraction.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "satdmine/text.hpp"

namespace satdmine::extraction {
namespace {

enum class PieceKind { Line, Bracket };

struct Piece {
    std::size_t line;  // 1-based
    CommentSyntax syntax;
    PieceKind kind;
    bool full_line;    // only meaningful for PieceKind::Line
    bool opens;        // first piece of a bracket comment
    std::string body;
};

struct LexResult {
    std::vector<std::vector<Segment>> segments;
    std::vector<Piece> pieces;
};

bool is_dnl_at(std::string_view line, std::size_t pos) {
    if (line.compare(pos, 3, "dnl") != 0) return false;
    if (pos > 0 && text::is_word_char(line[pos - 1])) return false;
    const std::size_t after = pos + 3;
    return after >= line.size() || !text::is_word_char(line[after]);
}

// Length of a bracket opener ('[' '='* '[') starting at `pos`, and the '='
// count, or nullopt.
std::optional<std::pair<std::size_t, std::size_t>> bracket_open_at(std::string_view line,
                                                                  std::size_t pos) {
    if (pos >= line.size() || line[pos] != '[') return std::nullopt;
    std::size_t i = pos + 1;
    while (i < line.size() && line[i] == '=') ++i;
    if (i >= line.size() || line[i] != '[') return std::nullopt;
    return std::make_pair(i + 1 - pos, i - pos - 1);
}

std::size_t find_bracket_close(std::string_view line, std::size_t from, std::size_t eq) {
    const std::string closer = "]" + std::string(eq, '=') + "]";
    return line.find(closer, from);
}

void push(std::vector<Segment>& segs, SegmentKind kind, std::size_t b, std::size_t e) {
    if (e > b) segs.push_back({kind, b, e});
}

bool blank(std::string_view s) { return text::trim(s).empty(); }

LexResult lex_lines(std::span<const std::string> lines, const LineLexOptions& opt) {
    LexResult out;
    out.segments.resize(lines.size());
    std::optional<std::size_t> open_bracket_eq;

    for (std::size_t li = 0; li < lines.size(); ++li) {
        const std::string_view line = lines[li];
        auto& segs = out.segments[li];
        const std::size_t line_no = li + 1;
        std::size_t pos = 0;

        if (open_bracket_eq) {
            const std::size_t close = find_bracket_close(line, 0, *open_bracket_eq);
            if (close == std::string_view::npos) {
                push(segs, SegmentKind::Body, 0, line.size());
                out.pieces.push_back({line_no, CommentSyntax::Hash, PieceKind::Bracket, false, false,
                                      std::string(line)});
                continue;
            }
            push(segs, SegmentKind::Body, 0, close);
            push(segs, SegmentKind::Marker, close, close + *open_bracket_eq + 2);
            out.pieces.push_back({line_no, CommentSyntax::Hash, PieceKind::Bracket, false, false,
                                  std::string(line.substr(0, close))});
            pos = close + *open_bracket_eq + 2;
            open_bracket_eq.reset();
        }

        std::size_t code_start = pos;
        char quote = 0;
        while (pos < line.size()) {
            const char ch = line[pos];
            // M4 strips 'dnl' regardless of shell quoting.
            if (opt.dnl && is_dnl_at(line, pos)) {
                push(segs, SegmentKind::Code, code_start, pos);
                push(segs, SegmentKind::Marker, pos, pos + 3);
                push(segs, SegmentKind::Body, pos + 3, line.size());
                out.pieces.push_back({line_no, CommentSyntax::Dnl, PieceKind::Line,
                                      blank(line.substr(0, pos)), false,
                                      std::string(line.substr(pos + 3))});
                pos = code_start = line.size();
                break;
            }
            if (quote) {
                if (ch == '\\') {
                    pos = std::min(pos + 2, line.size());
                } else {
                    if (ch == quote) quote = 0;
                    ++pos;
                }
                continue;
            }
            if (ch == '\\') {
                pos = std::min(pos + 2, line.size());
                continue;
            }
            if (ch == '"' || ch == '\'') {
                quote = ch;
                ++pos;
                continue;
            }
            if (opt.hash && ch == '#') {
                push(segs, SegmentKind::Code, code_start, pos);
                if (opt.bracket_comments) {
                    if (auto open = bracket_open_at(line, pos + 1)) {
                        const auto [open_len, eq] = *open;
                        const std::size_t body_start = pos + 1 + open_len;
                        push(segs, SegmentKind::Marker, pos, body_start);
                        const std::size_t close = find_bracket_close(line, body_start, eq);
                        if (close == std::string_view::npos) {
                            push(segs, SegmentKind::Body, body_start, line.size());
                            out.pieces.push_back({line_no, CommentSyntax::Hash, PieceKind::Bracket, false,
                                                  true, std::string(line.substr(body_start))});
                            open_bracket_eq = eq;
                            pos = code_start = line.size();
                            break;
                        }
                        push(segs, SegmentKind::Body, body_start, close);
                        push(segs, SegmentKind::Marker, close, close + eq + 2);
                        out.pieces.push_back({line_no, CommentSyntax::Hash, PieceKind::Bracket, false, true,
                                              std::string(line.substr(body_start, close - body_start))});
                        pos = code_start = close + eq + 2;
                        continue;
                    }
                }
                std::size_t body_start = pos;
                while (body_start < line.size() && line[body_start] == '#') ++body_start;
                push(segs, SegmentKind::Marker, pos, body_start);
                push(segs, SegmentKind::Body, body_start, line.size());
                out.pieces.push_back({line_no, CommentSyntax::Hash, PieceKind::Line,
                                      blank(line.substr(0, pos)), false,
                                      std::string(line.substr(body_start))});
                pos = code_start = line.size();
                break;
            }
            ++pos;
        }
        push(segs, SegmentKind::Code, code_start, line.size());
    }
    return out;
}

struct Builder {
    SourceComment comment;
    std::vector<std::string> body_lines;
    bool mergeable = false;  // an open run of full-line comments
};

std::string finish_text(const std::vector<std::string>& body_lines) {
    std::string joined;
    for (std::size_t i = 0; i < body_lines.size(); ++i) {
        if (i) joined += '\n';
        joined += text::trim(body_lines[i]);
    }
    return std::string(text::trim(joined));
}

std::vector<SourceComment> assemble(const std::vector<Piece>& pieces, const ExtractOptions& options,
                                    const FileIdentity& identity) {
    std::vector<Builder> builders;
    // Index of the most recent comment of each syntax.
    std::optional<std::size_t> last[3];

    for (const Piece& p : pieces) {
        auto& last_idx = last[static_cast<int>(p.syntax)];
        Builder* prev = last_idx ? &builders[*last_idx] : nullptr;

        const bool continues_bracket = p.kind == PieceKind::Bracket && !p.opens;
        const bool same_line = prev && prev->comment.end_line == p.line;
        const bool merges_run = options.merge_adjacent && prev && prev->mergeable &&
                                p.kind == PieceKind::Line && p.full_line &&
                                prev->comment.end_line + 1 == p.line;

        if (continues_bracket || same_line || merges_run) {
            prev->body_lines.push_back(p.body);
            prev->comment.end_line = p.line;
            if (!merges_run) prev->mergeable = false;
        } else {
            Builder b;
            b.comment.repo_id = identity.repo_id;
            b.comment.relative_path = identity.relative_path;
            b.comment.build_tool = identity.tool;
            b.comment.start_line = p.line;
            b.comment.end_line = p.line;
            b.comment.syntax = p.syntax;
            b.body_lines.push_back(p.body);
            b.mergeable = p.kind == PieceKind::Line && p.full_line;
            builders.push_back(std::move(b));
            last_idx = builders.size() - 1;
        }
    }

    std::vector<SourceComment> out;
    out.reserve(builders.size());
    for (auto& b : builders) {
        b.comment.raw_text = finish_text(b.body_lines);
        out.push_back(std::move(b.comment));
    }
    std::stable_sort(out.begin(), out.end(), [](const SourceComment& a, const SourceComment& b) {
        if (a.start_line != b.start_line) return a.start_line < b.start_line;
        return a.syntax < b.syntax;
    });
    return out;
}

std::vector<SourceComment> extract_lines(std::span<const std::string> lines, const LineLexOptions& lex,
                                         const ExtractOptions& options, const FileIdentity& identity) {
    LexResult r = lex_lines(lines, lex);
    return assemble(r.pieces, options, identity);
}

}  // namespace

std::vector<std::vector<Segment>> segment_lines(std::span<const std::string> lines,
                                                const LineLexOptions& options) {
    return lex_lines(lines, options).segments;
}

namespace {

struct XmlComment {
    std::size_t start_line;
    std::size_t end_line;
    std::size_t body_begin;
    std::size_t body_end;
};

struct XmlScan {
    std::vector<Segment> segments;
    std::vector<XmlComment> comments;
};

XmlScan scan_xml(std::string_view text, std::string_view file_name) {
    XmlScan out;
    std::size_t pos = 0;
    std::size_t code_start = 0;
    std::size_t line = 1;
    auto advance_to = [&](std::size_t target) {
        line += static_cast<std::size_t>(std::count(text.begin() + static_cast<std::ptrdiff_t>(pos),
                                                    text.begin() + static_cast<std::ptrdiff_t>(target), '\n'));
        pos = target;
    };

    while (pos < text.size()) {
        const std::size_t lt = text.find('<', pos);
        if (lt == std::string_view::npos) {
            advance_to(text.size());
            break;
        }
        advance_to(lt);
        if (text.compare(pos, 9, "<![CDATA[") == 0) {
            const std::size_t close = text.find("]]>", pos + 9);
            advance_to(close == std::string_view::npos ? text.size() : close + 3);
            continue;
        }
        if (text.compare(pos, 4, "<!--") == 0) {
            const std::size_t start_line = line;
            const std::size_t close = text.find("-->", pos + 4);
            if (close == std::string_view::npos) {
                throw ExtractionError(std::string(file_name), start_line, "unterminated XML comment '<!--'");
            }
            if (pos > code_start) out.segments.push_back({SegmentKind::Code, code_start, pos});
            out.segments.push_back({SegmentKind::Marker, pos, pos + 4});
            if (close > pos + 4) out.segments.push_back({SegmentKind::Body, pos + 4, close});
            out.segments.push_back({SegmentKind::Marker, close, close + 3});
            const std::size_t body_begin = pos + 4;
            advance_to(close + 3);
            out.comments.push_back({start_line, line, body_begin, close});
            code_start = pos;
            continue;
        }
        advance_to(pos + 1);
    }
    if (text.size() > code_start) out.segments.push_back({SegmentKind::Code, code_start, text.size()});
    return out;
}

}  // namespace

std::vector<Segment> segment_xml(std::string_view text, std::string_view file_name) {
    return scan_xml(text, file_name).segments;
}

std::vector<SourceComment> extract_comments_hash(std::span<const std::string> lines, BuildTool tool,
                                                 const ExtractOptions& options,
                                                 const FileIdentity& identity) {
    if (tool != BuildTool::Cmake && tool != BuildTool::Autotools) {
        throw Error("hash comment lexer applies to CMake and Autotools files only");
    }
    LineLexOptions lex;
    lex.hash = true;
    lex.bracket_comments = tool == BuildTool::Cmake;
    return extract_lines(lines, lex, options, identity);
}

std::vector<SourceComment> extract_comments_dnl(std::span<const std::string> lines,
                                                const ExtractOptions& options,
                                                const FileIdentity& identity) {
    LineLexOptions lex;
    lex.hash = false;
    lex.dnl = true;
    return extract_lines(lines, lex, options, identity);
}

std::vector<SourceComment> extract_comments_xml(std::string_view text, const FileIdentity& identity) {
    const XmlScan scan = scan_xml(text, identity.relative_path);
    // A comment opening on the line where the previous one closed is folded
    // into it, keeping line spans disjoint.
    std::vector<Builder> builders;
    for (const XmlComment& c : scan.comments) {
        const auto body_lines =
            text::split_lines(text.substr(c.body_begin, c.body_end - c.body_begin));
        if (!builders.empty() && builders.back().comment.end_line == c.start_line) {
            auto& prev = builders.back();
            prev.body_lines.insert(prev.body_lines.end(), body_lines.begin(), body_lines.end());
            prev.comment.end_line = c.end_line;
            continue;
        }
        Builder b;
        b.comment.repo_id = identity.repo_id;
        b.comment.relative_path = identity.relative_path;
        b.comment.build_tool = identity.tool;
        b.comment.start_line = c.start_line;
        b.comment.end_line = c.end_line;
        b.comment.syntax = CommentSyntax::XmlBlock;
        b.body_lines = body_lines;
        builders.push_back(std::move(b));
    }
    std::vector<SourceComment> out;
    out.reserve(builders.size());
    for (auto& b : builders) {
        b.comment.raw_text = finish_text(b.body_lines);
        out.push_back(std::move(b.comment));
    }
    return out;
}

std::vector<SourceComment> extract_comments(const BuildFileRecord& file, std::string_view contents,
                                            const ExtractOptions& options) {
    const FileIdentity identity{file.repo_id, file.relative_path, file.build_tool};
    const std::string decoded = text::sanitize_utf8(contents);
    switch (file.build_tool) {
        case BuildTool::Cmake: {
            const auto lines = text::split_lines(decoded);
            return extract_comments_hash(lines, BuildTool::Cmake, options, identity);
        }
        case BuildTool::Autotools: {
            const auto lines = text::split_lines(decoded);
            LineLexOptions lex;
            lex.hash = true;
            lex.dnl = true;
            return extract_lines(lines, lex, options, identity);
        }
        case BuildTool::Maven:
        case BuildTool::Ant:
        case BuildTool::Ivy:
            return extract_comments_xml(decoded, identity);
    }
    return {};
}

std::size_t comment_line_count(std::span<const SourceComment> comments) {
    std::set<std::size_t> lines;
    for (const auto& c : comments) {
        for (std::size_t l = c.start_line; l <= c.end_line; ++l) lines.insert(l);
    }
    return lines.size();
}

}  // namespace satdmine::extraction
