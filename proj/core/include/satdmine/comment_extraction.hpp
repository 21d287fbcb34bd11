#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "satdmine/types.hpp"

namespace satdmine::extraction {

/// A lexer's view of one region of input. Code, Marker and Body segments
/// tile their input exactly, so nothing is dropped during extraction.
enum class SegmentKind { Code, Marker, Body };

struct Segment {
    SegmentKind kind;
    std::size_t begin;  // byte offset, inclusive
    std::size_t end;    // byte offset, exclusive
};

struct LineLexOptions {
    bool hash = true;              // '#' to end of line, quote aware
    bool dnl = false;              // M4 'dnl' token to end of line
    bool bracket_comments = false; // CMake '#[[ ... ]]' / '#[=[ ... ]=]'
};

/// Per-line segmentation for the '#' and 'dnl' lexers. Offsets are relative
/// to each line.
std::vector<std::vector<Segment>> segment_lines(std::span<const std::string> lines,
                                                const LineLexOptions& options);

/// Segmentation of an XML document. Offsets are relative to `text`.
/// Throws ExtractionError on an unterminated '<!--'.
std::vector<Segment> segment_xml(std::string_view text, std::string_view file_name = {});

struct ExtractOptions {
    // Consecutive full-line comments of the same syntax become one comment.
    bool merge_adjacent = true;
};

struct FileIdentity {
    std::string repo_id;
    std::string relative_path;
    BuildTool tool = BuildTool::Cmake;
};

std::vector<SourceComment> extract_comments_hash(std::span<const std::string> lines, BuildTool tool,
                                                 const ExtractOptions& options = {},
                                                 const FileIdentity& identity = {});

std::vector<SourceComment> extract_comments_dnl(std::span<const std::string> lines,
                                                const ExtractOptions& options = {},
                                                const FileIdentity& identity = {});

std::vector<SourceComment> extract_comments_xml(std::string_view text,
                                                const FileIdentity& identity = {});

/// Decodes `contents` (lossy UTF-8) and runs the lexers for the file's build
/// tool. Autotools files get '#' and 'dnl' comments from a single pass, so
/// whichever marker comes first on a line owns the rest of it. Output is
/// sorted by start line.
std::vector<SourceComment> extract_comments(const BuildFileRecord& file, std::string_view contents,
                                            const ExtractOptions& options = {});

/// Number of distinct physical lines covered by the given comments.
std::size_t comment_line_count(std::span<const SourceComment> comments);

}  // namespace satdmine::extraction
