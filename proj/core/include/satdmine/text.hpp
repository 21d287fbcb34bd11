#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace satdmine::text {

// Lossy UTF-8 decode: every byte that does not start a well-formed sequence
// is replaced by U+FFFD. The result is always valid UTF-8.
std::string sanitize_utf8(std::string_view bytes);

// Splits on '\n' and drops one trailing '\r' per line. A final newline does
// not produce an extra empty line.
std::vector<std::string> split_lines(std::string_view content);

std::string_view trim(std::string_view s) noexcept;
std::string to_lower_ascii(std::string_view s);

inline bool is_ascii_alnum(char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

inline bool is_word_char(char c) noexcept { return is_ascii_alnum(c) || c == '_'; }

inline bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::vector<std::string> split_whitespace(std::string_view s);

// Unicode general category P* (connector, dash, open, close, initial,
// final and other punctuation). Covers ASCII, Latin-1 and the common
// punctuation blocks.
bool is_unicode_punctuation(char32_t cp) noexcept;

// Replaces punctuation with spaces, as used for bag-of-words over build
// statements and commit messages. The punctuation set is Unicode
// punctuation plus the symbols # < > / = " '. Case is untouched.
std::string strip_statement_punctuation(std::string_view s);

}  // namespace satdmine::text
