#include "satdmine/text.hpp"

#include <cstdint>

namespace satdmine::text {
namespace {

constexpr std::string_view kReplacement = "\xEF\xBF\xBD";

// Returns the length of the well-formed sequence at s[i], or 0.
std::size_t valid_sequence_length(std::string_view s, std::size_t i, char32_t* cp) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    auto cont = [&](std::size_t k) -> int {
        if (i + k >= s.size()) return -1;
        const auto b = static_cast<unsigned char>(s[i + k]);
        return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
    };
    if (b0 < 0x80) {
        *cp = b0;
        return 1;
    }
    if (b0 >= 0xC2 && b0 <= 0xDF) {
        const int c1 = cont(1);
        if (c1 < 0) return 0;
        *cp = (char32_t(b0 & 0x1F) << 6) | char32_t(c1);
        return 2;
    }
    if (b0 >= 0xE0 && b0 <= 0xEF) {
        const int c1 = cont(1);
        const int c2 = cont(2);
        if (c1 < 0 || c2 < 0) return 0;
        const char32_t v = (char32_t(b0 & 0x0F) << 12) | (char32_t(c1) << 6) | char32_t(c2);
        if (v < 0x800 || (v >= 0xD800 && v <= 0xDFFF)) return 0;
        *cp = v;
        return 3;
    }
    if (b0 >= 0xF0 && b0 <= 0xF4) {
        const int c1 = cont(1);
        const int c2 = cont(2);
        const int c3 = cont(3);
        if (c1 < 0 || c2 < 0 || c3 < 0) return 0;
        const char32_t v = (char32_t(b0 & 0x07) << 18) | (char32_t(c1) << 12) |
                           (char32_t(c2) << 6) | char32_t(c3);
        if (v < 0x10000 || v > 0x10FFFF) return 0;
        *cp = v;
        return 4;
    }
    return 0;
}

}  // namespace

std::string sanitize_utf8(std::string_view bytes) {
    std::string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    while (i < bytes.size()) {
        char32_t cp = 0;
        const std::size_t n = valid_sequence_length(bytes, i, &cp);
        if (n == 0) {
            out += kReplacement;
            ++i;
        } else {
            out.append(bytes.substr(i, n));
            i += n;
        }
    }
    return out;
}

std::vector<std::string> split_lines(std::string_view content) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < content.size()) {
        std::size_t end = content.find('\n', start);
        if (end == std::string_view::npos) end = content.size();
        std::string_view line = content.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.emplace_back(line);
        start = end + 1;
    }
    return lines;
}

std::string_view trim(std::string_view s) noexcept {
    std::size_t b = 0;
    while (b < s.size() && is_space(s[b])) ++b;
    std::size_t e = s.size();
    while (e > b && is_space(s[e - 1])) --e;
    return s.substr(b, e - b);
}

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::vector<std::string> split_whitespace(std::string_view s) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_space(s[i])) ++i;
        const std::size_t b = i;
        while (i < s.size() && !is_space(s[i])) ++i;
        if (i > b) tokens.emplace_back(s.substr(b, i - b));
    }
    return tokens;
}

bool is_unicode_punctuation(char32_t cp) noexcept {
    if (cp < 0x80) {
        switch (cp) {
            case '!': case '"': case '#': case '%': case '&': case '\'':
            case '(': case ')': case '*': case ',': case '-': case '.':
            case '/': case ':': case ';': case '?': case '@': case '[':
            case '\\': case ']': case '_': case '{': case '}':
                return true;
            default:
                return false;
        }
    }
    switch (cp) {
        case 0xA1: case 0xA7: case 0xAB: case 0xB6: case 0xB7: case 0xBB: case 0xBF:
        case 0x37E: case 0x387: case 0x55A: case 0x55B: case 0x55C: case 0x55D:
        case 0x55E: case 0x55F: case 0x589: case 0x58A: case 0x5BE: case 0x5C0:
        case 0x5C3: case 0x5C6: case 0x5F3: case 0x5F4: case 0x60C: case 0x60D:
        case 0x61B: case 0x61F: case 0x66A: case 0x66B: case 0x66C: case 0x66D:
        case 0x6D4: case 0x964: case 0x965: case 0x970:
            return true;
        default:
            break;
    }
    if (cp >= 0x2010 && cp <= 0x2027) return true;
    if (cp >= 0x2030 && cp <= 0x2043) return true;
    if (cp >= 0x2045 && cp <= 0x2051) return true;
    if (cp >= 0x2053 && cp <= 0x205E) return true;
    if (cp == 0x207D || cp == 0x207E || cp == 0x208D || cp == 0x208E) return true;
    if (cp >= 0x2308 && cp <= 0x230B) return true;
    if (cp == 0x2329 || cp == 0x232A) return true;
    if (cp >= 0x2768 && cp <= 0x2775) return true;
    if (cp >= 0x27E6 && cp <= 0x27EF) return true;
    if (cp >= 0x2E00 && cp <= 0x2E4F) return true;
    if (cp >= 0x3001 && cp <= 0x3003) return true;
    if (cp >= 0x3008 && cp <= 0x3011) return true;
    if (cp >= 0x3014 && cp <= 0x301F) return true;
    if (cp == 0x3030 || cp == 0x303D || cp == 0x30A0 || cp == 0x30FB) return true;
    if (cp >= 0xFE10 && cp <= 0xFE19) return true;
    if (cp >= 0xFE30 && cp <= 0xFE4F) return true;
    if (cp >= 0xFE50 && cp <= 0xFE61) return cp != 0xFE53;
    if (cp == 0xFE63 || cp == 0xFE68 || cp == 0xFE6A || cp == 0xFE6B) return true;
    if (cp >= 0xFF01 && cp <= 0xFF03) return true;
    if (cp >= 0xFF05 && cp <= 0xFF0A) return true;
    if (cp >= 0xFF0C && cp <= 0xFF0F) return true;
    if (cp == 0xFF1A || cp == 0xFF1B || cp == 0xFF1F || cp == 0xFF20) return true;
    if (cp >= 0xFF3B && cp <= 0xFF3D) return true;
    if (cp == 0xFF3F || cp == 0xFF5B || cp == 0xFF5D) return true;
    if (cp >= 0xFF5F && cp <= 0xFF65) return true;
    return false;
}

std::string strip_statement_punctuation(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        char32_t cp = 0;
        std::size_t n = valid_sequence_length(s, i, &cp);
        if (n == 0) {
            out += s[i];
            ++i;
            continue;
        }
        const bool extra = cp == '#' || cp == '<' || cp == '>' || cp == '/' || cp == '=' ||
                           cp == '"' || cp == '\'';
        if (extra || is_unicode_punctuation(cp)) {
            out += ' ';
        } else {
            out.append(s.substr(i, n));
        }
        i += n;
    }
    return out;
}

}  // namespace satdmine::text
