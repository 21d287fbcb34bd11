#pragma once

#include <random>
#include <string>
#include <vector>

#include "satdmine/types.hpp"

namespace satdmine::bench {

// Synthetic SATD-like comments drawn from a small vocabulary, with some
// exact and near duplicates so clustering has work to do.
inline std::vector<SATDComment> synthetic_comments(std::size_t n, std::uint64_t seed = 1) {
    static const char* words[] = {"TODO", "FIXME",   "remove", "this",  "hack",   "once",    "upstream",
                                  "fixes", "the",    "build",  "flags", "broken", "on",      "windows",
                                  "work",  "around", "cmake",  "bug",   "pthread", "library", "version"};
    std::mt19937_64 rng(seed);
    std::vector<SATDComment> out;
    std::vector<std::string> originals;
    for (std::size_t i = 0; i < n; ++i) {
        std::string text;
        if (!originals.empty() && rng() % 3 == 0) {
            text = originals[rng() % originals.size()];
            if (rng() % 2) text += " " + std::string(words[rng() % std::size(words)]);
        } else {
            const std::size_t len = 3 + rng() % 8;
            for (std::size_t k = 0; k < len; ++k) text += std::string(k ? " " : "") + words[rng() % std::size(words)];
            originals.push_back(text);
        }
        SATDComment c;
        c.comment.repo_id = "bench/r" + std::to_string(i % 50);
        c.comment.relative_path = "CMakeLists.txt";
        c.comment.start_line = c.comment.end_line = i + 1;
        c.comment.raw_text = text;
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace satdmine::bench
