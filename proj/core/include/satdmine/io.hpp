#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace satdmine::io {

std::string read_file(const std::filesystem::path& path);

// Writes bytes verbatim (binary mode, LF preserved). Parent directories are
// created as needed.
void write_file(const std::filesystem::path& path, std::string_view content);

std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path);

template <typename Range>
std::string to_jsonl(const Range& items) {
    std::string out;
    for (const auto& item : items) {
        out += nlohmann::json(item).dump();
        out += '\n';
    }
    return out;
}

// Stable JSON rendering for artifacts: two-space indent, trailing newline.
std::string dump_pretty(const nlohmann::json& j);

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(std::vector<std::string> fields);
    std::string str() const;
    std::size_t rows() const noexcept { return rows_; }

private:
    std::string buffer_;
    std::size_t columns_;
    std::size_t rows_ = 0;
};

std::string csv_escape(std::string_view field);

// RFC 4180 style: quoted fields may contain commas, doubled quotes and
// newlines. Returns every record including the header.
std::vector<std::vector<std::string>> parse_csv(std::string_view content);

// Fixed six-decimal rendering used in every CSV artifact.
std::string format_fixed(double value, int decimals = 6);

std::string sha256_hex(std::string_view data);

}  // namespace satdmine::io
