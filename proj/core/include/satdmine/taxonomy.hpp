#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "satdmine/types.hpp"

namespace satdmine::taxonomy {

// A category with no items is itself a leaf term (e.g. "Code smell").
struct Category {
    std::string name;
    std::vector<std::string> items;
};

struct Dimension {
    std::string name;  // "location", "reason", "purpose"
    std::vector<Category> categories;

    // Leaf terms in table order.
    std::vector<std::string> terms() const;
    // Category owning `term`, or nullopt when the term is not in the vocabulary.
    std::optional<std::string> category_of(std::string_view term) const;
};

// 11 locations in 3 categories, 17 reasons in 8 categories, 6 purposes.
struct Taxonomy {
    Dimension location;
    Dimension reason;
    Dimension purpose;

    static const Taxonomy& defaults();
    static Taxonomy from_json(const nlohmann::json& j);
    static Taxonomy load(const std::filesystem::path& path);
    nlohmann::json to_json() const;
};

struct TaxonomyLabel {
    std::int64_t group_id = 0;
    std::string location;
    std::string reason;
    std::string purpose;
};

/// CSV "group_id,location,reason,purpose" with an optional header. Terms
/// must come from the vocabulary; violations raise ConfigError naming the row.
std::vector<TaxonomyLabel> parse_labels_csv(std::string_view content, const Taxonomy& taxonomy);

struct FrequencyRow {
    std::string dimension;
    std::string category;
    std::string term;  // empty for category rows
    std::size_t count = 0;
    long percent = 0;  // of all labeled groups, rounded half away from zero

    // "115 (58%)"
    std::string frequency() const;
};

/// Per-category and per-term counts in table order. Zero-count categories
/// are listed so tables line up across runs. Throws Error when a label
/// names a group not in `groups` or a group is labeled twice.
std::vector<FrequencyRow> ingest_taxonomy(std::span<const TaxonomyLabel> labels, std::span<const CloneGroup> groups,
                                          const Taxonomy& taxonomy = Taxonomy::defaults());

}  // namespace satdmine::taxonomy
