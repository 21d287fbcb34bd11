#include "satdmine/taxonomy.hpp"

#include <map>
#include <set>

#include "satdmine/io.hpp"
#include "satdmine/text.hpp"

namespace satdmine::taxonomy {

std::vector<std::string> Dimension::terms() const {
    std::vector<std::string> out;
    for (const auto& c : categories) {
        if (c.items.empty()) {
            out.push_back(c.name);
        } else {
            out.insert(out.end(), c.items.begin(), c.items.end());
        }
    }
    return out;
}

std::optional<std::string> Dimension::category_of(std::string_view term) const {
    for (const auto& c : categories) {
        if (c.items.empty() && c.name == term) return c.name;
        for (const auto& i : c.items) {
            if (i == term) return c.name;
        }
    }
    return std::nullopt;
}

namespace {

Dimension dimension_from_json(const std::string& name, const nlohmann::json& j) {
    Dimension d;
    d.name = name;
    for (const auto& c : j) {
        Category cat;
        cat.name = c.at("category").get<std::string>();
        cat.items = c.value("items", std::vector<std::string>{});
        d.categories.push_back(std::move(cat));
    }
    if (d.categories.empty()) throw ConfigError("taxonomy dimension '" + name + "' is empty");
    return d;
}

nlohmann::json dimension_to_json(const Dimension& d) {
    auto arr = nlohmann::json::array();
    for (const auto& c : d.categories) arr.push_back({{"category", c.name}, {"items", c.items}});
    return arr;
}

}  // namespace

const Taxonomy& Taxonomy::defaults() {
    static const Taxonomy t = [] {
        Taxonomy x;
        x.location = {"location",
                      {{"Externals",
                        {"Platform configuration", "Tool configuration", "Libraries and plugins",
                         "Artifact versioning"}},
                       {"Behavioural",
                        {"Dynamic settings", "Build variables", "Project metadata", "Multi-directory configuration",
                         "Logging"}},
                       {"File System", {"Logical file system", "Physical file system"}}}};
        x.reason = {"reason",
                    {{"Limitation", {"External tool limitation", "External library limitation", "Build tool limitation"}},
                     {"Configuration",
                      {"Compiler configuration", "Symbol visibility", "Platform-specific setting", "Feature existence"}},
                     {"Dependency", {"Missing dependency", "Internal dependency management", "Dependency conflict"}},
                     {"Code smell", {}},
                     {"Recursive call", {}},
                     {"Document", {"Specify metadata", "Licensing"}},
                     {"Release and install behaviors", {"Release", "Post-install"}},
                     {"No reason", {}}}};
        x.purpose = {"purpose",
                     {{"Document for later fix", {}},
                      {"Warning for future developers", {}},
                      {"Document suboptimal implementation choice", {}},
                      {"Document workaround", {}},
                      {"Placeholder for later extension", {}},
                      {"Silence build warnings", {}}}};
        return x;
    }();
    return t;
}

Taxonomy Taxonomy::from_json(const nlohmann::json& j) {
    Taxonomy t;
    t.location = dimension_from_json("location", j.at("location"));
    t.reason = dimension_from_json("reason", j.at("reason"));
    t.purpose = dimension_from_json("purpose", j.at("purpose"));
    return t;
}

Taxonomy Taxonomy::load(const std::filesystem::path& path) {
    try {
        return from_json(nlohmann::json::parse(io::read_file(path)));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path.string() + ": invalid taxonomy: " + e.what());
    }
}

nlohmann::json Taxonomy::to_json() const {
    return {{"location", dimension_to_json(location)},
            {"reason", dimension_to_json(reason)},
            {"purpose", dimension_to_json(purpose)}};
}

namespace {

// Case-insensitive lookup returning the canonical spelling.
std::string canonical_term(const Dimension& d, std::string_view value, std::size_t row) {
    const std::string wanted = text::to_lower_ascii(text::trim(value));
    for (const auto& t : d.terms()) {
        if (text::to_lower_ascii(t) == wanted) return t;
    }
    throw ConfigError("taxonomy labels row " + std::to_string(row) + ": unknown " + d.name + " '" +
                      std::string(value) + "'");
}

}  // namespace

std::vector<TaxonomyLabel> parse_labels_csv(std::string_view content, const Taxonomy& taxonomy) {
    std::vector<TaxonomyLabel> out;
    const auto rows = io::parse_csv(content);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const std::size_t row_no = i + 1;
        if (r.size() == 1 && text::trim(r[0]).empty()) continue;
        if (i == 0 && !r.empty() && text::trim(r[0]) == "group_id") continue;
        if (r.size() != 4) {
            throw ConfigError("taxonomy labels row " + std::to_string(row_no) + ": expected 4 fields, got " +
                              std::to_string(r.size()));
        }
        TaxonomyLabel label;
        try {
            label.group_id = std::stoll(std::string(text::trim(r[0])));
        } catch (const std::exception&) {
            throw ConfigError("taxonomy labels row " + std::to_string(row_no) + ": bad group_id '" + r[0] + "'");
        }
        label.location = canonical_term(taxonomy.location, r[1], row_no);
        label.reason = canonical_term(taxonomy.reason, r[2], row_no);
        label.purpose = canonical_term(taxonomy.purpose, r[3], row_no);
        out.push_back(std::move(label));
    }
    return out;
}

std::string FrequencyRow::frequency() const {
    return std::to_string(count) + " (" + std::to_string(percent) + "%)";
}

std::vector<FrequencyRow> ingest_taxonomy(std::span<const TaxonomyLabel> labels, std::span<const CloneGroup> groups,
                                          const Taxonomy& taxonomy) {
    std::set<std::int64_t> known;
    for (const auto& g : groups) known.insert(g.group_id);
    std::set<std::int64_t> seen;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto id = labels[i].group_id;
        if (!known.count(id)) {
            throw Error("taxonomy label " + std::to_string(i + 1) + ": unknown group_id " + std::to_string(id));
        }
        if (!seen.insert(id).second) {
            throw Error("taxonomy label " + std::to_string(i + 1) + ": group " + std::to_string(id) +
                        " labeled twice");
        }
    }

    std::vector<FrequencyRow> out;
    if (labels.empty()) return out;
    const std::size_t total = labels.size();
    // round(100 n / total), half away from zero, in integers
    auto percent = [&](std::size_t n) { return static_cast<long>((200 * n + total) / (2 * total)); };

    const std::pair<const Dimension*, std::string TaxonomyLabel::*> dims[] = {
        {&taxonomy.location, &TaxonomyLabel::location},
        {&taxonomy.reason, &TaxonomyLabel::reason},
        {&taxonomy.purpose, &TaxonomyLabel::purpose}};
    for (const auto& [dim, field] : dims) {
        std::map<std::string, std::size_t> counts;
        for (const auto& l : labels) {
            if (!dim->category_of(l.*field)) {
                throw ConfigError("taxonomy label for group " + std::to_string(l.group_id) + ": unknown " +
                                  dim->name + " '" + l.*field + "'");
            }
            ++counts[l.*field];
        }
        for (const auto& c : dim->categories) {
            FrequencyRow cat{dim->name, c.name, "", 0, 0};
            if (c.items.empty()) {
                cat.count = counts[c.name];
            } else {
                for (const auto& item : c.items) cat.count += counts[item];
            }
            cat.percent = percent(cat.count);
            out.push_back(cat);
            for (const auto& item : c.items) {
                out.push_back({dim->name, c.name, item, counts[item], percent(counts[item])});
            }
        }
    }
    return out;
}

}  // namespace satdmine::taxonomy
