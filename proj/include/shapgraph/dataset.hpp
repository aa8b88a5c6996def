#pragma once

#include <optional>
#include <string>
#include <vector>

namespace shapgraph {

struct Instance {
    std::vector<double> values;
    std::optional<int> label;
    std::string id;

    int dim() const { return static_cast<int>(values.size()); }
};

struct Dataset {
    int d = 0;
    int class_count = 2;
    std::vector<Instance> instances;
    std::vector<std::string> feature_names;

    std::size_t size() const { return instances.size(); }
    bool has_labels() const;
    // Per-feature mean over all instances.
    std::vector<double> feature_means() const;
    // Throws on dimension or label-range violations.
    void validate() const;
};

// CSV with a header row; a trailing column named "label" holds integer class
// indices. Rejects non-finite feature values.
Dataset load_csv(const std::string& path);
void save_csv(const Dataset& ds, const std::string& path);

// Parse one comma-separated row of d feature values (used for fixed baselines).
std::vector<double> parse_csv_row(const std::string& row);

}  // namespace shapgraph
