#include "shapgraph/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "shapgraph/errors.hpp"

namespace shapgraph {

bool Dataset::has_labels() const {
    if (instances.empty()) return false;
    for (const auto& x : instances)
        if (!x.label) return false;
    return true;
}

std::vector<double> Dataset::feature_means() const {
    std::vector<double> mean(static_cast<std::size_t>(d), 0.0);
    if (instances.empty()) return mean;
    for (const auto& x : instances)
        for (int i = 0; i < d; ++i) mean[i] += x.values[i];
    for (auto& m : mean) m /= static_cast<double>(instances.size());
    return mean;
}

void Dataset::validate() const {
    for (const auto& x : instances) {
        if (x.dim() != d)
            throw DimensionMismatch("instance '" + x.id + "' has " +
                                    std::to_string(x.dim()) + " values, expected " +
                                    std::to_string(d));
        for (double v : x.values)
            if (!std::isfinite(v))
                throw InvalidConfig("non-finite feature value in instance '" + x.id + "'");
        if (x.label && (*x.label < 0 || *x.label >= class_count))
            throw InvalidConfig("label " + std::to_string(*x.label) +
                                " outside [0, " + std::to_string(class_count) + ")");
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& cell) {
    try {
        std::size_t pos = 0;
        double v = std::stod(cell, &pos);
        if (pos != cell.size() && !trim(cell.substr(pos)).empty())
            throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw InvalidConfig("cannot parse numeric cell '" + cell + "'");
    }
}

}  // namespace

std::vector<double> parse_csv_row(const std::string& row) {
    std::vector<double> out;
    for (const auto& cell : split_csv_line(row)) out.push_back(parse_double(trim(cell)));
    return out;
}

Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open dataset file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw InvalidConfig("empty dataset file: " + path);
    auto header = split_csv_line(line);
    for (auto& h : header) h = trim(h);
    if (header.empty()) throw InvalidConfig("missing CSV header: " + path);

    bool has_label = !header.empty() && header.back() == "label";
    int d = static_cast<int>(header.size()) - (has_label ? 1 : 0);
    if (d < 1) throw InvalidConfig("dataset has no feature columns: " + path);

    Dataset ds;
    ds.d = d;
    ds.feature_names.assign(header.begin(), header.begin() + d);

    int max_label = -1;
    std::size_t row_index = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (static_cast<int>(cells.size()) != d + (has_label ? 1 : 0))
            throw InvalidConfig("row " + std::to_string(row_index + 1) + " has " +
                                std::to_string(cells.size()) + " cells, expected " +
                                std::to_string(d + (has_label ? 1 : 0)));
        Instance x;
        x.id = std::to_string(row_index);
        x.values.reserve(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            double v = parse_double(trim(cells[i]));
            if (!std::isfinite(v))
                throw InvalidConfig("non-finite value in row " + std::to_string(row_index + 1));
            x.values.push_back(v);
        }
        if (has_label) {
            double lv = parse_double(trim(cells.back()));
            int label = static_cast<int>(lv);
            if (static_cast<double>(label) != lv || label < 0)
                throw InvalidConfig("label must be a non-negative integer, got '" +
                                    cells.back() + "'");
            x.label = label;
            max_label = std::max(max_label, label);
        }
        ds.instances.push_back(std::move(x));
        ++row_index;
    }
    ds.class_count = std::max(2, max_label + 1);
    ds.validate();
    return ds;
}

void save_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidConfig("cannot write dataset file: " + path);
    out.precision(17);
    for (int i = 0; i < ds.d; ++i) {
        if (i) out << ',';
        out << (i < static_cast<int>(ds.feature_names.size()) ? ds.feature_names[i]
                                                              : "f" + std::to_string(i));
    }
    bool labels = ds.has_labels();
    if (labels) out << ",label";
    out << '\n';
    for (const auto& x : ds.instances) {
        for (int i = 0; i < ds.d; ++i) {
            if (i) out << ',';
            out << x.values[i];
        }
        if (labels) out << ',' << *x.label;
        out << '\n';
    }
}

}  // namespace shapgraph
