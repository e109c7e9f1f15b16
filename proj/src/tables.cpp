#include "jamming/tables.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "jamming/bethe.hpp"

namespace jamming::tables {

std::vector<Cell> occupation_cells() {
    std::vector<Cell> cells;
    for (int k : kOccupationK)
        for (auto kind : kTableProcesses)
            cells.push_back({kind, k, 0, 1.0, bethe::occupation_probability(kind, k, 1.0), 3});
    return cells;
}

std::vector<Cell> correlation_cells() {
    std::vector<Cell> cells;
    for (int m = 1; m <= kMaxCorrelationDistance; ++m)
        for (auto kind : kTableProcesses)
            for (int k : kCorrelationK)
                cells.push_back({kind, k, m, 1.0, bethe::correlation(kind, k, m, 1.0), 4});
    return cells;
}

std::string display(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    std::string s = buf;
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

std::string full_precision(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

Format parse_format(const std::string& name) {
    if (name == "text") return Format::text;
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw std::invalid_argument("unknown format '" + name + "' (text, csv, json)");
}

namespace {

void write_csv(std::ostream& out, const std::vector<Cell>& cells) {
    out << "process,k,m,t,value,display\n";
    for (const auto& c : cells)
        out << to_string(c.kind) << ',' << c.k << ',' << c.m << ',' << c.t << ','
            << full_precision(c.value) << ',' << display(c.value, c.decimals) << '\n';
}

void write_json(std::ostream& out, const std::vector<Cell>& cells) {
    auto arr = nlohmann::json::array();
    for (const auto& c : cells) {
        nlohmann::json rec = {{"process", to_string(c.kind)}, {"k", c.k}, {"t", c.t},
                              {"value", c.value}, {"display", display(c.value, c.decimals)}};
        rec["m"] = c.m == 0 ? nlohmann::json(nullptr) : nlohmann::json(c.m);
        arr.push_back(std::move(rec));
    }
    out << arr.dump(2) << '\n';
}

}  // namespace

void write_occupation(std::ostream& out, Format format) {
    const auto cells = occupation_cells();
    if (format == Format::csv) return write_csv(out, cells);
    if (format == Format::json) return write_json(out, cells);
    out << "k\tblocking\tdimer\tannihilation\n";
    std::size_t i = 0;
    for (int k : kOccupationK) {
        out << k;
        for (std::size_t p = 0; p < std::size(kTableProcesses); ++p, ++i)
            out << '\t' << display(cells[i].value, cells[i].decimals);
        out << '\n';
    }
}

void write_correlations(std::ostream& out, Format format) {
    const auto cells = correlation_cells();
    if (format == Format::csv) return write_csv(out, cells);
    if (format == Format::json) return write_json(out, cells);
    out << "distance";
    for (auto kind : kTableProcesses)
        for (int k : kCorrelationK) out << '\t' << to_string(kind) << "_k" << k;
    out << '\n';
    std::size_t i = 0;
    for (int m = 1; m <= kMaxCorrelationDistance; ++m) {
        out << m;
        for (std::size_t j = 0; j < std::size(kTableProcesses) * std::size(kCorrelationK); ++j, ++i)
            out << '\t' << display(cells[i].value, cells[i].decimals);
        out << '\n';
    }
}

}  // namespace jamming::tables
