#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "jamming/dynamics.hpp"

namespace jamming::tables {

struct Cell {
    ProcessKind kind;
    int k;
    int m;  // 0 for occupation cells
    double t;
    double value;
    int decimals;  // display precision
};

inline constexpr int kOccupationK[] = {1, 2, 3, 4, 5, 10, 20};
inline constexpr int kCorrelationK[] = {3, 5};
inline constexpr int kMaxCorrelationDistance = 5;
inline constexpr ProcessKind kTableProcesses[] = {ProcessKind::blocking, ProcessKind::dimer,
                                                  ProcessKind::annihilation};

// Jamming (t = 1) occupation probabilities, row-major over k then process.
std::vector<Cell> occupation_cells();
// Correlations at t = 1, row-major over m, then process, then k.
std::vector<Cell> correlation_cells();

// Fixed-point rounding; a value that rounds to zero prints without a sign.
std::string display(double value, int decimals);
// %.17g
std::string full_precision(double value);

enum class Format { text, csv, json };
Format parse_format(const std::string& name);

// text: the two tab-separated tables in the published layout.
void write_occupation(std::ostream& out, Format format);
void write_correlations(std::ostream& out, Format format);

}  // namespace jamming::tables
