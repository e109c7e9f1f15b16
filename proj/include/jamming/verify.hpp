#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "jamming/dynamics.hpp"
#include "jamming/graph.hpp"

// The acceptance checks. Each criterion expands into individual checks with
// a measured value, a target and a tolerance; a criterion passes when all of
// its checks do.
namespace jamming::verify {

struct CheckResult {
    std::string check_id;
    bool passed = false;
    double measured = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    std::uint64_t seed = 0;
};

nlohmann::json to_json(const CheckResult& r);

using CovarianceFn = std::function<double(ProcessKind, int k, int m, double t)>;

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct Options {
    std::uint64_t seed = kDefaultSeed;
    unsigned workers = 0;
    // Tree covariance used by the closed-form checks; swappable so that a
    // deliberately broken formula can be shown to be caught.
    CovarianceFn covariance;

    Options();
};

struct Criterion {
    int number;
    std::string id;
    std::string title;
    std::function<std::vector<CheckResult>(const Options&, std::uint64_t seed)> run;
};

const std::vector<Criterion>& criteria();

// Comma-separated list of criterion numbers or ids; empty selects all.
// Throws std::invalid_argument on an unknown name.
std::vector<const Criterion*> select(const std::string& only);

struct Outcome {
    const Criterion* criterion = nullptr;
    std::vector<CheckResult> checks;
    bool passed = false;
    double seconds = 0.0;
    std::string error;  // exception text, if the run threw
};

// Seed of criterion n is mc::derive_seed(options.seed, n).
Outcome run(const Criterion& c, const Options& options);

// Small graphs used by the oracle-backed checks.
std::vector<std::pair<std::string, Graph>> fixture_graphs();
std::vector<std::pair<std::string, Graph>> bipartite_fixtures();

// Published t = 1 reference tables (3 and 4 decimals).
double reference_occupation(ProcessKind kind, int k);
double reference_correlation(ProcessKind kind, int k, int m);

}  // namespace jamming::verify
