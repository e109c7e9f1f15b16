#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "jamming/graph.hpp"

namespace jamming {

enum class ProcessKind { blocking, dimer, annihilation, map };

inline constexpr ProcessKind kAllProcesses[] = {ProcessKind::blocking, ProcessKind::dimer,
                                                ProcessKind::annihilation, ProcessKind::map};

std::string_view to_string(ProcessKind kind);
// Accepts "blocking", "dimer", "annihilation", "map". Throws std::invalid_argument.
ProcessKind parse_process(std::string_view name);

// Blocking and MAP are driven by vertex events, dimer and annihilation by
// edge events.
constexpr bool is_vertex_driven(ProcessKind kind) {
    return kind == ProcessKind::blocking || kind == ProcessKind::map;
}
// State every site starts in: vacant (0) for the deposition processes,
// occupied (1) for the annihilation processes.
constexpr int initial_state(ProcessKind kind) {
    return (kind == ProcessKind::blocking || kind == ProcessKind::dimer) ? 0 : 1;
}

class ScheduleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The randomness of one run. Only the index set that drives `kind` is filled.
struct EventSchedule {
    ProcessKind kind = ProcessKind::blocking;
    std::vector<double> vertex_times;
    std::vector<double> edge_times;
    // Annihilation only: the endpoint that is vacated if edge e fires while
    // both of its ends are occupied.
    std::vector<Vertex> attack_toward;
};

inline constexpr double kNever = std::numeric_limits<double>::infinity();

// Per-vertex evolution. Occupied is always 1, whatever the process.
struct Trajectory {
    ProcessKind kind = ProcessKind::blocking;
    int initial = 0;
    std::vector<double> flip_time;  // kNever if the vertex never flips
    std::vector<std::uint8_t> final_state;

    int state_at(Vertex v, double t) const { return initial ^ (flip_time[v] <= t ? 1 : 0); }
    std::size_t size() const { return flip_time.size(); }
};

using Rng = std::mt19937_64;

// Uniform on the open interval (0, 1) from the top 53 bits of one draw.
inline double uniform_open01(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Times are drawn first (in index order), then for annihilation one fair
// direction bit per edge. Fully determined by (g, kind, seed).
EventSchedule draw_schedule(const Graph& g, ProcessKind kind, std::uint64_t seed);
EventSchedule draw_schedule(const Graph& g, ProcessKind kind, Rng& rng);

// Indices sorted by (time, index). Ties, which only finite precision makes
// possible, go to the lower index.
std::vector<std::uint32_t> event_order(std::span<const double> times);

Trajectory simulate(const Graph& g, const EventSchedule& schedule);

struct CoupledTrajectories {
    Trajectory map;       // undecided sites count as occupied
    Trajectory blocking;  // undecided sites count as vacant
};

// Undecided-site process: one run, projected onto MAP and blocking RSA.
CoupledTrajectories simulate_coupled_usp(const Graph& g, const EventSchedule& schedule);

std::size_t count_occupied(const Trajectory& traj, std::span<const Vertex> subset, double t);
std::size_t count_occupied(const Trajectory& traj, double t);

// ---------------------------------------------------------------------------
// Exact root sampler for blocking RSA on the infinite tree whose root has
// `root_degree` (k or k+1) neighbours and every other vertex k+1. Only the
// subtrees reachable along paths of decreasing arrival times are generated.

class DepthCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Recursion cap used by sample_tree_root_blocking:
// 10 * truncation_radius(k + 1, 1e-12).
int tree_sampler_depth_cap(int k);

int sample_tree_root_blocking(int k, int root_degree, double t, std::uint64_t seed);
int sample_tree_root_blocking(int k, int root_degree, double t, Rng& rng);

}  // namespace jamming
