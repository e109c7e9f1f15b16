#include "jamming/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace jamming {

std::string_view to_string(ProcessKind kind) {
    switch (kind) {
        case ProcessKind::blocking: return "blocking";
        case ProcessKind::dimer: return "dimer";
        case ProcessKind::annihilation: return "annihilation";
        case ProcessKind::map: return "map";
    }
    return "unknown";
}

ProcessKind parse_process(std::string_view name) {
    for (auto kind : kAllProcesses)
        if (to_string(kind) == name) return kind;
    throw std::invalid_argument("unknown process '" + std::string(name) + "'");
}

EventSchedule draw_schedule(const Graph& g, ProcessKind kind, Rng& rng) {
    EventSchedule s;
    s.kind = kind;
    if (is_vertex_driven(kind)) {
        s.vertex_times.resize(g.vertex_count());
        for (auto& tau : s.vertex_times) tau = uniform_open01(rng);
        return s;
    }
    s.edge_times.resize(g.edge_count());
    for (auto& tau : s.edge_times) tau = uniform_open01(rng);
    if (kind == ProcessKind::annihilation) {
        s.attack_toward.resize(g.edge_count());
        for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
            const auto& edge = g.edge(e);
            s.attack_toward[e] = (rng() >> 63) != 0 ? edge.v : edge.u;
        }
    }
    return s;
}

EventSchedule draw_schedule(const Graph& g, ProcessKind kind, std::uint64_t seed) {
    Rng rng(seed);
    return draw_schedule(g, kind, rng);
}

std::vector<std::uint32_t> event_order(std::span<const double> times) {
    const std::size_t n = times.size();
    std::vector<std::uint32_t> order(n);
    const auto by_time = [&](std::uint32_t a, std::uint32_t b) {
        return times[a] < times[b] || (times[a] == times[b] && a < b);
    };
    if (n < 256) {
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(), by_time);
        return order;
    }
    // Bucket pass on [0,1], then insertion order within each bucket. Buckets
    // hold O(1) events on average for uniform times.
    std::vector<std::uint32_t> start(n + 1, 0);
    const auto bucket = [n](double tau) {
        const double clamped = std::clamp(tau, 0.0, 1.0);
        return std::min(static_cast<std::size_t>(clamped * static_cast<double>(n)), n - 1);
    };
    for (std::size_t i = 0; i < n; ++i) ++start[bucket(times[i]) + 1];
    std::partial_sum(start.begin(), start.end(), start.begin());
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    for (std::uint32_t i = 0; i < n; ++i) order[fill[bucket(times[i])]++] = i;
    for (std::size_t b = 0; b < n; ++b) {
        auto first = order.begin() + start[b];
        auto last = order.begin() + start[b + 1];
        if (last - first > 1) std::sort(first, last, by_time);
    }
    return order;
}

namespace {

void check_times(std::span<const double> times, std::size_t expected, const char* what) {
    if (times.size() != expected)
        throw ScheduleError(std::string(what) + " count does not match the graph");
    for (double tau : times)
        if (!(tau >= 0.0 && tau <= 1.0))
            throw ScheduleError(std::string(what) + " outside [0,1]");
}

void check_schedule(const Graph& g, const EventSchedule& s) {
    if (is_vertex_driven(s.kind)) {
        check_times(s.vertex_times, g.vertex_count(), "vertex times");
        return;
    }
    check_times(s.edge_times, g.edge_count(), "edge times");
    if (s.kind == ProcessKind::annihilation) {
        if (s.attack_toward.size() != g.edge_count())
            throw ScheduleError("attack directions do not match the graph");
        for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
            const auto& edge = g.edge(e);
            if (s.attack_toward[e] != edge.u && s.attack_toward[e] != edge.v)
                throw ScheduleError("attack direction is not an endpoint of its edge");
        }
    }
}

Trajectory blank(ProcessKind kind, std::size_t n) {
    Trajectory traj;
    traj.kind = kind;
    traj.initial = initial_state(kind);
    traj.flip_time.assign(n, kNever);
    traj.final_state.assign(n, static_cast<std::uint8_t>(traj.initial));
    return traj;
}

void flip(Trajectory& traj, Vertex v, double at) {
    traj.flip_time[v] = at;
    traj.final_state[v] = static_cast<std::uint8_t>(1 - traj.initial);
}

Trajectory run_blocking(const Graph& g, const EventSchedule& s) {
    auto traj = blank(ProcessKind::blocking, g.vertex_count());
    for (auto v : event_order(s.vertex_times)) {
        const auto nb = g.neighbors(v);
        const bool blocked =
            std::any_of(nb.begin(), nb.end(), [&](Vertex w) { return traj.final_state[w] != 0; });
        if (!blocked) flip(traj, v, s.vertex_times[v]);
    }
    return traj;
}

Trajectory run_dimer(const Graph& g, const EventSchedule& s) {
    auto traj = blank(ProcessKind::dimer, g.vertex_count());
    for (auto e : event_order(s.edge_times)) {
        const auto [u, v] = g.edge(e);
        if (traj.final_state[u] == 0 && traj.final_state[v] == 0) {
            flip(traj, u, s.edge_times[e]);
            flip(traj, v, s.edge_times[e]);
        }
    }
    return traj;
}

Trajectory run_annihilation(const Graph& g, const EventSchedule& s) {
    auto traj = blank(ProcessKind::annihilation, g.vertex_count());
    for (auto e : event_order(s.edge_times)) {
        const auto [u, v] = g.edge(e);
        if (traj.final_state[u] != 0 && traj.final_state[v] != 0)
            flip(traj, s.attack_toward[e], s.edge_times[e]);
    }
    return traj;
}

}  // namespace

CoupledTrajectories simulate_coupled_usp(const Graph& g, const EventSchedule& s) {
    if (!is_vertex_driven(s.kind)) throw ScheduleError("USP needs a vertex-driven schedule");
    check_schedule(g, s);

    enum : std::uint8_t { vacant = 0, occupied = 1, undecided = 2 };
    std::vector<std::uint8_t> z(g.vertex_count(), undecided);
    CoupledTrajectories out{blank(ProcessKind::map, g.vertex_count()),
                            blank(ProcessKind::blocking, g.vertex_count())};
    for (auto v : event_order(s.vertex_times)) {
        if (z[v] != undecided) continue;
        const double at = s.vertex_times[v];
        z[v] = occupied;
        flip(out.blocking, v, at);
        for (auto w : g.neighbors(v)) {
            if (z[w] == undecided) {
                z[w] = vacant;
                flip(out.map, w, at);
            }
        }
    }
    return out;
}

Trajectory simulate(const Graph& g, const EventSchedule& s) {
    check_schedule(g, s);
    switch (s.kind) {
        case ProcessKind::blocking: return run_blocking(g, s);
        case ProcessKind::dimer: return run_dimer(g, s);
        case ProcessKind::annihilation: return run_annihilation(g, s);
        case ProcessKind::map: return simulate_coupled_usp(g, s).map;
    }
    throw ScheduleError("unknown process kind");
}

std::size_t count_occupied(const Trajectory& traj, std::span<const Vertex> subset, double t) {
    std::size_t count = 0;
    for (auto v : subset) count += static_cast<std::size_t>(traj.state_at(v, t));
    return count;
}

std::size_t count_occupied(const Trajectory& traj, double t) {
    std::size_t count = 0;
    for (Vertex v = 0; v < traj.size(); ++v) count += static_cast<std::size_t>(traj.state_at(v, t));
    return count;
}

// ---------------------------------------------------------------------------

int tree_sampler_depth_cap(int k) { return 10 * truncation_radius(k + 1, 1e-12); }

namespace {

class LazyTreeSampler {
public:
    LazyTreeSampler(int k, Rng& rng) : k_(k), cap_(tree_sampler_depth_cap(k)), rng_(rng) {}

    // Whether a vertex that arrived at `tau` is accepted, given only its
    // subtree of `children` further vertices (its parent arrives later).
    bool accepted(double tau, int children, int depth) {
        if (depth > cap_)
            throw DepthCapExceeded("lazy tree sampler exceeded depth cap " + std::to_string(cap_));
        for (int c = 0; c < children; ++c) {
            const double child_tau = uniform_open01(rng_);
            if (child_tau < tau && accepted(child_tau, k_, depth + 1)) return false;
        }
        return true;
    }

private:
    int k_;
    int cap_;
    Rng& rng_;
};

}  // namespace

int sample_tree_root_blocking(int k, int root_degree, double t, Rng& rng) {
    if (k < 1) throw std::invalid_argument("tree sampler: k must be >= 1");
    if (root_degree != k && root_degree != k + 1)
        throw std::invalid_argument("tree sampler: root degree must be k or k+1");
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("tree sampler: t outside [0,1]");
    const double tau = uniform_open01(rng);
    if (tau > t) return 0;
    return LazyTreeSampler(k, rng).accepted(tau, root_degree, 0) ? 1 : 0;
}

int sample_tree_root_blocking(int k, int root_degree, double t, std::uint64_t seed) {
    Rng rng(seed);
    return sample_tree_root_blocking(k, root_degree, t, rng);
}

}  // namespace jamming
