#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "jamming/dynamics.hpp"

using namespace jamming;

namespace {

EventSchedule vertex_schedule(ProcessKind kind, std::vector<double> times) {
    EventSchedule s;
    s.kind = kind;
    s.vertex_times = std::move(times);
    return s;
}

EventSchedule edge_schedule(ProcessKind kind, std::vector<double> times, std::vector<Vertex> toward = {}) {
    EventSchedule s;
    s.kind = kind;
    s.edge_times = std::move(times);
    s.attack_toward = std::move(toward);
    return s;
}

std::vector<int> final_states(const Trajectory& t) { return {t.final_state.begin(), t.final_state.end()}; }

}  // namespace

TEST_CASE("process names") {
    for (auto kind : kAllProcesses) CHECK(parse_process(to_string(kind)) == kind);
    CHECK_THROWS_AS(parse_process("voter"), std::invalid_argument);
    CHECK(initial_state(ProcessKind::blocking) == 0);
    CHECK(initial_state(ProcessKind::dimer) == 0);
    CHECK(initial_state(ProcessKind::annihilation) == 1);
    CHECK(initial_state(ProcessKind::map) == 1);
}

TEST_CASE("blocking RSA on hand-built schedules") {
    SUBCASE("K2: the earlier arrival wins") {
        const auto traj = simulate(make_line(2), vertex_schedule(ProcessKind::blocking, {0.3, 0.6}));
        CHECK(final_states(traj) == std::vector<int>{1, 0});
        CHECK(traj.flip_time[0] == 0.3);
        CHECK(traj.flip_time[1] == kNever);
        CHECK(traj.state_at(0, 0.29) == 0);
        CHECK(traj.state_at(0, 0.3) == 1);
        CHECK(traj.state_at(1, 1.0) == 0);
    }
    SUBCASE("path-3: middle first blocks both ends") {
        const auto traj = simulate(make_line(3), vertex_schedule(ProcessKind::blocking, {0.5, 0.1, 0.2}));
        CHECK(final_states(traj) == std::vector<int>{0, 1, 0});
    }
    SUBCASE("path-3: ends first") {
        const auto traj = simulate(make_line(3), vertex_schedule(ProcessKind::blocking, {0.5, 0.7, 0.2}));
        CHECK(final_states(traj) == std::vector<int>{1, 0, 1});
        CHECK(count_occupied(traj, 0.3) == 1);
        CHECK(count_occupied(traj, 1.0) == 2);
        const Vertex sub[] = {0, 1};
        CHECK(count_occupied(traj, sub, 1.0) == 1);
    }
}

TEST_CASE("dimer RSA on hand-built schedules") {
    // edges of line:3 are (0,1) then (1,2)
    const auto traj = simulate(make_line(3), edge_schedule(ProcessKind::dimer, {0.4, 0.2}));
    CHECK(final_states(traj) == std::vector<int>{0, 1, 1});
    CHECK(traj.flip_time[1] == 0.2);
    CHECK(traj.flip_time[2] == 0.2);
}

TEST_CASE("annihilation on hand-built schedules") {
    SUBCASE("K2 attack direction decides the survivor") {
        const auto a = simulate(make_line(2), edge_schedule(ProcessKind::annihilation, {0.5}, {0}));
        CHECK(final_states(a) == std::vector<int>{0, 1});
        CHECK(a.state_at(0, 0.4) == 1);
        CHECK(a.state_at(0, 0.5) == 0);
        const auto b = simulate(make_line(2), edge_schedule(ProcessKind::annihilation, {0.5}, {1}));
        CHECK(final_states(b) == std::vector<int>{1, 0});
    }
    SUBCASE("a vacated site no longer attacks") {
        const auto traj = simulate(make_line(3), edge_schedule(ProcessKind::annihilation, {0.1, 0.2}, {1, 2}));
        CHECK(final_states(traj) == std::vector<int>{1, 0, 1});
    }
}

TEST_CASE("MAP through the undecided-site process") {
    SUBCASE("path-3") {
        const auto s = vertex_schedule(ProcessKind::map, {0.5, 0.1, 0.2});
        const auto coupled = simulate_coupled_usp(make_line(3), s);
        CHECK(final_states(coupled.map) == std::vector<int>{0, 1, 0});
        CHECK(final_states(coupled.blocking) == std::vector<int>{0, 1, 0});
        // undecided sites read as occupied for the MAP, vacant for blocking
        CHECK(coupled.map.state_at(0, 0.05) == 1);
        CHECK(coupled.blocking.state_at(1, 0.05) == 0);
        CHECK(coupled.map.state_at(0, 0.15) == 0);
        CHECK(coupled.map.state_at(1, 0.15) == 1);
        CHECK(coupled.blocking.state_at(1, 0.15) == 1);
    }
    SUBCASE("star with a late centre") {
        const auto s = vertex_schedule(ProcessKind::map, {0.9, 0.1, 0.2, 0.3});
        const auto traj = simulate(make_star(3), s);
        CHECK(final_states(traj) == std::vector<int>{0, 1, 1, 1});
        CHECK(traj.flip_time[0] == 0.1);
    }
    SUBCASE("agrees with a direct MAP replay") {
        // direct rule: a surviving site kills all neighbours at its own time
        std::mt19937_64 rng(5);
        const std::size_t dims[] = {6, 6};
        const auto g = make_torus(dims);
        for (int rep = 0; rep < 50; ++rep) {
            auto s = draw_schedule(g, ProcessKind::map, rng);
            std::vector<int> state(g.vertex_count(), 1);
            std::vector<double> flip(g.vertex_count(), kNever);
            for (auto v : event_order(s.vertex_times)) {
                if (state[v] == 0) continue;
                for (auto w : g.neighbors(v))
                    if (state[w] == 1) {
                        state[w] = 0;
                        flip[w] = s.vertex_times[v];
                    }
            }
            const auto traj = simulate(g, s);
            CHECK(final_states(traj) == state);
            CHECK(traj.flip_time == flip);
        }
    }
}

TEST_CASE("schedule validation") {
    const auto g = make_line(3);
    CHECK_THROWS_AS(simulate(g, vertex_schedule(ProcessKind::blocking, {0.1, 0.2})), ScheduleError);
    CHECK_THROWS_AS(simulate(g, vertex_schedule(ProcessKind::blocking, {0.1, 0.2, 1.5})), ScheduleError);
    CHECK_THROWS_AS(simulate(g, edge_schedule(ProcessKind::annihilation, {0.1, 0.2}, {0})), ScheduleError);
    CHECK_THROWS_AS(simulate(g, edge_schedule(ProcessKind::annihilation, {0.1, 0.2}, {2, 2})), ScheduleError);
    CHECK_THROWS_AS(simulate_coupled_usp(g, edge_schedule(ProcessKind::dimer, {0.1, 0.2})), ScheduleError);
}

TEST_CASE("event order") {
    const double ties[] = {0.5, 0.2, 0.5, 0.2};
    CHECK(event_order(ties) == std::vector<std::uint32_t>{1, 3, 0, 2});

    std::mt19937_64 rng(17);
    for (std::size_t n : {300u, 1000u, 5000u}) {
        std::vector<double> times(n);
        for (auto& t : times) t = uniform_open01(rng);
        for (std::size_t i = 0; i < n; i += 7) times[i] = times[(i * 13) % n];  // plant ties
        times[0] = 0.0;
        times[n - 1] = 1.0;
        std::vector<std::uint32_t> expected(n);
        std::iota(expected.begin(), expected.end(), 0u);
        std::stable_sort(expected.begin(), expected.end(), [&](auto a, auto b) { return times[a] < times[b]; });
        CHECK(event_order(times) == expected);
    }
}

TEST_CASE("schedules are reproducible from the seed") {
    const std::size_t dims[] = {5, 5};
    const auto g = make_torus(dims);
    for (auto kind : kAllProcesses) {
        const auto a = draw_schedule(g, kind, 42);
        const auto b = draw_schedule(g, kind, 42);
        const auto c = draw_schedule(g, kind, 43);
        CHECK(a.vertex_times == b.vertex_times);
        CHECK(a.edge_times == b.edge_times);
        CHECK(a.attack_toward == b.attack_toward);
        CHECK((a.vertex_times != c.vertex_times || a.edge_times != c.edge_times));
        CHECK(final_states(simulate(g, a)) == final_states(simulate(g, b)));
    }
    const auto s = draw_schedule(g, ProcessKind::blocking, 1);
    for (double t : s.vertex_times) CHECK((t > 0.0 && t < 1.0));
}

TEST_CASE("attack directions are fair") {
    const std::size_t dims[] = {100, 100};
    const auto g = make_torus(dims);
    const auto s = draw_schedule(g, ProcessKind::annihilation, 7);
    std::size_t toward_v = 0;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) toward_v += s.attack_toward[e] == g.edge(e).v;
    const double n = static_cast<double>(g.edge_count());
    CHECK(std::abs(toward_v - n / 2) < 4.0 * std::sqrt(n / 4));
}

TEST_CASE("lazy tree sampler") {
    CHECK_THROWS_AS(sample_tree_root_blocking(2, 5, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_tree_root_blocking(0, 1, 0.5, 1), std::invalid_argument);
    CHECK(sample_tree_root_blocking(3, 4, 0.0, 1) == 0);
    CHECK(tree_sampler_depth_cap(3) == 10 * truncation_radius(4, 1e-12));

    SUBCASE("matches brute-force simulation on a deep truncated tree") {
        // independent of any closed form: both sides are Monte Carlo
        constexpr int k = 2, depth = 10;
        constexpr double t = 0.7;
        constexpr int n = 20000;
        const auto tree = make_tree(TreeSpec::bethe(k, depth));
        Rng rng_a(11), rng_b(12);
        double lazy = 0, brute = 0;
        for (int i = 0; i < n; ++i) {
            lazy += sample_tree_root_blocking(k, k + 1, t, rng_a);
            brute += simulate(tree.graph, draw_schedule(tree.graph, ProcessKind::blocking, rng_b)).state_at(0, t);
        }
        lazy /= n;
        brute /= n;
        const double se = std::sqrt(lazy * (1 - lazy) / n + brute * (1 - brute) / n);
        // (k+1) k^{r-1}/(r+1)! at r = 10 is below 1e-4
        CHECK(std::abs(lazy - brute) < 4 * se + 1e-4);
    }
}
