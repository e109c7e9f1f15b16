#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "jamming/montecarlo.hpp"
#include "jamming/oracle.hpp"

using namespace jamming;
using oracle::Assignment;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

Rational total(const std::map<std::string, Rational>& dist) {
    Rational s = 0;
    for (const auto& [_, p] : dist) s += p;
    return s;
}

const std::vector<Vertex> kNone;

}  // namespace

TEST_CASE("rationals and polynomials") {
    CHECK(parse_rational("3") == q(3));
    CHECK(parse_rational("-0.25") == q(-1, 4));
    CHECK(parse_rational("1e-3") == q(1, 1000));
    CHECK(parse_rational("3/10") == q(3, 10));
    CHECK(parse_rational("2.5E1") == q(25));
    for (const char* bad : {"", "x", "1/0", "1.2.3", "3/"}) CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
    CHECK(to_rational(0.375) == q(3, 8));
    CHECK(to_rational(0.1) != q(1, 10));  // exact binary value
    CHECK(to_string(q(-3, 6)) == "-1/2");

    const Polynomial p({q(1), q(-2), q(1)});  // (1-t)^2
    CHECK(p(q(1, 2)) == q(1, 4));
    CHECK(p(0.5) == 0.25);
    CHECK(p.derivative() == Polynomial({q(-2), q(2)}));
    CHECK((p - p).is_zero());
    CHECK((p - p).degree() == -1);
    CHECK(Polynomial({q(1), q(-1)}) * Polynomial({q(1), q(-1)}) == p);
    CHECK(p * q(2) == p + p);
    CHECK(Polynomial({q(1), q(0), q(0)}) == Polynomial::constant(q(1)));
    // Bernstein weights 1,1,1 sum to one
    CHECK(Polynomial::from_bernstein({q(1), q(1), q(1)}) == Polynomial::constant(q(1)));
    CHECK(Polynomial::from_bernstein({q(0), q(0), q(1)}) == Polynomial({q(0), q(0), q(1)}));
    CHECK(binomial(8, 3) == 56);
    CHECK(binomial(3, 5) == 0);
}

TEST_CASE("final distributions") {
    CHECK(oracle::final_distribution(make_line(2), ProcessKind::blocking) ==
          std::map<std::string, Rational>{{"01", q(1, 2)}, {"10", q(1, 2)}});
    CHECK(oracle::final_distribution(make_line(2), ProcessKind::annihilation) ==
          std::map<std::string, Rational>{{"01", q(1, 2)}, {"10", q(1, 2)}});
    CHECK(oracle::final_distribution(make_line(3), ProcessKind::dimer) ==
          std::map<std::string, Rational>{{"011", q(1, 2)}, {"110", q(1, 2)}});

    const auto p3 = oracle::final_distribution(make_line(3), ProcessKind::blocking);
    CHECK(p3 == std::map<std::string, Rational>{{"010", q(1, 3)}, {"101", q(2, 3)}});

    for (const auto& g : {make_cycle(4), make_star(3), make_complete(4), make_line(5)})
        for (auto kind : kAllProcesses) {
            const auto dist = oracle::final_distribution(g, kind);
            CHECK(total(dist) == 1);
            for (const auto& [_, p] : dist) CHECK(p > 0);
        }
    // MAP ends where blocking does
    CHECK(oracle::final_distribution(make_cycle(5), ProcessKind::map) ==
          oracle::final_distribution(make_cycle(5), ProcessKind::blocking));
}

TEST_CASE("size limits") {
    CHECK_THROWS_AS(oracle::final_distribution(make_line(9), ProcessKind::blocking), oracle::OracleTooLarge);
    CHECK_NOTHROW(oracle::final_distribution(make_line(8), ProcessKind::blocking));
    // 9 edges of annihilation exceed both caps
    CHECK_THROWS_AS(oracle::final_distribution(make_line(10), ProcessKind::annihilation), oracle::OracleTooLarge);
    CHECK_THROWS_AS(oracle::final_distribution(make_complete(5), ProcessKind::dimer), oracle::OracleTooLarge);
}

TEST_CASE("joint state probabilities") {
    const auto k2 = make_line(2);
    // vacant iff the own clock is late, or the other one rang first
    const auto v = oracle::joint_state_probability(k2, ProcessKind::blocking, {{0, 0}}, q(3, 10));
    CHECK(v.value == q(7, 10) + q(9, 200));
    CHECK(v.polynomial == Polynomial({q(1), q(-1), q(1, 2)}));

    for (auto kind : kAllProcesses)
        CHECK(oracle::joint_state_probability(make_cycle(4), kind, {}, q(1, 3)).value == 1);

    // path-3 dimer: the middle stays vacant iff both edges are late
    const auto d = oracle::joint_state_probability(make_line(3), ProcessKind::dimer, {{1, 0}}, q(1, 2));
    CHECK(d.polynomial == Polynomial({q(1), q(-2), q(1)}));
    CHECK(d.value == q(1, 4));
    // an end: its edge is late, or the middle edge beat it
    const auto end = oracle::joint_state_probability(make_line(3), ProcessKind::dimer, {{2, 0}}, q(1, 2));
    CHECK(end.value == q(5, 8));

    // contradictory requirement on K2 blocking at t = 1
    CHECK(oracle::joint_state_probability(k2, ProcessKind::blocking, {{0, 1}, {1, 1}}, q(1)).value == 0);
    CHECK_THROWS(oracle::joint_state_probability(k2, ProcessKind::blocking, {{0, 2}}, q(1)));
    CHECK_THROWS(oracle::joint_state_probability(k2, ProcessKind::blocking, {{5, 1}}, q(1)));
    CHECK_THROWS(oracle::joint_state_probability(k2, ProcessKind::blocking, {{0, 1}}, q(3, 2)));
}

TEST_CASE("marginals at t = 1 match the final distribution") {
    for (const auto& g : {make_line(4), make_star(3), make_cycle(5)}) {
        for (auto kind : kAllProcesses) {
            const auto dist = oracle::final_distribution(g, kind);
            for (Vertex u = 0; u < g.vertex_count(); ++u)
                for (Vertex w = u + 1; w < g.vertex_count(); ++w) {
                    Rational from_dist = 0;
                    for (const auto& [cfg, p] : dist)
                        if (cfg[u] == '1' && cfg[w] == '0') from_dist += p;
                    CHECK(oracle::joint_state_probability(g, kind, {{u, 1}, {w, 0}}, q(1)).value == from_dist);
                }
        }
    }
}

TEST_CASE("conditional weights are consistent") {
    const oracle::OrderingTable table(make_cycle(4), ProcessKind::annihilation);
    CHECK(table.total_weight() == 24u * 16u);
    std::uint64_t sum = 0;
    for (const auto& [_, w] : table.outcomes()) sum += w;
    CHECK(sum == table.total_weight());
    // before any event every site is in its initial state
    const auto c = table.conditional({{0, 1}, {1, 1}});
    CHECK(c.size() == 5);
    CHECK(c.front() == 1);
}

TEST_CASE("pair covariance") {
    const auto k2 = make_line(2);
    CHECK(oracle::pair_covariance(k2, ProcessKind::blocking, 0, 1, q(1)).value == q(-1, 4));
    // u = v gives the variance
    const auto p = oracle::joint_state_probability(make_line(3), ProcessKind::blocking, {{1, 1}}, q(1, 2)).value;
    CHECK(oracle::pair_covariance(make_line(3), ProcessKind::blocking, 1, 1, q(1, 2)).value == p * (1 - p));
    CHECK(oracle::pair_covariance(make_cycle(4), ProcessKind::annihilation, 0, 2, q(1)).value > 0);
}

TEST_CASE("annihilation counts on twin graphs are not constant") {
    // twin graph of K2: four vertices, three edges; S = occupied sites at t = 1
    const auto g = with_pendant_twins(make_line(2));
    const auto dist = oracle::final_distribution(g, ProcessKind::annihilation);
    Rational mean = 0, second = 0;
    for (const auto& [cfg, p] : dist) {
        const long s = std::count(cfg.begin(), cfg.end(), '1');
        mean += p * s;
        second += p * s * s;
    }
    CHECK(second - mean * mean > 0);
    // without base edges every twin pair resolves independently to one site
    const auto iso = with_pendant_twins(Graph(3, {}));
    for (const auto& [cfg, p] : oracle::final_distribution(iso, ProcessKind::annihilation))
        CHECK(std::count(cfg.begin(), cfg.end(), '1') == 3);
}

TEST_CASE("forward equations") {
    const std::vector<Vertex> w1 = {0};
    CHECK(oracle::forward_residual(make_line(2), ProcessKind::blocking, w1, q(3, 10)) == 0);
    CHECK(oracle::forward_residual(make_line(3), ProcessKind::dimer, w1, q(1, 2)) == 0);
    const std::vector<Vertex> mid = {1};
    CHECK(oracle::forward_residual_polynomial(make_line(3), ProcessKind::annihilation, mid).is_zero());

    for (const auto& g : {make_line(4), make_cycle(4), make_star(3), make_line(5)}) {
        const Vertex n = static_cast<Vertex>(g.vertex_count());
        for (Vertex a = 0; a < n; ++a) {
            const std::vector<Vertex> single = {a};
            for (auto kind : {ProcessKind::blocking, ProcessKind::dimer, ProcessKind::annihilation})
                CHECK(oracle::forward_residual_polynomial(g, kind, single).is_zero());
            for (Vertex b = a + 1; b < n; ++b) {
                const std::vector<Vertex> pair = {a, b};
                CHECK(oracle::forward_residual_polynomial(g, ProcessKind::blocking, pair).is_zero());
            }
        }
    }
    CHECK_THROWS(oracle::forward_residual_polynomial(make_line(3), ProcessKind::map, mid));
    CHECK_THROWS(oracle::forward_residual_polynomial(make_line(3), ProcessKind::blocking, kNone));
    // adjacent degree-1 sites in W violate the hypothesis
    const std::vector<Vertex> both = {0, 1};
    CHECK_THROWS(oracle::forward_residual_polynomial(make_line(2), ProcessKind::dimer, both));
}

TEST_CASE("splitting identity") {
    for (const auto& g : {make_line(3), make_cycle(4), make_star(3)}) {
        for (auto kind : {ProcessKind::dimer, ProcessKind::annihilation}) {
            const std::vector<Vertex> w = {1};
            const auto check = oracle::surgery_identity(g, kind, w);
            CHECK(check.holds());
            CHECK_FALSE(check.original.is_zero());
        }
    }
    const std::vector<Vertex> w = {0};
    CHECK_THROWS(oracle::surgery_identity(make_line(3), ProcessKind::blocking, w));
}

TEST_CASE("simulation agrees with enumeration") {
    // independent of the enumeration: plain Monte Carlo on the simulator
    constexpr std::size_t n = 100000;
    const double ts[] = {0.3, 0.7, 1.0};
    std::uint64_t seed = 1;
    for (const auto& g : {make_line(4), make_cycle(4), make_star(3)}) {
        for (auto kind : kAllProcesses) {
            const auto table = mc::estimate_occupation_table(g, kind, ts, n, seed++);
            for (std::size_t i = 0; i < std::size(ts); ++i)
                for (Vertex v = 0; v < g.vertex_count(); ++v) {
                    const double exact =
                        oracle::joint_state_probability(g, kind, {{v, 1}}, to_rational(ts[i])).to_double();
                    const auto& est = table[i][v];
                    CHECK(std::abs(est.mean - exact) <= 4 * est.std_error + 1e-12);
                }
        }
    }
}
