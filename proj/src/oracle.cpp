#include "jamming/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace jamming::oracle {

namespace {

std::uint64_t factorial(std::size_t n) {
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

void check_t(const Rational& t) {
    if (t < 0 || t > 1) throw std::invalid_argument("oracle: t must lie in [0,1]");
}

}  // namespace

OrderingTable::OrderingTable(const Graph& g, ProcessKind kind)
    : kind_(kind), vertex_count_(g.vertex_count()) {
    const bool by_vertex = is_vertex_driven(kind);
    event_count_ = by_vertex ? g.vertex_count() : g.edge_count();
    if (event_count_ > kMaxEvents)
        throw OracleTooLarge("oracle: " + std::to_string(event_count_) + " events exceed the cap of " +
                             std::to_string(kMaxEvents));
    std::uint64_t patterns = 1;
    if (kind == ProcessKind::annihilation) {
        patterns = std::uint64_t{1} << g.edge_count();
        if (patterns > kMaxDirectionPatterns)
            throw OracleTooLarge("oracle: too many attack-direction patterns");
    }
    total_weight_ = factorial(event_count_) * patterns;

    const std::size_t n = event_count_;
    const double denom = static_cast<double>(n + 1);
    EventSchedule s;
    s.kind = kind;
    auto& times = by_vertex ? s.vertex_times : s.edge_times;
    times.assign(n, 0.0);
    if (kind == ProcessKind::annihilation) s.attack_toward.assign(g.edge_count(), 0);

    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    std::vector<std::uint8_t> ranks(vertex_count_);
    do {
        for (std::size_t p = 0; p < n; ++p) times[perm[p]] = static_cast<double>(p + 1) / denom;
        for (std::uint64_t mask = 0; mask < patterns; ++mask) {
            if (kind == ProcessKind::annihilation)
                for (EdgeIndex e = 0; e < g.edge_count(); ++e)
                    s.attack_toward[e] = ((mask >> e) & 1U) != 0 ? g.edge(e).v : g.edge(e).u;
            const auto traj = simulate(g, s);
            for (Vertex v = 0; v < vertex_count_; ++v) {
                const double f = traj.flip_time[v];
                ranks[v] = f == kNever ? 0 : static_cast<std::uint8_t>(std::lround(f * denom));
            }
            ++outcomes_[ranks];
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

std::vector<Rational> OrderingTable::conditional(const Assignment& a) const {
    for (const auto& [v, state] : a) {
        if (v >= vertex_count_) throw std::out_of_range("oracle: assignment vertex out of range");
        if (state != 0 && state != 1) throw std::invalid_argument("oracle: states are 0 or 1");
    }
    const int initial = initial_state(kind_);
    std::vector<Rational> out(event_count_ + 1);
    for (std::size_t j = 0; j <= event_count_; ++j) {
        std::uint64_t hits = 0;
        for (const auto& [ranks, count] : outcomes_) {
            const bool ok = std::all_of(a.begin(), a.end(), [&](const auto& req) {
                const auto r = ranks[req.first];
                const int flipped = (r != 0 && r <= j) ? 1 : 0;
                return (initial ^ flipped) == req.second;
            });
            if (ok) hits += count;
        }
        out[j] = Rational(hits, total_weight_);
    }
    return out;
}

Polynomial OrderingTable::polynomial(const Assignment& a) const {
    return Polynomial::from_bernstein(conditional(a));
}

std::map<std::string, Rational> OrderingTable::final_distribution() const {
    const int initial = initial_state(kind_);
    std::map<std::string, std::uint64_t> counts;
    for (const auto& [ranks, count] : outcomes_) {
        std::string config(vertex_count_, '0');
        for (std::size_t v = 0; v < vertex_count_; ++v)
            config[v] = static_cast<char>('0' + (initial ^ (ranks[v] != 0 ? 1 : 0)));
        counts[config] += count;
    }
    std::map<std::string, Rational> out;
    for (const auto& [config, count] : counts) out.emplace(config, Rational(count, total_weight_));
    return out;
}

// ---------------------------------------------------------------------------

std::map<std::string, Rational> final_distribution(const Graph& g, ProcessKind kind) {
    return OrderingTable(g, kind).final_distribution();
}

OracleValue joint_state_probability(const Graph& g, ProcessKind kind, const Assignment& a,
                                    const Rational& t) {
    check_t(t);
    const OrderingTable table(g, kind);
    OracleValue out;
    out.t = t;
    out.conditional = table.conditional(a);
    out.polynomial = Polynomial::from_bernstein(out.conditional);
    out.value = out.polynomial(t);
    return out;
}

OracleValue pair_covariance(const Graph& g, ProcessKind kind, Vertex u, Vertex v, const Rational& t) {
    check_t(t);
    const OrderingTable table(g, kind);
    const auto pu = table.polynomial({{u, 1}});
    const auto pv = table.polynomial({{v, 1}});
    const auto puv = table.polynomial({{u, 1}, {v, 1}});
    OracleValue out;
    out.t = t;
    out.polynomial = puv - pu * pv;
    out.value = out.polynomial(t);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Vertex> checked_set(const Graph& g, std::span<const Vertex> w) {
    std::vector<Vertex> out(w.begin(), w.end());
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw std::invalid_argument("oracle: W has repeated vertices");
    for (auto v : out)
        if (v >= g.vertex_count()) throw std::out_of_range("oracle: W vertex out of range");
    return out;
}

Assignment all_in_state(std::span<const Vertex> w, int state) {
    Assignment a;
    for (auto v : w) a.emplace(v, state);
    return a;
}

// sum_{v in W} P_{G - v}[(W u N(v)) - v in `state`]
Polynomial removal_sum(const Graph& g, ProcessKind kind, const std::vector<Vertex>& w, int state) {
    Polynomial sum;
    for (auto v : w) {
        const Vertex removed[] = {v};
        const auto sub = remove_vertices(g, removed);
        Assignment a;
        for (auto x : w)
            if (x != v) a.emplace(sub.vertex_map[x], state);
        for (auto x : g.neighbors(v))
            if (x != v) a.emplace(sub.vertex_map[x], state);
        sum += OrderingTable(sub.graph, kind).polynomial(a);
    }
    return sum;
}

}  // namespace

Polynomial forward_residual_polynomial(const Graph& g, ProcessKind kind, std::span<const Vertex> w) {
    if (kind == ProcessKind::map) throw std::invalid_argument("oracle: no forward equation for the MAP");
    auto set = checked_set(g, w);
    if (set.empty()) throw std::invalid_argument("oracle: W must be non-empty");

    if (kind == ProcessKind::blocking) {
        const auto lhs = OrderingTable(g, kind).polynomial(all_in_state(set, 0)).derivative();
        return lhs + removal_sum(g, kind, set, 0);
    }

    const Graph* h = &g;
    SplitResult split;
    const bool needs_split =
        std::any_of(set.begin(), set.end(), [&](Vertex v) { return g.degree(v) != 1; });
    if (needs_split) {
        split = split_vertices(g, set);
        h = &split.graph;
        set = split.w_star;
        std::sort(set.begin(), set.end());
    }
    for (auto v : set) {
        if (h->degree(v) != 1) throw std::invalid_argument("oracle: W vertices must have degree 1");
        if (std::binary_search(set.begin(), set.end(), h->neighbors(v)[0]))
            throw std::invalid_argument("oracle: a W vertex has its neighbour in W");
    }
    const int state = kind == ProcessKind::dimer ? 0 : 1;
    const auto lhs = OrderingTable(*h, kind).polynomial(all_in_state(set, state)).derivative();
    auto rhs = removal_sum(*h, kind, set, state);
    if (kind == ProcessKind::annihilation) rhs *= Rational(1, 2);
    return lhs + rhs;
}

Rational forward_residual(const Graph& g, ProcessKind kind, std::span<const Vertex> w,
                          const Rational& t) {
    check_t(t);
    const Rational r = forward_residual_polynomial(g, kind, w)(t);
    return r < 0 ? Rational(-r) : r;
}

SurgeryCheck surgery_identity(const Graph& g, ProcessKind kind, std::span<const Vertex> w) {
    if (kind != ProcessKind::dimer && kind != ProcessKind::annihilation)
        throw std::invalid_argument("oracle: the splitting identity holds for dimer and annihilation");
    const auto set = checked_set(g, w);
    const int state = kind == ProcessKind::dimer ? 0 : 1;
    const auto split = split_vertices(g, set);
    SurgeryCheck out;
    out.original = OrderingTable(g, kind).polynomial(all_in_state(set, state));
    out.split = OrderingTable(split.graph, kind).polynomial(all_in_state(split.w_star, state));
    return out;
}

}  // namespace jamming::oracle
