#include "jamming/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "jamming/bethe.hpp"
#include "jamming/montecarlo.hpp"
#include "jamming/oracle.hpp"
#include "jamming/tables.hpp"

namespace jamming::verify {

namespace {

using Clock = std::chrono::steady_clock;
using Checks = std::vector<CheckResult>;

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

std::string name(ProcessKind kind) { return std::string(to_string(kind)); }

CheckResult within(std::string id, double measured, double target, double tol, std::uint64_t seed = 0) {
    return {std::move(id), std::abs(measured - target) <= tol, measured, target, tol, seed};
}

CheckResult at_most(std::string id, double measured, double bound, double slack, std::uint64_t seed) {
    return {std::move(id), measured <= bound + slack, measured, bound, slack, seed};
}

CheckResult at_least(std::string id, double measured, double bound, double slack, std::uint64_t seed) {
    return {std::move(id), measured >= bound - slack, measured, bound, slack, seed};
}

// |mean - exact| <= z * std_error. With a zero standard error the sample was
// constant and must hit the exact value.
CheckResult z_check(std::string id, const mc::MCEstimate& est, double exact, double z = 4.0) {
    const double tol = std::max(z * est.std_error, 1e-12);
    return {std::move(id), std::abs(est.mean - exact) <= tol, est.mean, exact, tol, est.master_seed};
}

CheckResult runtime_check(const std::string& prefix, Clock::time_point start, double limit) {
    const double s = std::chrono::duration<double>(Clock::now() - start).count();
    return {prefix + "/runtime-seconds", s < limit, s, limit, 0.0, 0};
}

double as_double(const Rational& q) { return q.convert_to<double>(); }

int sign(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

// ---------------------------------------------------------------------------
// Published tables

const std::map<int, std::array<double, 3>>& occupation_reference() {
    static const std::map<int, std::array<double, 3>> table = {
        {1, {0.432, 0.865, 0.368}},  {2, {0.375, 0.875, 0.296}},  {3, {0.333, 0.889, 0.250}},
        {4, {0.302, 0.901, 0.217}},  {5, {0.276, 0.911, 0.192}},  {10, {0.200, 0.940, 0.124}},
        {20, {0.135, 0.964, 0.074}},
    };
    return table;
}

// [m-1][process * 2 + (k == 5)]
constexpr double kCorrelationReference[5][6] = {
    {-0.5000, -0.3820, -0.1250, -0.0982, -0.3333, -0.2383},
    {0.1760, 0.1003, 0.0070, 0.0103, 0.0758, 0.0407},
    {-0.0474, -0.0200, 0.0085, 0.0007, -0.0130, -0.0054},
    {0.0103, 0.0032, -0.0041, -0.0005, 0.0018, 0.0006},
    {-0.0019, -0.0004, 0.0012, 0.0001, -0.0002, -0.0001},
};

int table_column(ProcessKind kind) {
    switch (kind) {
        case ProcessKind::blocking: return 0;
        case ProcessKind::dimer: return 1;
        case ProcessKind::annihilation: return 2;
        default: throw std::invalid_argument("no reference table column for " + name(kind));
    }
}

// ---------------------------------------------------------------------------
// 1, 2

Checks occupation_table(const Options&, std::uint64_t) {
    const auto start = Clock::now();
    Checks out;
    for (const auto& c : tables::occupation_cells())
        out.push_back(within("occupation-table/" + name(c.kind) + "/k=" + std::to_string(c.k), c.value,
                             reference_occupation(c.kind, c.k), 5e-4));
    out.push_back(runtime_check("occupation-table", start, 1.0));
    return out;
}

Checks correlations_table(const Options&, std::uint64_t) {
    const auto start = Clock::now();
    Checks out;
    for (const auto& c : tables::correlation_cells())
        out.push_back(within("correlations-table/" + name(c.kind) + "/k=" + std::to_string(c.k) +
                                 "/m=" + std::to_string(c.m),
                             c.value, reference_correlation(c.kind, c.k, c.m), 5e-5));
    out.push_back(runtime_check("correlations-table", start, 1.0));
    return out;
}

// ---------------------------------------------------------------------------
// 3

Checks closed_form_identities(const Options& opt, std::uint64_t) {
    Checks out;
    for (int k : {1, 2, 3, 5}) {
        for (double t : {0.25, 0.5, 1.0}) {
            const double b = bethe::beta(ProcessKind::blocking, k, t);
            const double vac = 0.5 * (1.0 + b * b);
            out.push_back(within("closed-form/blocking-m1/k=" + std::to_string(k) + "/t=" + num(t),
                                 opt.covariance(ProcessKind::blocking, k, 1, t), -(1.0 - vac) * (1.0 - vac),
                                 1e-12));
        }
        for (auto kind : {ProcessKind::dimer, ProcessKind::annihilation}) {
            // vacancy for dimer, occupancy for annihilation: beta^{k+1} either way
            const double alpha = std::pow(bethe::beta(kind, k, 1.0), k + 1);
            out.push_back(within("closed-form/" + name(kind) + "-m1/k=" + std::to_string(k),
                                 opt.covariance(kind, k, 1, 1.0), -alpha * alpha, 1e-12));
        }
    }
    for (int k : {2, 3, 5})
        for (int m = 1; m <= 5; ++m)
            out.push_back(within("closed-form/map-equals-blocking/k=" + std::to_string(k) +
                                     "/m=" + std::to_string(m),
                                 opt.covariance(ProcessKind::map, k, m, 1.0),
                                 opt.covariance(ProcessKind::blocking, k, m, 1.0), 1e-12));
    return out;
}

// ---------------------------------------------------------------------------
// 4

Checks oracle_equivalence(const Options& opt, std::uint64_t seed) {
    const auto start = Clock::now();
    constexpr std::size_t kSamples = 100000;
    const double ts[] = {0.3, 0.7, 1.0};
    Checks out;
    std::uint64_t j = 0;
    for (const auto& [gname, g] : fixture_graphs()) {
        for (auto kind : kAllProcesses) {
            const oracle::OrderingTable table(g, kind);
            const auto s = mc::derive_seed(seed, j++);
            const auto est = mc::estimate_occupation_table(g, kind, ts, kSamples, s, opt.workers);
            for (Vertex v = 0; v < g.vertex_count(); ++v) {
                const auto poly = table.polynomial({{v, 1}});
                for (std::size_t i = 0; i < std::size(ts); ++i)
                    out.push_back(z_check("oracle-equivalence/" + gname + "/" + name(kind) + "/t=" +
                                              num(ts[i]) + "/v=" + std::to_string(v),
                                          est[i][v], poly(ts[i])));
            }
        }
    }
    out.push_back(runtime_check("oracle-equivalence", start, 120.0));
    return out;
}

// ---------------------------------------------------------------------------
// 5

bool independent_without_isolated(const Graph& g, const std::vector<Vertex>& w) {
    for (auto v : w) {
        if (g.degree(v) == 0) return false;
        for (auto u : w)
            if (g.adjacent(u, v)) return false;
    }
    return true;
}

Checks forward_equations(const Options&, std::uint64_t) {
    Checks out;
    const double ts[] = {0.25, 0.5, 0.75};
    for (const auto& [gname, g] : fixture_graphs()) {
        const std::size_t n = g.vertex_count();
        for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
            std::vector<Vertex> w;
            std::string label;
            for (Vertex v = 0; v < n; ++v)
                if ((mask >> v) & 1U) {
                    w.push_back(v);
                    label += (label.empty() ? "" : ",") + std::to_string(v);
                }
            const std::string prefix = "forward-equations/" + gname + "/W={" + label + "}";
            for (auto kind : {ProcessKind::blocking, ProcessKind::dimer, ProcessKind::annihilation}) {
                if (kind != ProcessKind::blocking && !independent_without_isolated(g, w)) continue;
                const auto poly = oracle::forward_residual_polynomial(g, kind, w);
                for (double t : ts)
                    out.push_back(within(prefix + "/" + name(kind) + "/t=" + num(t),
                                         std::abs(as_double(poly(to_rational(t)))), 0.0, 1e-12));
            }
            const bool has_isolated =
                std::any_of(w.begin(), w.end(), [&](Vertex v) { return g.degree(v) == 0; });
            if (has_isolated) continue;
            for (auto kind : {ProcessKind::dimer, ProcessKind::annihilation}) {
                const auto sc = oracle::surgery_identity(g, kind, w);
                Rational worst = 0;
                const auto diff = sc.original - sc.split;
                for (const auto& c : diff.coefficients()) worst = std::max(worst, c < 0 ? Rational(-c) : c);
                out.push_back({prefix + "/" + name(kind) + "/splitting-identity", sc.holds(), as_double(worst),
                               0.0, 0.0, 0});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// 6

Checks correlation_signs(const Options& opt, std::uint64_t) {
    Checks out;
    const Rational ts[] = {Rational(1, 2), Rational(1)};
    for (const auto& [gname, g] : bipartite_fixtures()) {
        for (auto kind : {ProcessKind::blocking, ProcessKind::annihilation}) {
            const oracle::OrderingTable table(g, kind);
            for (Vertex u = 0; u < g.vertex_count(); ++u) {
                const auto dist = distances_from(g, u);
                const auto pu = table.polynomial({{u, 1}});
                for (Vertex v = u + 1; v < g.vertex_count(); ++v) {
                    const auto cov = table.polynomial({{u, 1}, {v, 1}}) - pu * table.polynomial({{v, 1}});
                    const int expected = dist[v] % 2 == 0 ? 1 : -1;
                    for (const auto& t : ts) {
                        const Rational c = cov(t);
                        out.push_back({"correlation-signs/oracle/" + gname + "/" + name(kind) + "/t=" +
                                           num(as_double(t)) + "/" + std::to_string(u) + "-" + std::to_string(v),
                                       sign(c) == expected, as_double(c), double(expected), 0.0, 0});
                    }
                }
            }
        }
    }
    for (auto kind : {ProcessKind::blocking, ProcessKind::annihilation})
        for (int k = 1; k <= 6; ++k)
            for (int m = 1; m <= 8; ++m)
                for (double t : {0.25, 0.5, 1.0}) {
                    const double c = opt.covariance(kind, k, m, t);
                    const int expected = m % 2 == 0 ? 1 : -1;
                    const int got = c > 0 ? 1 : (c < 0 ? -1 : 0);
                    out.push_back({"correlation-signs/tree/" + name(kind) + "/k=" + std::to_string(k) +
                                       "/m=" + std::to_string(m) + "/t=" + num(t),
                                   got == expected, c, double(expected), 0.0, 0});
                }
    return out;
}

// ---------------------------------------------------------------------------
// 7, 8

Checks lazy_tree_sampler(const Options& opt, std::uint64_t seed) {
    const auto start = Clock::now();
    Checks out;
    std::uint64_t j = 0;
    for (int k : {1, 2, 3, 5}) {
        const auto est = mc::estimate_tree_root_blocking(k, 1.0, 1000000, mc::derive_seed(seed, j++), opt.workers);
        out.push_back(z_check("lazy-tree-sampler/k=" + std::to_string(k), est,
                              bethe::occupation_probability(ProcessKind::blocking, k, 1.0)));
    }
    out.push_back(runtime_check("lazy-tree-sampler", start, 60.0));
    return out;
}

Checks truncated_tree(const Options& opt, std::uint64_t seed) {
    const auto start = Clock::now();
    constexpr int k = 3, depth = 10;
    constexpr double budget = 2e-3;  // >= path_bound_budget(3, 10) ~ 1.97e-3
    Checks out;
    out.push_back(at_most("truncated-tree/budget-covers-path-bound", mc::path_bound_budget(k, depth), budget,
                          0.0, 0));
    const std::pair<ProcessKind, double> targets[] = {{ProcessKind::dimer, 8.0 / 9.0},
                                                      {ProcessKind::annihilation, 0.25}};
    std::uint64_t j = 0;
    for (const auto& [kind, exact] : targets) {
        const auto s = mc::derive_seed(seed, j++);
        const auto est = mc::estimate_truncated_tree_root(kind, k, depth, 1.0, 10000, s, opt.workers);
        const double tol = 4.0 * est.std_error + budget;
        out.push_back({"truncated-tree/" + name(kind) + "/k=3/depth=10", std::abs(est.mean - exact) <= tol,
                       est.mean, exact, tol, s});
    }
    out.push_back(runtime_check("truncated-tree", start, 300.0));
    return out;
}

// ---------------------------------------------------------------------------
// 9

Checks lattice_bound(const Options& opt, std::uint64_t seed) {
    const auto start = Clock::now();
    const std::size_t dims[] = {50, 50};
    const auto g = make_torus(dims);
    constexpr std::size_t kReplicates = 10000;
    Checks out;
    std::uint64_t j = 0;
    for (double t : {0.5, 1.0}) {
        const auto s = mc::derive_seed(seed, j++);
        const auto occ = mc::estimate_site_average(g, ProcessKind::blocking, t, kReplicates, s, opt.workers);
        const double vacancy = 1.0 - occ.mean;
        out.push_back(at_most("lattice-bound/vacancy/t=" + num(t), vacancy,
                              bethe::blocking_vacancy_upper_bound(3, t), 3.0 * occ.std_error, s));
        if (t == 1.0) {
            out.push_back(at_least("lattice-bound/jamming-at-least-one-third", occ.mean, 1.0 / 3.0,
                                   3.0 * occ.std_error, s));
            out.push_back(within("lattice-bound/jamming-density", occ.mean, 0.364, 0.003, s));
        }
    }
    out.push_back(runtime_check("lattice-bound", start, 180.0));
    return out;
}

// ---------------------------------------------------------------------------
// 10

Checks asymptotic_variance(const Options& opt, std::uint64_t seed) {
    const auto start = Clock::now();
    constexpr std::size_t n = 10000, kReplicates = 400;
    const auto line = make_line(n);
    Checks out;
    std::uint64_t j = 0;
    std::vector<double> dimer_counts;
    for (auto kind : {ProcessKind::blocking, ProcessKind::dimer, ProcessKind::annihilation}) {
        const auto s = mc::derive_seed(seed, j++);
        auto counts = mc::sample_counts(line, {}, kind, 1.0, kReplicates, s, opt.workers);
        const auto var = mc::summarize_variance(counts, s);
        const double sigma2 = bethe::asymptotic_variance(kind, 1.0);
        out.push_back(within("asymptotic-variance/" + name(kind), var.mean / double(n), sigma2, 0.15 * sigma2, s));
        if (kind == ProcessKind::dimer) dimer_counts = std::move(counts);
    }
    // dimer on L_n has the law of twice blocking on L_{n-1}
    const auto s = mc::derive_seed(seed, j++);
    const auto blocking = mc::sample_counts(make_line(n - 1), {}, ProcessKind::blocking, 1.0, kReplicates, s,
                                            opt.workers);
    const auto d = mc::summarize(dimer_counts, s);
    const auto b = mc::summarize(blocking, s);
    const double se = std::sqrt(d.std_error * d.std_error + 4.0 * b.std_error * b.std_error);
    out.push_back({"asymptotic-variance/duality-mean", std::abs(d.mean - 2.0 * b.mean) <= 4.0 * se, d.mean,
                   2.0 * b.mean, 4.0 * se, s});
    out.push_back(runtime_check("asymptotic-variance", start, 180.0));
    return out;
}

// ---------------------------------------------------------------------------
// 11

Checks clt(const Options& opt, std::uint64_t seed) {
    const auto line = make_line(2000);
    Checks out;
    std::uint64_t j = 0;
    for (auto kind : {ProcessKind::blocking, ProcessKind::dimer, ProcessKind::annihilation})
        for (double t : {0.5, 1.0}) {
            const auto s = mc::derive_seed(seed, j++);
            const auto r = mc::clt_report(line, {}, kind, t, 2000, s, opt.workers);
            out.push_back(at_most("clt/" + name(kind) + "/t=" + num(t), r.ks_statistic, 0.05, 0.0, s));
        }
    return out;
}

// ---------------------------------------------------------------------------
// 12

Checks degenerate_variance(const Options& opt, std::uint64_t seed) {
    const auto base = make_cycle(8);
    const std::pair<std::string, Graph> constructions[] = {{"pendant-twins", with_pendant_twins(base)},
                                                           {"appended-triangles", with_appended_triangles(base)}};
    Checks out;
    std::uint64_t j = 0;
    for (const auto& [cname, g] : constructions)
        for (auto kind : {ProcessKind::blocking, ProcessKind::annihilation}) {
            const auto s = mc::derive_seed(seed, j++);
            const auto counts = mc::sample_counts(g, {}, kind, 1.0, 1000, s, opt.workers);
            const auto var = mc::summarize_variance(counts, s);
            const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
            out.push_back({"degenerate-variance/" + cname + "/" + name(kind), *lo == *hi, var.mean, 0.0, 0.0, s});
        }
    return out;
}

// ---------------------------------------------------------------------------
// 13

Checks usp_coupling(const Options& opt, std::uint64_t seed) {
    auto graphs = fixture_graphs();
    for (const char* spec : {"torus:10x10", "hex:8x6", "cycle:9", "complete:6"})
        graphs.emplace_back(spec, make_named_graph(spec));
    Checks out;
    std::uint64_t j = 0;
    for (const auto& [gname, g] : graphs) {
        const auto s = mc::derive_seed(seed, j++);
        const auto mismatches = mc::run_replicates(
            1000, s,
            [&](Rng& rng, std::size_t) {
                auto schedule = draw_schedule(g, ProcessKind::blocking, rng);
                const auto blocking = simulate(g, schedule);
                schedule.kind = ProcessKind::map;
                const auto map = simulate(g, schedule);
                std::size_t bad = 0;
                for (Vertex v = 0; v < g.vertex_count(); ++v) bad += map.final_state[v] != blocking.final_state[v];
                return bad;
            },
            opt.workers);
        std::size_t total = 0;
        for (auto m : mismatches) total += m;
        out.push_back({"usp-coupling/" + gname, total == 0, double(total), 0.0, 0.0, s});
    }
    return out;
}

// ---------------------------------------------------------------------------
// 14

Checks variance_lower_bounds(const Options& opt, std::uint64_t seed) {
    const std::size_t dims[] = {20, 20};
    const auto g = make_torus(dims);
    const int d = static_cast<int>(g.max_degree());
    constexpr std::size_t kReplicates = 1000;
    Checks out;
    std::uint64_t j = 0;
    for (auto kind : {ProcessKind::blocking, ProcessKind::dimer, ProcessKind::annihilation}) {
        const auto s = mc::derive_seed(seed, j++);
        const auto var = mc::estimate_count_variance(g, {}, kind, 0.5, kReplicates, s, opt.workers);
        out.push_back(at_least("variance-lower-bounds/" + name(kind) + "/t=0.5", var.mean,
                               bethe::variance_lower_bound(kind, d, 0.5, g.vertex_count()), 3.0 * var.std_error, s));
    }
    std::size_t w_plus = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) w_plus += positive_entropy(g, v).has_value() ? 1 : 0;
    const auto s = mc::derive_seed(seed, j++);
    const auto var = mc::estimate_count_variance(g, {}, ProcessKind::blocking, 1.0, kReplicates, s, opt.workers);
    const double bound = bethe::variance_lower_bound(ProcessKind::blocking, d, 1.0, g.vertex_count(), w_plus);
    out.push_back({"variance-lower-bounds/blocking/t=1", var.mean > bound && bound > 0.0, var.mean, bound, 0.0, s});
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

nlohmann::json to_json(const CheckResult& r) {
    return {{"check_id", r.check_id}, {"status", r.passed ? "pass" : "fail"}, {"measured", r.measured},
            {"target", r.target},     {"tolerance", r.tolerance},               {"seed", r.seed}};
}

Options::Options() : covariance(bethe::covariance) {}

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "occupation-table", "jamming occupation table", occupation_table},
        {2, "correlations-table", "pair correlation table", correlations_table},
        {3, "closed-form-identities", "tree covariance identities", closed_form_identities},
        {4, "oracle-equivalence", "Monte Carlo agrees with exact enumeration", oracle_equivalence},
        {5, "forward-equations", "forward equations and vertex splitting", forward_equations},
        {6, "correlation-signs", "covariance sign alternates with distance", correlation_signs},
        {7, "lazy-tree-sampler", "blocking root occupation on the infinite tree", lazy_tree_sampler},
        {8, "truncated-tree", "dimer and annihilation root occupation on truncated T_3", truncated_tree},
        {9, "lattice-bound", "blocking vacancy bound and jamming density on the square torus",
         lattice_bound},
        {10, "asymptotic-variance", "line variance per site and dimer/blocking duality", asymptotic_variance},
        {11, "clt", "normality of the occupied count", clt},
        {12, "degenerate-variance", "zero-variance constructions", degenerate_variance},
        {13, "usp-coupling", "MAP and blocking agree at t = 1", usp_coupling},
        {14, "variance-lower-bounds", "count variance above the lower bounds", variance_lower_bounds},
    };
    return all;
}

std::vector<const Criterion*> select(const std::string& only) {
    std::vector<const Criterion*> out;
    if (only.empty()) {
        for (const auto& c : criteria()) out.push_back(&c);
        return out;
    }
    std::size_t pos = 0;
    while (pos <= only.size()) {
        const auto comma = only.find(',', pos);
        const std::string item = only.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        pos = comma == std::string::npos ? only.size() + 1 : comma + 1;
        if (item.empty()) continue;
        const Criterion* hit = nullptr;
        for (const auto& c : criteria())
            if (c.id == item || std::to_string(c.number) == item) hit = &c;
        if (hit == nullptr) throw std::invalid_argument("unknown check '" + item + "'");
        if (std::find(out.begin(), out.end(), hit) == out.end()) out.push_back(hit);
    }
    return out;
}

Outcome run(const Criterion& c, const Options& options) {
    Outcome out;
    out.criterion = &c;
    const auto start = Clock::now();
    try {
        out.checks = c.run(options, mc::derive_seed(options.seed, static_cast<std::uint64_t>(c.number)));
        out.passed = !out.checks.empty() &&
                     std::all_of(out.checks.begin(), out.checks.end(), [](const auto& r) { return r.passed; });
    } catch (const std::exception& e) {
        out.error = c.id + ": " + e.what();
        out.passed = false;
    }
    out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return out;
}

std::vector<std::pair<std::string, Graph>> fixture_graphs() {
    std::vector<std::pair<std::string, Graph>> out;
    for (const char* spec : {"line:2", "line:3", "line:4", "line:5", "cycle:3", "cycle:4", "cycle:5", "star:2",
                             "star:3", "star:4", "complete:4"})
        out.emplace_back(spec, make_named_graph(spec));
    return out;
}

std::vector<std::pair<std::string, Graph>> bipartite_fixtures() {
    std::vector<std::pair<std::string, Graph>> out;
    for (const char* spec : {"cycle:4", "cycle:6", "line:5", "star:3"}) out.emplace_back(spec, make_named_graph(spec));
    return out;
}

double reference_occupation(ProcessKind kind, int k) {
    const auto& table = occupation_reference();
    const auto it = table.find(k);
    if (it == table.end()) throw std::invalid_argument("no reference occupation row for k=" + std::to_string(k));
    return it->second[static_cast<std::size_t>(table_column(kind))];
}

double reference_correlation(ProcessKind kind, int k, int m) {
    if (m < 1 || m > 5 || (k != 3 && k != 5))
        throw std::invalid_argument("no reference correlation for k=" + std::to_string(k) + ", m=" + std::to_string(m));
    return kCorrelationReference[m - 1][table_column(kind) * 2 + (k == 5 ? 1 : 0)];
}

}  // namespace jamming::verify
