// Command-line front end. Exit codes: 0 ok, 1 a check failed, 2 bad usage.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jamming/bethe.hpp"
#include "jamming/graph.hpp"
#include "jamming/montecarlo.hpp"
#include "jamming/oracle.hpp"
#include "jamming/tables.hpp"
#include "jamming/verify.hpp"

using namespace jamming;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string out;
    std::string format = "text";
    std::uint64_t seed = verify::kDefaultSeed;
    unsigned workers = 0;
};

// Owns the --out stream, or falls through to stdout.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw std::runtime_error("cannot open " + path + " for writing");
    }
    std::ostream& get() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::string num(double x) { return tables::full_precision(x); }

Graph load_graph(const std::string& spec, const std::string& edges_path) {
    if (!spec.empty() && !edges_path.empty()) throw UsageError("give --graph or --edges, not both");
    if (!edges_path.empty()) return read_edge_list_file(edges_path);
    if (spec.empty()) throw UsageError("a graph is required (--graph SPEC or --edges FILE)");
    try {
        return make_named_graph(spec);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

ProcessKind process_arg(const std::string& name) {
    try {
        return parse_process(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void add_common(CLI::App* cmd, Common& c, bool with_seed) {
    cmd->add_option("--out", c.out, "output file (default stdout)");
    if (with_seed) {
        cmd->add_option("--seed", c.seed, "master seed");
        cmd->add_option("--workers", c.workers, "worker threads, 0 = all cores");
    }
}

// ---------------------------------------------------------------------------

int cmd_tables(const Common& c, const std::string& which) {
    const auto fmt = tables::parse_format(c.format);
    Sink sink(c.out);
    auto& out = sink.get();
    if (which == "occupation" || which == "both") tables::write_occupation(out, fmt);
    if (which == "both" && fmt == tables::Format::text) out << '\n';
    if (which == "correlations" || which == "both") tables::write_correlations(out, fmt);
    return 0;
}

int cmd_correlations(const Common& c, const std::string& process, int k, int max_m, double t) {
    const auto kind = process_arg(process);
    const double p = bethe::occupation_probability(kind, k, t);
    Sink sink(c.out);
    auto& out = sink.get();
    if (c.format == "json") {
        auto arr = json::array();
        for (int m = 1; m <= max_m; ++m)
            arr.push_back({{"process", to_string(kind)}, {"k", k}, {"m", m}, {"t", t}, {"occupation", p},
                           {"covariance", bethe::covariance(kind, k, m, t)},
                           {"correlation", bethe::correlation(kind, k, m, t)}});
        out << arr.dump(2) << '\n';
        return 0;
    }
    const char sep = c.format == "csv" ? ',' : '\t';
    out << "m" << sep << "covariance" << sep << "correlation" << '\n';
    for (int m = 1; m <= max_m; ++m)
        out << m << sep << num(bethe::covariance(kind, k, m, t)) << sep << num(bethe::correlation(kind, k, m, t))
            << '\n';
    return 0;
}

int cmd_verify(const Common& c, const std::string& only) {
    std::vector<const verify::Criterion*> picked;
    try {
        picked = verify::select(only);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    verify::Options opt;
    opt.seed = c.seed;
    opt.workers = c.workers;
    Sink sink(c.out);
    auto& out = sink.get();
    bool all_passed = true;
    for (const auto* crit : picked) {
        const auto res = verify::run(*crit, opt);
        all_passed &= res.passed;
        for (const auto& chk : res.checks) {
            // wall-clock checks are not reproducible; keep them off the record
            const bool timing = chk.check_id.ends_with("/runtime-seconds");
            (timing ? std::cerr : out) << verify::to_json(chk).dump() << '\n';
        }
        if (!res.error.empty()) {
            verify::CheckResult err{crit->id + "/error", false, 0, 0, 0, mc::derive_seed(opt.seed, crit->number)};
            auto j = verify::to_json(err);
            j["error"] = res.error;
            out << j.dump() << '\n';
        }
        std::fprintf(stderr, "%s criterion %2d %-24s %.1f s\n", res.passed ? "PASS" : "FAIL", crit->number,
                     crit->id.c_str(), res.seconds);
    }
    return all_passed ? 0 : 1;
}

int cmd_clt(const Common& c, const Graph& g, const std::string& process, double t, std::size_t replicates) {
    const auto kind = process_arg(process);
    if (replicates < mc::kMinCltReplicates)
        throw UsageError("--replicates must be at least " + std::to_string(mc::kMinCltReplicates));
    const auto counts = mc::sample_counts(g, {}, kind, t, replicates, c.seed, c.workers);
    mc::CltReport rep;
    try {
        rep = mc::clt_report(counts);
    } catch (const mc::DegenerateVariance& e) {
        std::cerr << "degenerate variance: every replicate gave S = " << counts.front() << '\n';
        return 1;
    }
    double limit = NAN;
    if (kind != ProcessKind::map && t > 0) limit = bethe::asymptotic_variance(kind, t);
    const double n_sites = static_cast<double>(g.vertex_count());

    // running Var/n over the first i replicates (Welford)
    std::vector<double> var_per_site(counts.size(), NAN);
    double mean = 0, m2 = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double d = counts[i] - mean;
        mean += d / static_cast<double>(i + 1);
        m2 += d * (counts[i] - mean);
        if (i > 0) var_per_site[i] = m2 / static_cast<double>(i) / n_sites;
    }

    Sink sink(c.out);
    auto& out = sink.get();
    if (c.format == "json") {
        json j = {{"process", to_string(kind)}, {"t", t}, {"vertices", g.vertex_count()},
                  {"replicates", replicates}, {"seed", c.seed}, {"ks_statistic", rep.ks_statistic},
                  {"sample_mean", rep.sample_mean}, {"sample_sd", rep.sample_sd},
                  {"limit", std::isnan(limit) ? json(nullptr) : json(limit)},
                  {"counts", counts}, {"standardized", rep.standardized_samples}};
        auto vps = json::array();
        for (double v : var_per_site) vps.push_back(std::isnan(v) ? json(nullptr) : json(v));
        j["var_per_site"] = std::move(vps);
        out << j.dump() << '\n';
        return 0;
    }
    auto cell = [](double x) { return std::isnan(x) ? std::string() : num(x); };
    out << "replicate,count,standardized,var_per_site,limit,ks_statistic\n";
    for (std::size_t i = 0; i < counts.size(); ++i)
        out << i << ',' << num(counts[i]) << ',' << num(rep.standardized_samples[i]) << ','
            << cell(var_per_site[i]) << ',' << cell(limit) << ',' << num(rep.ks_statistic) << '\n';
    return 0;
}

int cmd_bounds(const Common& c, int k, double t, const std::string& process, int degree, std::size_t sites,
               std::size_t positive_sites) {
    Sink sink(c.out);
    auto& out = sink.get();
    json j = {{"k", k}, {"t", t}};
    if (k >= 2) {
        const double vac = bethe::blocking_vacancy_upper_bound(k, t);
        j["blocking_vacancy_upper"] = vac;
        j["blocking_occupation_lower"] = 1 - vac;
        j["tree_blocking_occupation"] = bethe::occupation_probability(ProcessKind::blocking, k, t);
    }
    if (degree > 0) {
        const auto kind = process_arg(process);
        j["process"] = to_string(kind);
        j["max_degree"] = degree;
        try {
            j["variance_lower"] = bethe::variance_lower_bound(kind, degree, t, sites, positive_sites);
        } catch (const bethe::UnsupportedQuery& e) {
            j["variance_lower"] = nullptr;
            j["note"] = e.what();
        }
    }
    if (c.format == "json") {
        out << j.dump(2) << '\n';
        return 0;
    }
    for (const auto& [key, val] : j.items()) {
        out << key << '\t';
        if (val.is_number_float())
            out << num(val.get<double>());
        else if (val.is_string())
            out << val.get<std::string>();
        else
            out << val.dump();
        out << '\n';
    }
    return 0;
}

int cmd_oracle(const Common& c, const Graph& g, const std::string& process, const std::string& t_text) {
    const auto kind = process_arg(process);
    Rational t;
    try {
        t = parse_rational(t_text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (t < 0 || t > 1) throw UsageError("--t must lie in [0, 1]");
    bool ok = true;
    auto arr = json::array();
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const auto p = oracle::joint_state_probability(g, kind, {{v, 1}}, t);
        json rec = {{"vertex", v}, {"occupied", to_string(p.value)}, {"occupied_value", p.to_double()}};
        if (kind != ProcessKind::map) {
            const Vertex w[] = {v};
            const auto res = oracle::forward_residual(g, kind, w, t);
            rec["forward_residual"] = to_string(res);
            ok &= res == 0;
        }
        arr.push_back(std::move(rec));
    }
    Sink sink(c.out);
    auto& out = sink.get();
    if (c.format == "json") {
        out << arr.dump(2) << '\n';
    } else {
        const char sep = c.format == "csv" ? ',' : '\t';
        out << "vertex" << sep << "occupied" << sep << "occupied_value" << sep << "forward_residual\n";
        for (const auto& rec : arr)
            out << rec["vertex"].get<Vertex>() << sep << rec["occupied"].get<std::string>() << sep
                << num(rec["occupied_value"].get<double>()) << sep
                << (rec.contains("forward_residual") ? rec["forward_residual"].get<std::string>() : "") << '\n';
    }
    return ok ? 0 : 1;
}

int cmd_simulate(const Common& c, const Graph& g, const std::string& process, double t, std::size_t samples) {
    const auto kind = process_arg(process);
    if (samples < 2) throw UsageError("--samples must be at least 2");
    const double ts[] = {t};
    const auto table = mc::estimate_occupation_table(g, kind, ts, samples, c.seed, c.workers);
    const auto avg = mc::estimate_site_average(g, kind, t, samples, c.seed, c.workers);
    Sink sink(c.out);
    auto& out = sink.get();
    if (c.format == "json") {
        auto arr = json::array();
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            arr.push_back({{"vertex", v}, {"occupied", table[0][v].mean}, {"std_error", table[0][v].std_error}});
        json j = {{"process", to_string(kind)}, {"t", t}, {"samples", samples}, {"seed", c.seed},
                  {"site_average", avg.mean}, {"site_average_std_error", avg.std_error}, {"vertices", arr}};
        out << j.dump(2) << '\n';
        return 0;
    }
    const char sep = c.format == "csv" ? ',' : '\t';
    out << "vertex" << sep << "occupied" << sep << "std_error\n";
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        out << v << sep << num(table[0][v].mean) << sep << num(table[0][v].std_error) << '\n';
    out << "average" << sep << num(avg.mean) << sep << num(avg.std_error) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and simulated random sequential adsorption and annihilation on graphs"};
    app.require_subcommand(1);

    Common c;
    std::string process = "blocking", graph_spec, edges_path, which = "both", only, t_text = "1";
    int k = 3, m = 5, degree = 0;
    double t = 1.0;
    std::size_t samples = 10000, replicates = 2000, sites = 0, positive_sites = 0;

    const auto formats = CLI::IsMember({"text", "csv", "json"});
    const auto processes = CLI::IsMember({"blocking", "dimer", "annihilation", "map"});
    const auto unit = CLI::Range(0.0, 1.0);

    auto* tables_cmd = app.add_subcommand("tables", "occupation and correlation tables at t = 1");
    tables_cmd->add_option("--which", which)->check(CLI::IsMember({"occupation", "correlations", "both"}));
    tables_cmd->add_option("--format", c.format)->check(formats);
    add_common(tables_cmd, c, false);

    auto* corr_cmd = app.add_subcommand("correlations", "tree covariance and correlation for one process");
    corr_cmd->add_option("--process", process)->check(processes);
    corr_cmd->add_option("--k", k)->check(CLI::Range(1, 1000));
    corr_cmd->add_option("--m", m, "largest distance")->check(CLI::Range(1, 200));
    corr_cmd->add_option("--t", t)->check(unit);
    corr_cmd->add_option("--format", c.format)->check(formats);
    add_common(corr_cmd, c, false);

    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance checks, one JSON line per check");
    verify_cmd->add_option("--only", only, "comma-separated criterion numbers or ids");
    add_common(verify_cmd, c, true);

    auto* clt_cmd = app.add_subcommand("clt", "standardised counts, KS statistic and Var/n trajectory (CSV)");
    clt_cmd->add_option("--graph,--lattice", graph_spec, "line:N, cycle:N, torus:AxB, hex:WxH, complete:N, star:L");
    clt_cmd->add_option("--edges", edges_path, "edge-list file");
    clt_cmd->add_option("--process", process)->check(processes);
    clt_cmd->add_option("--t", t)->check(unit);
    clt_cmd->add_option("--replicates", replicates);
    clt_cmd->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}));
    add_common(clt_cmd, c, true);

    auto* bounds_cmd = app.add_subcommand("bounds", "lattice occupation bound and variance lower bounds");
    bounds_cmd->add_option("--k", k, "lattice degree minus one")->check(CLI::Range(1, 1000));
    bounds_cmd->add_option("--t", t)->check(unit);
    bounds_cmd->add_option("--process", process)->check(processes);
    bounds_cmd->add_option("--degree", degree, "maximum degree D for the variance bound")->check(CLI::Range(1, 64));
    bounds_cmd->add_option("--sites", sites, "|V|");
    bounds_cmd->add_option("--positive-sites", positive_sites, "sites with positive entropy (t = 1)");
    bounds_cmd->add_option("--format", c.format)->check(CLI::IsMember({"text", "json"}));
    add_common(bounds_cmd, c, false);

    auto* oracle_cmd = app.add_subcommand("oracle-check", "exact occupation and forward residuals on a small graph");
    oracle_cmd->add_option("--graph,--lattice", graph_spec);
    oracle_cmd->add_option("--edges", edges_path);
    oracle_cmd->add_option("--process", process)->check(processes);
    oracle_cmd->add_option("--t", t_text, "rational, e.g. 1/2 or 0.3");
    oracle_cmd->add_option("--format", c.format)->check(formats);
    add_common(oracle_cmd, c, false);

    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo occupation per vertex");
    sim_cmd->add_option("--graph,--lattice", graph_spec);
    sim_cmd->add_option("--edges", edges_path);
    sim_cmd->add_option("--process", process)->check(processes);
    sim_cmd->add_option("--t", t)->check(unit);
    sim_cmd->add_option("--samples", samples);
    sim_cmd->add_option("--format", c.format)->check(formats);
    add_common(sim_cmd, c, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (tables_cmd->parsed()) return cmd_tables(c, which);
        if (corr_cmd->parsed()) return cmd_correlations(c, process, k, m, t);
        if (verify_cmd->parsed()) return cmd_verify(c, only);
        if (bounds_cmd->parsed()) return cmd_bounds(c, k, t, process, degree, sites, positive_sites);
        const Graph g = load_graph(graph_spec, edges_path);
        if (clt_cmd->parsed()) return cmd_clt(c, g, process, t, replicates);
        if (oracle_cmd->parsed()) return cmd_oracle(c, g, process, t_text);
        if (sim_cmd->parsed()) return cmd_simulate(c, g, process, t, samples);
    } catch (const std::exception& e) {
        // bad flags, oversized oracle instances and unsupported queries alike
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
