#include "jamming/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace jamming::mc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pairwise_sum(std::span<const double> x) {
    if (x.size() <= 32) {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    }
    const std::size_t half = x.size() / 2;
    return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

double mean_of(std::span<const double> x) { return pairwise_sum(x) / static_cast<double>(x.size()); }

// sum (x - c)^p
double central_power_sum(std::span<const double> x, double c, int p) {
    std::vector<double> d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = std::pow(x[i] - c, p);
    return pairwise_sum(d);
}

void require_t(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("t must lie in [0,1]");
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

unsigned resolve_workers(unsigned workers) {
    if (workers != 0) return workers;
    return std::max(1u, std::thread::hardware_concurrency());
}

MCEstimate summarize(std::span<const double> samples, std::uint64_t seed) {
    MCEstimate est;
    est.n_samples = samples.size();
    est.master_seed = seed;
    if (samples.empty()) throw std::invalid_argument("summarize: no samples");
    est.mean = mean_of(samples);
    const double n = static_cast<double>(samples.size());
    if (samples.size() < 2) {
        est.std_error = kInf;
        return est;
    }
    const double var = central_power_sum(samples, est.mean, 2) / (n - 1.0);
    est.std_error = std::sqrt(var / n);
    return est;
}

MCEstimate summarize_variance(std::span<const double> samples, std::uint64_t seed) {
    if (samples.size() < 2) throw std::invalid_argument("variance needs at least 2 replicates");
    const double n = static_cast<double>(samples.size());
    const double mean = mean_of(samples);
    const double s2 = central_power_sum(samples, mean, 2) / (n - 1.0);
    const double m4 = central_power_sum(samples, mean, 4) / n;
    MCEstimate est;
    est.mean = s2;
    est.n_samples = samples.size();
    est.master_seed = seed;
    est.std_error = std::sqrt(std::max(0.0, (m4 - s2 * s2 * (n - 3.0) / (n - 1.0)) / n));
    return est;
}

// ---------------------------------------------------------------------------

MCEstimate estimate_state_probability(const Graph& g, ProcessKind kind, Vertex v, int state, double t,
                                      std::size_t n, std::uint64_t seed, unsigned workers) {
    if (n < 1) throw std::invalid_argument("need at least one sample");
    if (v >= g.vertex_count()) throw std::out_of_range("vertex out of range");
    if (state != 0 && state != 1) throw std::invalid_argument("state must be 0 or 1");
    require_t(t);
    const auto hits = run_replicates(
        n, seed,
        [&](Rng& rng, std::size_t) {
            const auto traj = simulate(g, draw_schedule(g, kind, rng));
            return traj.state_at(v, t) == state ? 1.0 : 0.0;
        },
        workers);
    return summarize(hits, seed);
}

std::vector<std::vector<MCEstimate>> estimate_occupation_table(const Graph& g, ProcessKind kind,
                                                               std::span<const double> ts,
                                                               std::size_t n, std::uint64_t seed,
                                                               unsigned workers) {
    if (n < 1) throw std::invalid_argument("need at least one sample");
    for (double t : ts) require_t(t);
    const std::size_t nv = g.vertex_count();
    // one row per replicate: occupation indicators for each (t, v)
    const auto rows = run_replicates(
        n, seed,
        [&](Rng& rng, std::size_t) {
            const auto traj = simulate(g, draw_schedule(g, kind, rng));
            std::vector<std::uint8_t> row(ts.size() * nv);
            for (std::size_t i = 0; i < ts.size(); ++i)
                for (Vertex v = 0; v < nv; ++v)
                    row[i * nv + v] = static_cast<std::uint8_t>(traj.state_at(v, ts[i]));
            return row;
        },
        workers);
    std::vector<std::vector<MCEstimate>> out(ts.size(), std::vector<MCEstimate>(nv));
    std::vector<double> column(n);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        for (Vertex v = 0; v < nv; ++v) {
            for (std::size_t r = 0; r < n; ++r) column[r] = rows[r][i * nv + v];
            out[i][v] = summarize(column, seed);
        }
    }
    return out;
}

MCEstimate estimate_site_average(const Graph& g, ProcessKind kind, double t, std::size_t replicates,
                                 std::uint64_t seed, unsigned workers) {
    if (g.vertex_count() == 0) throw std::invalid_argument("empty graph");
    const auto counts = sample_counts(g, {}, kind, t, replicates, seed, workers);
    std::vector<double> frac(counts.size());
    const double nv = static_cast<double>(g.vertex_count());
    for (std::size_t i = 0; i < counts.size(); ++i) frac[i] = counts[i] / nv;
    return summarize(frac, seed);
}

MCEstimate estimate_pair_covariance(const Graph& g, ProcessKind kind, Vertex u, Vertex v, double t,
                                    std::size_t n, std::uint64_t seed, unsigned workers) {
    if (n < 2) throw std::invalid_argument("covariance needs at least 2 samples");
    if (u >= g.vertex_count() || v >= g.vertex_count()) throw std::out_of_range("vertex out of range");
    require_t(t);
    const auto pairs = run_replicates(
        n, seed,
        [&](Rng& rng, std::size_t) {
            const auto traj = simulate(g, draw_schedule(g, kind, rng));
            return std::pair<double, double>(traj.state_at(u, t), traj.state_at(v, t));
        },
        workers);
    std::vector<double> x(n), y(n), xy(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = pairs[i].first;
        y[i] = pairs[i].second;
        xy[i] = x[i] * y[i];
    }
    const double nn = static_cast<double>(n);
    const double sx = pairwise_sum(x), sy = pairwise_sum(y), sxy = pairwise_sum(xy);
    MCEstimate est;
    est.n_samples = n;
    est.master_seed = seed;
    est.mean = (sxy - sx * sy / nn) / (nn - 1.0);
    if (n < 3) {
        est.std_error = kInf;
        return est;
    }
    // leave-one-out covariances in closed form
    std::vector<double> loo(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ax = sx - x[i], ay = sy - y[i];
        loo[i] = (sxy - xy[i] - ax * ay / (nn - 1.0)) / (nn - 2.0);
    }
    const double loo_mean = mean_of(loo);
    est.std_error = std::sqrt((nn - 1.0) / nn * central_power_sum(loo, loo_mean, 2));
    return est;
}

std::vector<double> sample_counts(const Graph& g, std::span<const Vertex> subset, ProcessKind kind,
                                  double t, std::size_t replicates, std::uint64_t seed,
                                  unsigned workers) {
    require_t(t);
    for (auto v : subset)
        if (v >= g.vertex_count()) throw std::out_of_range("subset vertex out of range");
    return run_replicates(
        replicates, seed,
        [&](Rng& rng, std::size_t) {
            const auto traj = simulate(g, draw_schedule(g, kind, rng));
            const auto c = subset.empty() ? count_occupied(traj, t) : count_occupied(traj, subset, t);
            return static_cast<double>(c);
        },
        workers);
}

MCEstimate estimate_count_variance(const Graph& g, std::span<const Vertex> subset, ProcessKind kind,
                                   double t, std::size_t replicates, std::uint64_t seed,
                                   unsigned workers) {
    if (replicates < 2) throw std::invalid_argument("variance needs at least 2 replicates");
    const auto counts = sample_counts(g, subset, kind, t, replicates, seed, workers);
    return summarize_variance(counts, seed);
}

// ---------------------------------------------------------------------------

double ks_statistic_normal(std::span<const double> standardized) {
    if (standardized.empty()) throw std::invalid_argument("KS statistic of an empty sample");
    std::vector<double> z(standardized.begin(), standardized.end());
    std::sort(z.begin(), z.end());
    const double n = static_cast<double>(z.size());
    double d = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double phi = 0.5 * std::erfc(-z[i] / std::sqrt(2.0));
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - phi, phi - static_cast<double>(i) / n});
    }
    return d;
}

CltReport clt_report(std::span<const double> samples, std::size_t min_replicates) {
    if (samples.size() < std::max<std::size_t>(min_replicates, 2))
        throw std::invalid_argument("CLT report needs at least " + std::to_string(min_replicates) +
                                    " replicates");
    CltReport r;
    r.n_replicates = samples.size();
    r.sample_mean = mean_of(samples);
    const double n = static_cast<double>(samples.size());
    r.sample_sd = std::sqrt(central_power_sum(samples, r.sample_mean, 2) / (n - 1.0));
    if (!(r.sample_sd > 0.0)) throw DegenerateVariance("sample variance is zero; nothing to standardise");
    r.standardized_samples.resize(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        r.standardized_samples[i] = (samples[i] - r.sample_mean) / r.sample_sd;
    r.ks_statistic = ks_statistic_normal(r.standardized_samples);
    return r;
}

CltReport clt_report(const Graph& g, std::span<const Vertex> subset, ProcessKind kind, double t,
                     std::size_t replicates, std::uint64_t seed, unsigned workers) {
    if (replicates < kMinCltReplicates)
        throw std::invalid_argument("CLT report needs at least " + std::to_string(kMinCltReplicates) +
                                    " replicates");
    return clt_report(sample_counts(g, subset, kind, t, replicates, seed, workers));
}

double compare(const MCEstimate& est, double exact) {
    if (!(est.std_error > 0.0)) throw std::domain_error("compare: zero standard error");
    return (est.mean - exact) / est.std_error;
}

// ---------------------------------------------------------------------------

MCEstimate estimate_tree_root_blocking(int k, double t, std::size_t n, std::uint64_t seed,
                                       unsigned workers) {
    if (n < 1) throw std::invalid_argument("need at least one sample");
    const auto hits = run_replicates(
        n, seed, [&](Rng& rng, std::size_t) { return double(sample_tree_root_blocking(k, k + 1, t, rng)); },
        workers);
    return summarize(hits, seed);
}

MCEstimate estimate_truncated_tree_root(ProcessKind kind, int k, int depth, double t, std::size_t n,
                                        std::uint64_t seed, unsigned workers) {
    if (n < 1) throw std::invalid_argument("need at least one sample");
    const auto tree = make_tree(TreeSpec::bethe(k, depth));
    const Vertex root = tree.roots.at(0);
    const auto hits = run_replicates(
        n, seed,
        [&](Rng& rng, std::size_t) {
            const auto traj = simulate(tree.graph, draw_schedule(tree.graph, kind, rng));
            return double(traj.state_at(root, t));
        },
        workers);
    return summarize(hits, seed);
}

double path_bound_budget(int k, int r) {
    if (k < 1 || r < 1) throw std::invalid_argument("path bound needs k >= 1 and r >= 1");
    // log-space: (k+1) k^{r-1} / (r+1)!
    const double log_b = std::log(k + 1.0) + (r - 1) * std::log(double(k)) - std::lgamma(r + 2.0);
    return std::exp(log_b);
}

}  // namespace jamming::mc
