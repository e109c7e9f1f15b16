#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "jamming/dynamics.hpp"
#include "jamming/graph.hpp"

namespace jamming::mc {

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;  // +inf when too few samples to estimate it
    std::size_t n_samples = 0;
    std::uint64_t master_seed = 0;
};

struct CltReport {
    std::vector<double> standardized_samples;
    double ks_statistic = 0.0;
    std::size_t n_replicates = 0;
    double sample_mean = 0.0;
    double sample_sd = 0.0;
};

class DegenerateVariance : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Seed of replicate i: splitmix64 finaliser applied to
// master + (i + 1) * 0x9E3779B97F4A7C15. Depends on nothing but (master, i).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// 0 means std::thread::hardware_concurrency().
unsigned resolve_workers(unsigned workers);

// Runs fn(rng, i) for i in [0, n) with rng seeded by derive_seed(master, i).
// Results land at their index, so the output does not depend on `workers`.
template <class Fn>
auto run_replicates(std::size_t n, std::uint64_t master, Fn fn, unsigned workers = 0) {
    using R = decltype(fn(std::declval<Rng&>(), std::size_t{}));
    std::vector<R> out(n);
    const auto body = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            Rng rng(derive_seed(master, i));
            out[i] = fn(rng, i);
        }
    };
    const unsigned w = std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(n, 1));
    if (w <= 1) {
        body(0, n);
        return out;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + w - 1) / w;
    for (unsigned k = 0; k < w; ++k) {
        const std::size_t lo = k * chunk, hi = std::min(n, lo + chunk);
        if (lo < hi) pool.emplace_back(body, lo, hi);
    }
    for (auto& th : pool) th.join();
    return out;
}

// Mean and sd / sqrt(n) of a sample (pairwise summation).
MCEstimate summarize(std::span<const double> samples, std::uint64_t seed);

// Unbiased sample variance with the standard error of that estimator,
// sqrt((m4 - s^4 (n-3)/(n-1)) / n).
MCEstimate summarize_variance(std::span<const double> samples, std::uint64_t seed);

// ---------------------------------------------------------------------------

MCEstimate estimate_state_probability(const Graph& g, ProcessKind kind, Vertex v, int state, double t,
                                      std::size_t n, std::uint64_t seed, unsigned workers = 0);

// P[occupied] for every vertex at every time in `ts` from one set of n runs:
// result[i][v] belongs to ts[i].
std::vector<std::vector<MCEstimate>> estimate_occupation_table(const Graph& g, ProcessKind kind,
                                                               std::span<const double> ts,
                                                               std::size_t n, std::uint64_t seed,
                                                               unsigned workers = 0);

// Per-replicate fraction of occupied sites, averaged over replicates.
// On a vertex-transitive graph this estimates the one-site marginal.
MCEstimate estimate_site_average(const Graph& g, ProcessKind kind, double t, std::size_t replicates,
                                 std::uint64_t seed, unsigned workers = 0);

// Sample covariance of the two occupation indicators, jackknife std_error.
MCEstimate estimate_pair_covariance(const Graph& g, ProcessKind kind, Vertex u, Vertex v, double t,
                                    std::size_t n, std::uint64_t seed, unsigned workers = 0);

// S_t(V, subset) per replicate, as doubles. Empty subset means all of V.
std::vector<double> sample_counts(const Graph& g, std::span<const Vertex> subset, ProcessKind kind,
                                  double t, std::size_t replicates, std::uint64_t seed,
                                  unsigned workers = 0);

MCEstimate estimate_count_variance(const Graph& g, std::span<const Vertex> subset, ProcessKind kind,
                                   double t, std::size_t replicates, std::uint64_t seed,
                                   unsigned workers = 0);

// Standardise by sample mean and sd, then the one-sample Kolmogorov-Smirnov
// distance to the standard normal. Throws DegenerateVariance on a constant
// sample and std::invalid_argument on fewer than `min_replicates` values.
inline constexpr std::size_t kMinCltReplicates = 100;
CltReport clt_report(std::span<const double> samples, std::size_t min_replicates = kMinCltReplicates);
CltReport clt_report(const Graph& g, std::span<const Vertex> subset, ProcessKind kind, double t,
                     std::size_t replicates, std::uint64_t seed, unsigned workers = 0);

double ks_statistic_normal(std::span<const double> standardized);

// (mean - exact) / std_error. Throws std::domain_error on zero std_error.
double compare(const MCEstimate& est, double exact);

// ---------------------------------------------------------------------------
// Infinite-tree estimates

// Root occupation of blocking RSA on T_k via the lazy sampler.
MCEstimate estimate_tree_root_blocking(int k, double t, std::size_t n, std::uint64_t seed,
                                       unsigned workers = 0);

// Root occupation on the depth-r truncation of T_k (dimer, annihilation),
// simulated on the whole truncated tree.
MCEstimate estimate_truncated_tree_root(ProcessKind kind, int k, int depth, double t, std::size_t n,
                                        std::uint64_t seed, unsigned workers = 0);

// (k+1) k^{r-1} / (r+1)!: probability bound for a decreasing-time path from
// the root to distance r, hence for the truncation to matter at the root.
double path_bound_budget(int k, int r);

}  // namespace jamming::mc
