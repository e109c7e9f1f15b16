#include "jamming/bethe.hpp"

#include <cmath>
#include <string>

namespace jamming::bethe {

namespace {

constexpr int kMaxTerms = 500;
constexpr double kRelTol = 1e-16;

void require_k(int k, int min_k = 1) {
    if (k < min_k) throw std::invalid_argument("k must be >= " + std::to_string(min_k));
}

void require_t(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("t must lie in [0,1]");
}

void require_m(int m) {
    if (m < 1) throw std::invalid_argument("distance m must be >= 1");
}

double power_over_factorial(double x, int n) {
    double term = 1.0;
    for (int j = 1; j <= n; ++j) term *= x / j;
    return term;
}

// sum_{n >= 0} x^{s+2n} / (s+2n)!
double exp_tail_stride2(double x, int s) {
    double term = power_over_factorial(x, s);
    double sum = term;
    for (int n = 1, j = s; n < kMaxTerms; ++n) {
        term *= x * x / ((j + 1.0) * (j + 2.0));
        j += 2;
        sum += term;
        if (j > std::abs(x) && std::abs(term) <= kRelTol * std::abs(sum)) break;
    }
    return sum;
}

// u = 2 log beta for blocking RSA.
double blocking_u(int k, double t) { return 2.0 * std::log(beta(ProcessKind::blocking, k, t)); }

double blocking_covariance(int k, int m, double t) {
    const double b = beta(ProcessKind::blocking, k, t);
    const double u = 2.0 * std::log(b);
    return -0.5 * b * b * exp_tail_stride2(u, m + 1);
}

double map_covariance(int k, int m, double t) {
    const double b = beta(ProcessKind::blocking, k, t);
    const double u = 2.0 * std::log(b);
    const double bk = std::pow(b, k);
    // alpha beta - beta_{m-1} = e^{u/2} T(u, m) / 2
    const double cross = 0.5 * b * exp_tail(u, m);
    // gamma_{m-2} - beta^2, with gamma_{-1} = 1
    const double undecided =
        m == 1 ? -exp_tail(u, 1) : 0.5 * power_over_factorial(u, m - 1) - exp_tail(u, m - 1);
    return blocking_covariance(k, m, t) + 2.0 * (1.0 - t) * bk * cross +
           (1.0 - t) * (1.0 - t) * bk * bk * undecided;
}

// Pair covariance for dimer RSA and the annihilation process, from the tail
// form of the beta_m recursion: Cov = beta^{2k} (beta_m - beta^2).
double edge_process_covariance(ProcessKind kind, int k, int m, double t) {
    const double b = beta(kind, k, t);
    if (k == 1) {
        if (kind == ProcessKind::dimer) {
            const double x = -2.0 * t;
            return -std::exp(x) * (0.5 * power_over_factorial(x, m) + exp_tail(x, m + 1));
        }
        return -std::exp(-t) * exp_tail(-t, m + 1);
    }
    const double kk = k;
    const double v = 2.0 * std::log(b);
    const double c = 2.0 / (1.0 - kk);
    const double a = kind == ProcessKind::dimer ? kk / (kk - 1.0) : (kk + 1.0) / (kk - 1.0);
    const double bb = kind == ProcessKind::dimer ? 1.0 / (kk - 1.0) : 2.0 / (kk - 1.0);
    const double gap = a * power_over_factorial(v, m - 1) - exp_tail(v, m - 1) -
                       bb * std::pow(c, m - 1) * exp_tail(v / c, m - 1);
    return std::pow(b, 2 * k) * gap;
}

}  // namespace

double exp_tail(double x, int s) {
    if (s < 0) throw std::invalid_argument("exp_tail: start index must be >= 0");
    if (s == 0) return std::exp(x);
    double term = power_over_factorial(x, s);
    double sum = term;
    for (int j = s + 1; j < s + kMaxTerms; ++j) {
        term *= x / j;
        sum += term;
        if (j > std::abs(x) && std::abs(term) <= kRelTol * std::abs(sum)) break;
    }
    return sum;
}

double beta(ProcessKind kind, int k, double t) {
    require_k(k);
    require_t(t);
    const double rate = kind == ProcessKind::annihilation ? 0.5 : 1.0;
    if (k == 1) return std::exp(-rate * t);
    const double km1 = k - 1.0;
    return std::pow(1.0 + km1 * rate * t, -1.0 / km1);
}

double occupation_probability(ProcessKind kind, int k, double t) {
    const double b = beta(kind, k, t);
    switch (kind) {
        case ProcessKind::blocking: return 0.5 * (1.0 - b * b);
        case ProcessKind::dimer: return 1.0 - std::pow(b, k + 1);
        case ProcessKind::annihilation: return std::pow(b, k + 1);
        case ProcessKind::map:
            if (k < 2) throw UnsupportedQuery("MAP closed forms need k >= 2");
            return (1.0 - t) * std::pow(b, k + 1) + 0.5 * (1.0 - b * b);
    }
    throw std::invalid_argument("unknown process");
}

double covariance(ProcessKind kind, int k, int m, double t) {
    require_k(k);
    require_t(t);
    require_m(m);
    switch (kind) {
        case ProcessKind::blocking: return blocking_covariance(k, m, t);
        case ProcessKind::dimer:
        case ProcessKind::annihilation: return edge_process_covariance(kind, k, m, t);
        case ProcessKind::map:
            if (k < 2) throw UnsupportedQuery("MAP closed forms need k >= 2");
            return map_covariance(k, m, t);
    }
    throw std::invalid_argument("unknown process");
}

double correlation(ProcessKind kind, int k, int m, double t) {
    const double p = occupation_probability(kind, k, t);
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("correlation undefined: degenerate variance");
    return covariance(kind, k, m, t) / (p * (1.0 - p));
}

// ---------------------------------------------------------------------------

double blocking_gamma_m(int k, int m, double t) {
    if (m < -1) throw std::invalid_argument("gamma_m needs m >= -1");
    const double u = blocking_u(k, t);
    if (m == -1) return 1.0;
    // (1/2) u^{m+1}/(m+1)! + sum_{n<=m} u^n/n!  =  e^u - T(u, m+1) + u^{m+1}/(2 (m+1)!)
    double head = 0.0, term = 1.0;
    for (int n = 0; n <= m; ++n) {
        if (n > 0) term *= u / n;
        head += term;
    }
    return 0.5 * term * u / (m + 1) + head;
}

double blocking_beta_m(int k, int m, double t) {
    if (m < 0) throw std::invalid_argument("beta_m needs m >= 0");
    const double u = blocking_u(k, t);
    double head = 0.0, term = 1.0;
    for (int n = 0; n <= m; ++n) {
        if (n > 0) term *= u / n;
        head += term;
    }
    return 0.5 * (1.0 + head) * std::exp(0.5 * u);
}

double blocking_alpha_m(int k, int m, double t) {
    if (m < 0) throw std::invalid_argument("alpha_m needs m >= 0");
    if (m == 0) return 1.0 - occupation_probability(ProcessKind::blocking, k, t);
    const double u = blocking_u(k, t);
    double sum = 1.0;
    for (int j = m - 1; j >= 0; j -= 2) sum += power_over_factorial(u, j);
    return (m % 2 == 0 ? 0.5 : 0.0) + 0.5 * std::exp(u) * sum;
}

double tail_solution(double a, double b, double c, int m, double v) {
    if (c == 0.0) throw std::invalid_argument("tail_solution: c must be non-zero");
    require_m(m);
    double head = 0.0, term = 1.0;
    for (int j = 0; j <= m - 2; ++j) {
        if (j > 0) term *= v / j;
        head += term;
    }
    return a * power_over_factorial(v, m - 1) + head -
           b * std::pow(c, m - 1) * exp_tail(v / c, m - 1);
}

// ---------------------------------------------------------------------------

double blocking_vacancy_upper_bound(int k, double t) {
    require_k(k, 2);
    require_t(t);
    return 0.5 * (1.0 + std::pow(1.0 + (k - 1.0) * t, -2.0 / (k - 1.0)));
}

double variance_lower_bound(ProcessKind kind, int max_degree, double t, std::size_t card_v,
                            std::size_t card_w_plus) {
    if (max_degree < 1) throw std::invalid_argument("max degree must be >= 1");
    require_t(t);
    const double d = max_degree;
    if (kind == ProcessKind::map) throw UnsupportedQuery("no variance bound for the MAP");
    if (t == 1.0) {
        if (kind != ProcessKind::blocking)
            throw UnsupportedQuery("no explicit t = 1 variance bound for " +
                                   std::string(to_string(kind)));
        const double exponent = -(d * d * d * (1.0 + d) + 1.0);
        return std::exp2(exponent) / (std::pow(d, 6) * (1.0 + d) * (1.0 + d)) *
               static_cast<double>(card_w_plus);
    }
    if (t <= 0.0) throw std::invalid_argument("variance bound needs 0 < t < 1");
    if (kind == ProcessKind::blocking)
        return t * std::pow(1.0 - t, d + 1.0) / (d + 1.0) * static_cast<double>(card_v);
    return 0.5 * t * std::pow(1.0 - t, 2.0 * d - 1.0) / (2.0 * d - 1.0) *
           static_cast<double>(card_v);
}

double asymptotic_variance(ProcessKind kind, double t) {
    if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("t must lie in (0,1]");
    switch (kind) {
        case ProcessKind::blocking: return t * std::exp(-4.0 * t);
        case ProcessKind::dimer: return 4.0 * t * std::exp(-4.0 * t);
        case ProcessKind::annihilation: return (1.0 + 2.0 * t) * std::exp(-2.0 * t) - std::exp(-t);
        case ProcessKind::map: throw UnsupportedQuery("no asymptotic variance for the MAP");
    }
    throw std::invalid_argument("unknown process");
}

}  // namespace jamming::bethe
