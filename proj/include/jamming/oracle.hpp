#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "jamming/dynamics.hpp"
#include "jamming/graph.hpp"
#include "jamming/polynomial.hpp"

// Exact probabilities on small graphs by enumerating every ordering of the
// driving events (and, for annihilation, every attack-direction pattern).
//
// Event times are i.i.d. uniform, so the order in which events fire is
// uniform over permutations and independent of the order statistics. Given
// that exactly j of the n events have happened by time t, the configuration
// is the one reached after the first j events of the ordering, and
// P[J = j] = C(n,j) t^j (1-t)^{n-j}. Every time-t probability is therefore a
// polynomial in t with rational coefficients.
namespace jamming::oracle {

class OracleTooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kMaxEvents = 8;
inline constexpr std::size_t kMaxDirectionPatterns = 256;

// vertex -> required state (1 occupied, 0 vacant)
using Assignment = std::map<Vertex, int>;

struct OracleValue {
    Rational value;                     // at t
    Rational t;
    Polynomial polynomial;              // the probability as a function of t
    std::vector<Rational> conditional;  // [j] = P[holds | exactly j events by t]

    double to_double() const { return value.convert_to<double>(); }
};

// Outcomes of every (ordering, direction pattern), replayed through
// jamming::simulate. An outcome records for each vertex the rank (1-based
// position in the ordering) of the event that flipped it, 0 if none.
class OrderingTable {
public:
    OrderingTable(const Graph& g, ProcessKind kind);

    ProcessKind kind() const { return kind_; }
    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t event_count() const { return event_count_; }
    // n! * 2^edges (annihilation) or n!
    std::uint64_t total_weight() const { return total_weight_; }
    const std::map<std::vector<std::uint8_t>, std::uint64_t>& outcomes() const { return outcomes_; }

    std::vector<Rational> conditional(const Assignment& a) const;
    Polynomial polynomial(const Assignment& a) const;
    std::map<std::string, Rational> final_distribution() const;

private:
    ProcessKind kind_;
    std::size_t vertex_count_ = 0;
    std::size_t event_count_ = 0;
    std::uint64_t total_weight_ = 1;
    std::map<std::vector<std::uint8_t>, std::uint64_t> outcomes_;
};

// Final configuration ("0110", vertex order) -> probability.
std::map<std::string, Rational> final_distribution(const Graph& g, ProcessKind kind);

OracleValue joint_state_probability(const Graph& g, ProcessKind kind, const Assignment& a,
                                    const Rational& t);

// Cov(state(u, t), state(v, t)); value and polynomial only.
OracleValue pair_covariance(const Graph& g, ProcessKind kind, Vertex u, Vertex v, const Rational& t);

// d/dt P[W in the watched state] + c * sum_{v in W} P_{G - v}[(W u N(v)) - v in the watched state]
// as an exact polynomial in t. Watched state and c: vacant, 1 (blocking,
// dimer); occupied, 1/2 (annihilation). For dimer and annihilation W must
// consist of degree-1 vertices whose neighbours lie outside W; if some w in W
// has degree != 1, W is first replaced by W* on the split graph. The MAP has
// no forward equation here and throws.
Polynomial forward_residual_polynomial(const Graph& g, ProcessKind kind, std::span<const Vertex> w);
Rational forward_residual(const Graph& g, ProcessKind kind, std::span<const Vertex> w,
                          const Rational& t);

// Both sides of the splitting identity, as polynomials in t:
//   dimer:        P_G[W vacant]   = P_{G~_W}[W* vacant]
//   annihilation: P_G[W occupied] = P_{G~_W}[W* occupied]
struct SurgeryCheck {
    Polynomial original;
    Polynomial split;
    bool holds() const { return original == split; }
};

SurgeryCheck surgery_identity(const Graph& g, ProcessKind kind, std::span<const Vertex> w);

}  // namespace jamming::oracle
