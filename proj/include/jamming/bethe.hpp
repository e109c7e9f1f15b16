#pragma once

#include <cstddef>
#include <stdexcept>

#include "jamming/dynamics.hpp"

// Closed forms on the (k+1)-regular tree T_k.
//
// Orientation: every function returns occupancy-oriented quantities except
// beta(), which is the probability that the root of the relevant one-branch
// tree is still in its initial state, and blocking_vacancy_upper_bound().
// Covariances are orientation-free (flipping both indicators keeps them).
namespace jamming::bethe {

class UnsupportedQuery : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Initial-state probability of the root of T_k^* (blocking, MAP) or T_k^1
// (dimer, annihilation).
double beta(ProcessKind kind, int k, double t);

// P[site occupied at time t] on T_k. MAP requires k >= 2.
double occupation_probability(ProcessKind kind, int k, double t);

// Cov of the occupation indicators of two sites at distance m >= 1.
double covariance(ProcessKind kind, int k, int m, double t);

// Pearson correlation covariance / (p (1 - p)). Throws if p is 0 or 1.
double correlation(ProcessKind kind, int k, int m, double t);

// ---------------------------------------------------------------------------
// Series helpers

// sum_{j >= s} x^j / j!, summed term by term from j = s.
double exp_tail(double x, int s);

// Blocking RSA vacancy sequences on the tree families (valid for k >= 1):
//   gamma_m  = P[both roots of T_{k,m}^** vacant], m >= -1 (gamma_{-1} = 1,
//              gamma_0 = P[root of T_k^** vacant])
//   beta_m   = P[root of T_k^* and a vertex at distance m both vacant], m >= 0
//   alpha_m  = P[two vertices of T_k at distance m both vacant], m >= 0
double blocking_gamma_m(int k, int m, double t);
double blocking_beta_m(int k, int m, double t);
double blocking_alpha_m(int k, int m, double t);

// Solution of d beta_m / dv = beta_{m-1} with beta_1 = a - b e^{v/c} and
// beta_m(0) = 1:
//   a v^{m-1}/(m-1)! + sum_{j<=m-2} v^j/j! - b c^{m-1} sum_{j>=m-1} (v/c)^j/j!
// Throws std::invalid_argument when c == 0 or m < 1.
double tail_solution(double a, double b, double c, int m, double v);

// ---------------------------------------------------------------------------
// Bounds and limits

// Upper bound on blocking vacancy at time t for bipartite lattices of degree
// k+1, k >= 2.
double blocking_vacancy_upper_bound(int k, double t);

// Lower bound on Var S_t(V, W) for maximum degree D.
//   blocking, 0 < t < 1:               t (1-t)^{D+1} / (D+1) * card_v
//   dimer/annihilation, 0 < t < 1:     t (1-t)^{2D-1} / (2(2D-1)) * card_v
//   blocking, t = 1:                   2^{-(D^3(1+D)+1)} / (D^6 (1+D)^2) * card_w_plus
// Annihilation at t = 1 has no explicit constant and throws UnsupportedQuery,
// as do dimer at t = 1 and MAP.
double variance_lower_bound(ProcessKind kind, int max_degree, double t, std::size_t card_v,
                            std::size_t card_w_plus = 0);

// lim n^{-1} Var S_t(L_n, L_n) on the line, t in (0, 1]. MAP unsupported.
double asymptotic_variance(ProcessKind kind, double t);

}  // namespace jamming::bethe
