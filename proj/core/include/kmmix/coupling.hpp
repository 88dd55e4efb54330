#pragma once

// Hitting times of state 0 and Monte Carlo couplings of two copies of the
// walk, one started at 0 and one drawn from the stationary law.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kmmix/chain.hpp"

namespace kmmix {

// Sum over 2i + j = k - n of k! / (i! (i+n)! j!) p^i q^(i+n) r^j: the
// probability that an unrestricted walk started at n sits at 0 after k steps
// when state 0 is treated as interior. Evaluated in log space.
double hitting_pmf_paper(const ChainParams& chain, std::size_t n, std::size_t k);

// P(tau = k | Y_0 = n), tau = min{t : Y_t = 0}, by forward dynamic
// programming with state 0 absorbing.
double hitting_pmf_exact(const ChainParams& chain, std::size_t n, std::size_t k);

// P(tau = k | Y_0 = n) for k = 0..k_max in one pass.
std::vector<double> hitting_pmf_exact_series(const ChainParams& chain, std::size_t n,
                                             std::size_t k_max);

// C beta^t with C = beta / (p rho (sqrt(q) - sqrt(p))^2).
double hitting_tail_constant(const ChainParams& chain);
double hitting_tail_asymptote(const ChainParams& chain, std::size_t t);

// P(tau > t) for Y_0 ~ nu, t = 0..horizon, by dynamic programming. The
// stationary start is truncated where its remaining mass drops below 1e-300.
std::vector<double> stationary_hitting_tail(const ChainParams& chain, std::size_t horizon);

// Least-squares slope of log(values[t]) over t in [t_lo, t_hi].
double log_slope(const std::vector<double>& values, std::size_t t_lo, std::size_t t_hi);

enum class CouplingMode { classical, modified };

const char* to_string(CouplingMode mode) noexcept;

struct SurvivalCurve {
  std::size_t horizon = 0;
  std::vector<double> survival;  // P(tau_coupling > t), t = 0..horizon
  std::vector<double> std_error;  // sqrt(s (1 - s) / replicas)
  std::uint64_t replicas = 0;
  std::uint64_t seed = 0;
  CouplingMode mode = CouplingMode::classical;
};

// Builds a curve from coupling times; times above horizon count as censored.
SurvivalCurve survival_from_counts(const std::vector<std::uint64_t>& coupled_at,
                                   std::uint64_t replicas, std::uint64_t seed,
                                   CouplingMode mode);

// Samples from the stationary law by inverting its closed-form tail.
// `u` must lie in [0, 1).
std::size_t sample_stationary(const ChainParams& chain, double u);

inline constexpr std::uint64_t kDefaultSeed = 20090601;

// X_0 = 0, Y_0 ~ nu. Classical: independent moves until X_t = Y_t.
// Modified: one shared increment while both are away from 0, independent
// moves while exactly one sits at 0. Replica k draws only from its own
// counter-based stream, so the result does not depend on `threads`
// (0 = hardware concurrency).
SurvivalCurve simulate_coupling(const ChainParams& chain, CouplingMode mode,
                                std::size_t horizon, std::uint64_t replicas,
                                std::uint64_t seed = kDefaultSeed, unsigned threads = 0);

inline SurvivalCurve simulate_classical(const ChainParams& chain, std::size_t horizon,
                                        std::uint64_t replicas,
                                        std::uint64_t seed = kDefaultSeed,
                                        unsigned threads = 0) {
  return simulate_coupling(chain, CouplingMode::classical, horizon, replicas, seed, threads);
}

inline SurvivalCurve simulate_modified(const ChainParams& chain, std::size_t horizon,
                                       std::uint64_t replicas,
                                       std::uint64_t seed = kDefaultSeed,
                                       unsigned threads = 0) {
  return simulate_coupling(chain, CouplingMode::modified, horizon, replicas, seed, threads);
}

struct RateFit {
  double rate;    // exp(slope)
  double std_error;  // delta-method standard error of rate
  double slope;
  double slope_stderr;
  std::size_t points;
};

// Least-squares fit of log survival over [t_lo, t_hi]. Throws
// InvalidParameter when the window leaves the horizon or contains a zero.
RateFit rate_fit(const SurvivalCurve& curve, std::size_t t_lo, std::size_t t_hi);

}  // namespace kmmix
