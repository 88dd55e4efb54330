#pragma once

// Reflecting nearest-neighbour walk on {0, 1, 2, ...}:
//
//   P(0, 1) = 1
//   P(n, n-1) = q,  P(n, n) = r,  P(n, n+1) = p   for n >= 1
//
// with q > p > 0 and r > 0. The chain is positive recurrent and aperiodic.

#include <cstddef>
#include <vector>

namespace kmmix {

inline constexpr double kStochasticTolerance = 1e-12;

class ChainParams {
 public:
  // Validates the triple; throws InvalidParameter naming the violated
  // constraint.
  static ChainParams make(double p, double q, double r);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  double r() const noexcept { return r_; }

  double sqrt_pq() const noexcept { return sqrt_pq_; }
  // sqrt(q/p): modulus of both characteristic roots on the continuous spectrum.
  double root_modulus() const noexcept { return root_modulus_; }

  // q/(q+r); the negative atom of the spectral measure sits at -alpha().
  double alpha() const noexcept { return q_ / (q_ + r_); }
  // r + 2 sqrt(pq); right edge of the continuous spectrum.
  double beta() const noexcept { return r_ + 2.0 * sqrt_pq_; }

  double support_lo() const noexcept { return r_ - 2.0 * sqrt_pq_; }
  double support_hi() const noexcept { return beta(); }

  double transition(std::size_t from, std::size_t to) const noexcept;

  friend bool operator==(const ChainParams&, const ChainParams&) = default;

 private:
  ChainParams(double p, double q, double r);

  double p_;
  double q_;
  double r_;
  double sqrt_pq_;
  double root_modulus_;
};

inline ChainParams new_chain(double p, double q, double r) {
  return ChainParams::make(p, q, r);
}

// Reversibility weights pi_0 = 1, pi_n = p^(n-1) / q^n, and their total rho.
class ReversibilityData {
 public:
  explicit ReversibilityData(const ChainParams& chain);

  double rho() const noexcept { return rho_; }
  double pi(std::size_t n) const;
  // sum_{k > n} pi_k, closed geometric form.
  double pi_tail(std::size_t n) const;

  double stationary(std::size_t n) const { return pi(n) / rho_; }
  double stationary_tail(std::size_t n) const { return pi_tail(n) / rho_; }

  // pi_n P(n, n+1) - pi_{n+1} P(n+1, n)
  double detailed_balance_residual(std::size_t n) const;

 private:
  ChainParams chain_;
  double rho_;
};

inline ReversibilityData reversibility(const ChainParams& chain) {
  return ReversibilityData(chain);
}

// Probability vector carried on states [offset, offset + mass.size()).
// tail_bound bounds the mass that is not represented in `mass`.
struct DistributionVector {
  std::size_t offset = 0;
  std::vector<double> mass;
  double tail_bound = 0.0;

  static DistributionVector point_mass(std::size_t state);

  std::size_t end() const noexcept { return offset + mass.size(); }
  double at(std::size_t state) const noexcept;
  double total() const noexcept;
};

// Exact t-step evolution mu P^t. The carried support grows by one state on
// each side per step, so nothing is ever truncated.
DistributionVector evolve(const ChainParams& chain, DistributionVector start,
                          std::size_t t);

// Total variation distance between `mu` and the stationary law, using the
// closed stationary tail beyond the carried support.
double tv_to_stationary(const ChainParams& chain, const DistributionVector& mu);

// Exact || nu - delta_0 P^t ||_TV by dynamic programming.
double tv_oracle(const ChainParams& chain, std::size_t t);

// Exact p_t(i, j) by dynamic programming.
double kernel_oracle(const ChainParams& chain, std::size_t t, std::size_t i,
                     std::size_t j);

// Energy function V(x) = (q/p)^(x/2).
double energy(const ChainParams& chain, std::size_t x);

// E[V(X_1) | X_0 = x] - beta V(x) - (sqrt(q/p) - beta) 1{x = 0}.
// Analytically zero for every x.
double drift_identity_residual(const ChainParams& chain, std::size_t x);

}  // namespace kmmix
