#include "kmmix/chain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "kmmix/error.hpp"

namespace kmmix {

namespace {

[[noreturn]] void reject(const std::string& why, double p, double q, double r) {
  std::ostringstream os;
  os.precision(17);
  os << why << " (p=" << p << ", q=" << q << ", r=" << r << ")";
  throw InvalidParameter(os.str());
}

}  // namespace

ChainParams::ChainParams(double p, double q, double r)
    : p_(p),
      q_(q),
      r_(r),
      sqrt_pq_(std::sqrt(p * q)),
      root_modulus_(std::sqrt(q / p)) {}

ChainParams ChainParams::make(double p, double q, double r) {
  if (!std::isfinite(p) || !std::isfinite(q) || !std::isfinite(r)) {
    reject("parameters must be finite", p, q, r);
  }
  if (!(p > 0.0)) reject("p must be positive", p, q, r);
  if (!(r > 0.0)) reject("r must be positive", p, q, r);
  if (!(std::abs(p + q + r - 1.0) <= kStochasticTolerance)) {
    reject("p + q + r must equal 1 (rows of P are stochastic)", p, q, r);
  }
  if (!(q > p)) reject("q must exceed p", p, q, r);
  return ChainParams(p, q, r);
}

double ChainParams::transition(std::size_t from, std::size_t to) const noexcept {
  if (from == 0) return to == 1 ? 1.0 : 0.0;
  if (to + 1 == from) return q_;
  if (to == from) return r_;
  if (to == from + 1) return p_;
  return 0.0;
}

ReversibilityData::ReversibilityData(const ChainParams& chain)
    : chain_(chain), rho_((chain.q() - chain.p() + 1.0) / (chain.q() - chain.p())) {}

double ReversibilityData::pi(std::size_t n) const {
  if (n == 0) return 1.0;
  const double p = chain_.p();
  const double q = chain_.q();
  return std::pow(p / q, static_cast<double>(n - 1)) / q;
}

double ReversibilityData::pi_tail(std::size_t n) const {
  const double p = chain_.p();
  const double q = chain_.q();
  // sum_{k >= n+1} p^(k-1)/q^k = (p^n / q^(n+1)) / (1 - p/q)
  return std::pow(p / q, static_cast<double>(n)) / q / (1.0 - p / q);
}

double ReversibilityData::detailed_balance_residual(std::size_t n) const {
  return pi(n) * chain_.transition(n, n + 1) -
         pi(n + 1) * chain_.transition(n + 1, n);
}

DistributionVector DistributionVector::point_mass(std::size_t state) {
  return DistributionVector{state, {1.0}, 0.0};
}

double DistributionVector::at(std::size_t state) const noexcept {
  if (state < offset || state >= end()) return 0.0;
  return mass[state - offset];
}

double DistributionVector::total() const noexcept {
  double s = 0.0;
  for (double m : mass) s += m;
  return s;
}

DistributionVector evolve(const ChainParams& chain, DistributionVector start,
                          std::size_t t) {
  const double p = chain.p();
  const double q = chain.q();
  const double r = chain.r();

  DistributionVector cur = std::move(start);
  std::vector<double> next;
  for (std::size_t step = 0; step < t; ++step) {
    const std::size_t lo = cur.offset == 0 ? 0 : cur.offset - 1;
    const std::size_t hi = cur.end() + 1;
    next.assign(hi - lo, 0.0);
    for (std::size_t k = 0; k < cur.mass.size(); ++k) {
      const std::size_t n = cur.offset + k;
      const double m = cur.mass[k];
      if (m == 0.0) continue;
      if (n == 0) {
        next[1 - lo] += m;
        continue;
      }
      next[n - 1 - lo] += q * m;
      next[n - lo] += r * m;
      next[n + 1 - lo] += p * m;
    }
    cur.offset = lo;
    cur.mass.swap(next);
  }
  return cur;
}

double tv_to_stationary(const ChainParams& chain, const DistributionVector& mu) {
  const ReversibilityData rev(chain);
  double sum = 0.0;
  // States below the carried support carry no mass of mu.
  for (std::size_t n = 0; n < mu.offset; ++n) sum += rev.stationary(n);
  for (std::size_t k = 0; k < mu.mass.size(); ++k) {
    sum += std::abs(mu.mass[k] - rev.stationary(mu.offset + k));
  }
  const std::size_t last = mu.end() == 0 ? 0 : mu.end() - 1;
  sum += rev.stationary_tail(last);
  return std::clamp(0.5 * sum, 0.0, 1.0);
}

double tv_oracle(const ChainParams& chain, std::size_t t) {
  return tv_to_stationary(chain, evolve(chain, DistributionVector::point_mass(0), t));
}

double kernel_oracle(const ChainParams& chain, std::size_t t, std::size_t i,
                     std::size_t j) {
  return evolve(chain, DistributionVector::point_mass(i), t).at(j);
}

double energy(const ChainParams& chain, std::size_t x) {
  return std::pow(chain.q() / chain.p(), 0.5 * static_cast<double>(x));
}

double drift_identity_residual(const ChainParams& chain, std::size_t x) {
  const double beta = chain.beta();
  if (x == 0) {
    return energy(chain, 1) - beta * energy(chain, 0) -
           (chain.root_modulus() - beta);
  }
  const double expected = chain.q() * energy(chain, x - 1) +
                          chain.r() * energy(chain, x) +
                          chain.p() * energy(chain, x + 1);
  return expected - beta * energy(chain, x);
}

}  // namespace kmmix
