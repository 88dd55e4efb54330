#include "kmmix/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <map>
#include <memory>
#include <mutex>

#include "kmmix/error.hpp"

namespace kmmix {

namespace {

template <class T>
BasicGaussRule<T> build_rule(std::size_t n) {
  BasicGaussRule<T> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const T nn = static_cast<T>(n);
  const T eps = std::numeric_limits<T>::epsilon();
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    T x = std::cos(std::numbers::pi_v<T> * (static_cast<T>(i) + T(0.75)) / (nn + T(0.5)));
    T dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      T p0 = 1;
      T p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const T kk = static_cast<T>(k);
        const T p2 = ((2 * kk - 1) * x * p1 - (kk - 1) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = nn * (x * p1 - p0) / (x * x - 1);
      const T dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 4 * eps) break;
    }
    // One more derivative evaluation at the converged root.
    {
      T p0 = 1;
      T p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const T kk = static_cast<T>(k);
        const T p2 = ((2 * kk - 1) * x * p1 - (kk - 1) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = nn * (x * p1 - p0) / (x * x - 1);
    }
    const T w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0;
  return rule;
}

template <class T>
const BasicGaussRule<T>& cached_rule(std::size_t n) {
  if (n == 0) throw InvalidParameter("gauss_legendre: node count must be positive");
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<BasicGaussRule<T>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<BasicGaussRule<T>>(build_rule<T>(n));
  return *slot;
}

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) { return cached_rule<double>(n); }

const ExtendedGaussRule& gauss_legendre_extended(std::size_t n) {
  return cached_rule<long double>(n);
}

}  // namespace kmmix
