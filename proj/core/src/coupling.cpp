#include "kmmix/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "kmmix/error.hpp"
#include "kmmix/rng.hpp"

namespace kmmix {

namespace {

// One step of the walk driven by a uniform u in [0, 1).
std::size_t step_from(const ChainParams& chain, std::size_t x, double u) noexcept {
  if (x == 0) return 1;
  if (u < chain.q()) return x - 1;
  if (u < chain.q() + chain.r()) return x;
  return x + 1;
}

int increment_from(const ChainParams& chain, double u) noexcept {
  if (u < chain.q()) return -1;
  if (u < chain.q() + chain.r()) return 0;
  return 1;
}

// Coupling time of one replica, or horizon + 1 if not coupled by the horizon.
std::size_t run_replica(const ChainParams& chain, const Philox4x32& gen, CouplingMode mode,
                        std::size_t horizon, std::uint64_t replica) {
  const auto lo = static_cast<std::uint32_t>(replica);
  const auto hi = static_cast<std::uint32_t>(replica >> 32);
  const auto init = gen({0U, 0U, lo, hi});
  std::size_t x = 0;
  std::size_t y = sample_stationary(chain, to_unit_interval(init[0], init[1]));
  if (x == y) return 0;
  for (std::size_t t = 1; t <= horizon; ++t) {
    const auto block = gen({static_cast<std::uint32_t>(t), 1U, lo, hi});
    const double ux = to_unit_interval(block[0], block[1]);
    const double uy = to_unit_interval(block[2], block[3]);
    if (mode == CouplingMode::modified && x != 0 && y != 0) {
      const int d = increment_from(chain, ux);
      x = static_cast<std::size_t>(static_cast<long long>(x) + d);
      y = static_cast<std::size_t>(static_cast<long long>(y) + d);
    } else {
      x = step_from(chain, x, ux);
      y = step_from(chain, y, uy);
    }
    if (x == y) return t;
  }
  return horizon + 1;
}

}  // namespace

double hitting_pmf_paper(const ChainParams& chain, std::size_t n, std::size_t k) {
  if (n == 0) throw InvalidParameter("hitting_pmf_paper requires n >= 1");
  if (k < n) return 0.0;
  const double lp = std::log(chain.p());
  const double lq = std::log(chain.q());
  const double lr = std::log(chain.r());
  const double kk = static_cast<double>(k);
  const double nn = static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t i = 0; 2 * i <= k - n; ++i) {
    const double ii = static_cast<double>(i);
    const double jj = static_cast<double>(k - n - 2 * i);
    const double log_term = std::lgamma(kk + 1.0) - std::lgamma(ii + 1.0) -
                            std::lgamma(ii + nn + 1.0) - std::lgamma(jj + 1.0) + ii * lp +
                            (ii + nn) * lq + jj * lr;
    sum += std::exp(log_term);
  }
  return sum;
}

std::vector<double> hitting_pmf_exact_series(const ChainParams& chain, std::size_t n,
                                             std::size_t k_max) {
  std::vector<double> out(k_max + 1, 0.0);
  if (n == 0) {
    out[0] = 1.0;
    return out;
  }
  const double p = chain.p();
  const double q = chain.q();
  const double r = chain.r();
  // v[m] = P(Y_k = m, tau > k); index 0 unused.
  std::vector<double> v(n + k_max + 2, 0.0);
  std::vector<double> next(v.size(), 0.0);
  v[n] = 1.0;
  std::size_t top = n;
  for (std::size_t k = 1; k <= k_max; ++k) {
    out[k] = q * v[1];
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t m = 1; m <= top; ++m) {
      const double mass = v[m];
      if (mass == 0.0) continue;
      if (m > 1) next[m - 1] += q * mass;
      next[m] += r * mass;
      next[m + 1] += p * mass;
    }
    ++top;
    v.swap(next);
  }
  return out;
}

double hitting_pmf_exact(const ChainParams& chain, std::size_t n, std::size_t k) {
  return hitting_pmf_exact_series(chain, n, k)[k];
}

double hitting_tail_constant(const ChainParams& chain) {
  const double gap = std::sqrt(chain.q()) - std::sqrt(chain.p());
  const ReversibilityData rev(chain);
  return chain.beta() / (chain.p() * rev.rho() * gap * gap);
}

double hitting_tail_asymptote(const ChainParams& chain, std::size_t t) {
  return hitting_tail_constant(chain) * std::pow(chain.beta(), static_cast<double>(t));
}

std::vector<double> stationary_hitting_tail(const ChainParams& chain, std::size_t horizon) {
  const ReversibilityData rev(chain);
  std::size_t last = 1;
  while (rev.stationary_tail(last) > 1e-300 && last < 10'000'000) ++last;

  std::vector<double> v(last + horizon + 2, 0.0);
  std::vector<double> next(v.size(), 0.0);
  for (std::size_t m = 1; m <= last; ++m) v[m] = rev.stationary(m);

  const double p = chain.p();
  const double q = chain.q();
  const double r = chain.r();
  std::vector<double> tail(horizon + 1, 0.0);
  std::size_t top = last;
  for (std::size_t t = 0; t <= horizon; ++t) {
    double alive = 0.0;
    for (std::size_t m = 1; m <= top; ++m) alive += v[m];
    tail[t] = alive;
    if (t == horizon) break;
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t m = 1; m <= top; ++m) {
      const double mass = v[m];
      if (m > 1) next[m - 1] += q * mass;
      next[m] += r * mass;
      next[m + 1] += p * mass;
    }
    ++top;
    v.swap(next);
  }
  return tail;
}

double log_slope(const std::vector<double>& values, std::size_t t_lo, std::size_t t_hi) {
  if (t_hi >= values.size() || t_hi <= t_lo) {
    throw InvalidParameter("log_slope: window must satisfy t_lo < t_hi < size");
  }
  const double count = static_cast<double>(t_hi - t_lo + 1);
  double mean_t = 0.0;
  double mean_y = 0.0;
  for (std::size_t t = t_lo; t <= t_hi; ++t) {
    if (!(values[t] > 0.0)) throw InvalidParameter("log_slope: non-positive value in window");
    mean_t += static_cast<double>(t);
    mean_y += std::log(values[t]);
  }
  mean_t /= count;
  mean_y /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t t = t_lo; t <= t_hi; ++t) {
    const double dt = static_cast<double>(t) - mean_t;
    sxy += dt * (std::log(values[t]) - mean_y);
    sxx += dt * dt;
  }
  return sxy / sxx;
}

const char* to_string(CouplingMode mode) noexcept {
  return mode == CouplingMode::classical ? "classical" : "modified";
}

std::size_t sample_stationary(const ChainParams& chain, double u) {
  if (!(u >= 0.0 && u < 1.0)) throw InvalidParameter("sample_stationary: u must lie in [0, 1)");
  // P(Y >= n) = G (p/q)^(n-1) for n >= 1, with G = 1 - nu_0 = 1 / (1 + q - p).
  const double v = 1.0 - u;
  const double g = 1.0 / (1.0 + chain.q() - chain.p());
  if (v > g) return 0;
  const double levels = std::floor(std::log(v / g) / std::log(chain.p() / chain.q()));
  return 1 + static_cast<std::size_t>(levels);
}

SurvivalCurve survival_from_counts(const std::vector<std::uint64_t>& coupled_at,
                                   std::uint64_t replicas, std::uint64_t seed,
                                   CouplingMode mode) {
  if (coupled_at.empty()) throw InvalidParameter("survival_from_counts: empty histogram");
  SurvivalCurve curve;
  curve.horizon = coupled_at.size() - 2;
  curve.replicas = replicas;
  curve.seed = seed;
  curve.mode = mode;
  curve.survival.resize(curve.horizon + 1);
  curve.std_error.resize(curve.horizon + 1);
  const double total = static_cast<double>(replicas);
  std::uint64_t coupled = 0;
  for (std::size_t t = 0; t <= curve.horizon; ++t) {
    coupled += coupled_at[t];
    const double s = static_cast<double>(replicas - coupled) / total;
    curve.survival[t] = s;
    curve.std_error[t] = std::sqrt(s * (1.0 - s) / total);
  }
  return curve;
}

SurvivalCurve simulate_coupling(const ChainParams& chain, CouplingMode mode,
                                std::size_t horizon, std::uint64_t replicas,
                                std::uint64_t seed, unsigned threads) {
  if (replicas == 0) throw InvalidParameter("replicas must be at least 1");
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  const std::uint64_t workers = std::min<std::uint64_t>(threads, replicas);
  const Philox4x32 gen(seed);

  std::vector<std::vector<std::uint64_t>> partial(
      workers, std::vector<std::uint64_t>(horizon + 2, 0));
  const auto work = [&](std::uint64_t w) {
    const std::uint64_t begin = replicas * w / workers;
    const std::uint64_t end = replicas * (w + 1) / workers;
    auto& hist = partial[w];
    for (std::uint64_t k = begin; k < end; ++k) {
      ++hist[run_replica(chain, gen, mode, horizon, k)];
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  std::vector<std::uint64_t> total(horizon + 2, 0);
  for (const auto& hist : partial) {
    for (std::size_t t = 0; t < total.size(); ++t) total[t] += hist[t];
  }
  return survival_from_counts(total, replicas, seed, mode);
}

RateFit rate_fit(const SurvivalCurve& curve, std::size_t t_lo, std::size_t t_hi) {
  if (t_hi > curve.horizon || t_lo + 2 > t_hi) {
    std::ostringstream os;
    os << "rate_fit: window [" << t_lo << ", " << t_hi << "] must hold at least three "
       << "points inside the horizon " << curve.horizon;
    throw InvalidParameter(os.str());
  }
  for (std::size_t t = t_lo; t <= t_hi; ++t) {
    if (!(curve.survival[t] > 0.0)) {
      std::ostringstream os;
      os << "rate_fit: survival is zero at t=" << t
         << "; use a shorter window or more replicas";
      throw InvalidParameter(os.str());
    }
  }
  const double count = static_cast<double>(t_hi - t_lo + 1);
  const double slope = log_slope(curve.survival, t_lo, t_hi);
  double mean_t = 0.0;
  double mean_y = 0.0;
  for (std::size_t t = t_lo; t <= t_hi; ++t) {
    mean_t += static_cast<double>(t);
    mean_y += std::log(curve.survival[t]);
  }
  mean_t /= count;
  mean_y /= count;
  double sxx = 0.0;
  double ssr = 0.0;
  for (std::size_t t = t_lo; t <= t_hi; ++t) {
    const double dt = static_cast<double>(t) - mean_t;
    const double resid = std::log(curve.survival[t]) - (mean_y + slope * dt);
    sxx += dt * dt;
    ssr += resid * resid;
  }
  const double slope_se = std::sqrt(ssr / (count - 2.0) / sxx);
  const double rate = std::exp(slope);
  return {rate, rate * slope_se, slope, slope_se, static_cast<std::size_t>(count)};
}

}  // namespace kmmix
