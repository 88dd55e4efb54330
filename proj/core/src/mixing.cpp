#include "kmmix/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "kmmix/error.hpp"
#include "kmmix/orthopoly.hpp"

namespace kmmix {

namespace {

template <class T>
T ipow(T base, std::size_t exp) {
  T result = 1.0;
  while (exp > 0) {
    if (exp & 1U) result *= base;
    base *= base;
    exp >>= 1U;
  }
  return result;
}

// Quadrature of lambda^t Q_n(lambda) phi over the support for n = 0..n_max,
// refined until every component converges. Accumulated in extended precision:
// the sums cancel down from size (q/p)^(n/2) to O(1).
std::vector<double> ac_moments(const SpectralMeasure& measure, std::size_t t,
                               std::size_t n_max, const QuadratureConfig& cfg) {
  const ChainParams& chain = measure.chain();
  return detail::refine<std::vector<double>, std::vector<double>>(
      cfg, [&](std::size_t count, std::vector<double>& scale) {
        std::vector<long double> sum(n_max + 1, 0.0L);
        std::vector<long double> abs_sum(n_max + 1, 0.0L);
        std::vector<long double> q(n_max + 1);
        for (const ExtendedAcNode& node : measure.ac_nodes_extended(count)) {
          q.resize(n_max + 1);
          q_sequence_on_support(chain, node.theta, q);
          const long double lt = node.weight * ipow(node.lambda, t);
          for (std::size_t n = 0; n <= n_max; ++n) {
            const long double v = lt * q[n];
            sum[n] += v;
            abs_sum[n] += std::abs(v);
          }
        }
        scale.assign(abs_sum.begin(), abs_sum.end());
        return std::vector<double>(sum.begin(), sum.end());
      });
}

}  // namespace

BoundCoefficients coefficients(const ChainParams& chain) {
  const double p = chain.p();
  const double q = chain.q();
  const double r = chain.r();
  const double gap = 1.0 + q - p;
  const ContourPoles poles = contour_poles(chain);
  BoundCoefficients c{};
  c.alpha = chain.alpha();
  c.beta = chain.beta();
  c.m = std::max(c.alpha, c.beta);
  c.A = (gap * (q + r) - q) / (gap * (1.0 - 2.0 * p));
  c.M = 2.0 / ((1.0 - poles.outer) * (1.0 + poles.inner));
  c.B = 0.5 * c.M * (p / (q + r)) * (1.0 + 1.0 / (chain.sqrt_pq() - p));
  return c;
}

ContourPoles contour_poles(const ChainParams& chain) {
  const double p = chain.p();
  const double q = chain.q();
  const double r = chain.r();
  const double gap = 1.0 + q - p;
  const double lead = std::sqrt(p / q) / (2.0 * (q + r));
  return {lead * (r + gap), lead * (r - gap)};
}

const char* to_string(IntegralRoute route) noexcept {
  return route == IntegralRoute::interval ? "interval" : "contour";
}

std::size_t contour_nodes(std::size_t t, std::size_t n) noexcept {
  return 2 * (t + n) + 64;
}

double spectral_integral_contour(const ChainParams& chain, std::size_t t, std::size_t n,
                                 std::size_t nodes) {
  if (nodes == 0) throw InvalidParameter("contour rule needs at least one node");
  const double p = chain.p();
  const double q = chain.q();
  const double r = chain.r();
  const double sqrt_pq = chain.sqrt_pq();
  const ContourPoles poles = contour_poles(chain);
  const auto integrand = [&](std::complex<double> z) {
    const std::complex<double> inv = 1.0 / z;
    const std::complex<double> lam = sqrt_pq * (z + inv) + r;
    return ipow(lam, t) * ipow(z, n) * (z - inv) / ((z - poles.outer) * (z - poles.inner));
  };
  // (1 / 2 pi i) contour integral over |z| = 1 by the uniform rule.
  std::complex<double> sum = 0.0;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(nodes);
  for (std::size_t k = 0; k < nodes; ++k) {
    const std::complex<double> z = std::polar(1.0, step * static_cast<double>(k));
    sum += integrand(z) * z;
  }
  const double loop = (sum / static_cast<double>(nodes)).real();

  const SpectralMeasure measure(chain);
  const double atom = measure.negative_atom().weight * ipow(-chain.alpha(), t + n);
  return atom + ipow(chain.root_modulus(), n) * (p / (q + r)) * loop;
}

double spectral_integral(const ChainParams& chain, std::size_t t, std::size_t n,
                         IntegralRoute route, const QuadratureConfig& cfg) {
  if (route == IntegralRoute::contour) {
    return spectral_integral_contour(chain, t, n, contour_nodes(t, n));
  }
  return spectral_integrals(chain, t, n, cfg)[n];
}

std::vector<double> spectral_integrals(const ChainParams& chain, std::size_t t,
                                       std::size_t n_max, const QuadratureConfig& cfg) {
  const SpectralMeasure measure(chain);
  std::vector<double> out = ac_moments(measure, t, n_max, cfg);
  const double w2 = measure.negative_atom().weight;
  double atom = w2 * ipow(-chain.alpha(), t);
  for (std::size_t n = 0; n <= n_max; ++n) {
    out[n] += atom;
    atom *= -chain.alpha();
  }
  return out;
}

double route_scale(const ChainParams& chain, std::size_t t, std::size_t n) {
  return std::max(1.0, ipow(chain.beta(), t) * ipow(chain.root_modulus(), n));
}

double spectral_integral_checked(const ChainParams& chain, std::size_t t, std::size_t n,
                                 const QuadratureConfig& cfg) {
  const double interval = spectral_integral(chain, t, n, IntegralRoute::interval, cfg);
  const double contour = spectral_integral(chain, t, n, IntegralRoute::contour, cfg);
  if (!(std::abs(interval - contour) <= 1e-8 * route_scale(chain, t, n))) {
    std::ostringstream os;
    os << "interval and contour routes disagree at t=" << t << ", n=" << n;
    throw ConvergenceError(os.str(), interval, contour);
  }
  return interval;
}

double tv_series_remainder(const ChainParams& chain, std::size_t t, std::size_t n_last) {
  // |I_n(t)| <= w2 alpha^(t+n) + (q/p)^(n/2) (p/(q+r)) M beta^t, and for n >= 1
  // pi_n alpha^n = (1/p) x^n, pi_n (q/p)^(n/2) = (1/p) y^n.
  const double p = chain.p();
  const double q = chain.q();
  const double r = chain.r();
  const SpectralMeasure measure(chain);
  const BoundCoefficients c = coefficients(chain);
  const double x = p / (q + r);
  const double y = std::sqrt(p / q);
  const double first = measure.negative_atom().weight * ipow(c.alpha, t) / p *
                       ipow(x, n_last + 1) / (1.0 - x);
  const double second =
      (p / (q + r)) * c.M * ipow(c.beta, t) / p * ipow(y, n_last + 1) / (1.0 - y);
  return 0.5 * (first + second);
}

TvExact tv_exact(const ChainParams& chain, std::size_t t, const TailControl& ctl,
                 const QuadratureConfig& cfg) {
  if (!(ctl.series_tol > 0.0)) throw InvalidParameter("series_tol must be positive");
  const ReversibilityData rev(chain);

  const auto terms_for = [&](double target) {
    std::size_t n_last = 1;
    while (tv_series_remainder(chain, t, n_last) > target) {
      if (n_last >= ctl.n_cap) return ctl.n_cap;
      n_last = std::min(ctl.n_cap, 2 * n_last);
    }
    // Tighten to the least index meeting the target.
    std::size_t lo = n_last / 2;
    while (lo + 1 < n_last) {
      const std::size_t mid = lo + (n_last - lo) / 2;
      if (tv_series_remainder(chain, t, mid) > target) {
        lo = mid;
      } else {
        n_last = mid;
      }
    }
    return n_last;
  };

  double target = ctl.series_tol * tv_upper(chain, t);
  std::size_t n_last = terms_for(target);
  for (int pass = 0; pass < 4; ++pass) {
    const std::vector<double> integrals = spectral_integrals(chain, t, n_last, cfg);
    double sum = 0.0;
    for (std::size_t n = 0; n <= n_last; ++n) sum += rev.pi(n) * std::abs(integrals[n]);
    const double value = 0.5 * sum;
    const double remainder = tv_series_remainder(chain, t, n_last);
    const double floor = std::numeric_limits<double>::min();
    if (remainder <= ctl.series_tol * std::max(value, floor)) {
      return {value, remainder, n_last + 1};
    }
    if (n_last >= ctl.n_cap) {
      std::ostringstream os;
      os << "tv_exact: series cap " << ctl.n_cap << " reached at t=" << t
         << " with remainder bound " << remainder;
      throw ConvergenceError(os.str(), value, remainder);
    }
    target = ctl.series_tol * std::max(value, floor);
    n_last = std::max(n_last + 1, terms_for(target));
  }
  throw ConvergenceError("tv_exact: series truncation did not settle", 0.0, 0.0);
}

double tv_upper(const ChainParams& chain, std::size_t t) {
  const BoundCoefficients c = coefficients(chain);
  return c.A * ipow(c.alpha, t) + c.B * ipow(c.beta, t);
}

LowerBound tv_lower(const ChainParams& chain, std::size_t t) {
  const BoundCoefficients c = coefficients(chain);
  const double value = c.A * ipow(c.alpha, t) - c.B * ipow(c.beta, t);
  return {value, c.alpha > c.beta && value > 0.0};
}

std::size_t t_mix(const ChainParams& chain, double eps, MixingMethod method,
                  const TailControl& ctl, const QuadratureConfig& cfg) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidParameter("eps must lie in (0, 1)");
  const auto distance = [&](std::size_t t) {
    return method == MixingMethod::exact ? tv_exact(chain, t, ctl, cfg).value
                                         : tv_upper(chain, t);
  };
  if (distance(0) <= eps) return 0;
  // Both distances are non-increasing in t: bracket by doubling, then bisect.
  std::size_t lo = 0;
  std::size_t hi = 1;
  constexpr std::size_t kMaxSteps = std::size_t{1} << 40;
  while (distance(hi) > eps) {
    lo = hi;
    hi *= 2;
    if (hi > kMaxSteps) throw ConvergenceError("t_mix: bracketing overflow", eps, 0.0);
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (distance(mid) <= eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double kernel_spectral(const ChainParams& chain, std::size_t t, std::size_t i,
                       std::size_t j, const QuadratureConfig& cfg) {
  const SpectralMeasure measure(chain);
  const std::size_t top = std::max(i, j);
  const double ac = detail::refine<double, double>(
      cfg, [&](std::size_t count, double& scale) {
        long double sum = 0.0L;
        long double abs_sum = 0.0L;
        std::vector<long double> q(top + 1);
        for (const ExtendedAcNode& node : measure.ac_nodes_extended(count)) {
          q.resize(top + 1);
          q_sequence_on_support(chain, node.theta, q);
          const long double v = node.weight * ipow(node.lambda, t) * q[i] * q[j];
          sum += v;
          abs_sum += std::abs(v);
        }
        scale = static_cast<double>(abs_sum);
        return static_cast<double>(sum);
      });
  const double atoms = measure.unit_atom().weight +
                       measure.negative_atom().weight * ipow(-chain.alpha(), t + i + j);
  return reversibility(chain).pi(j) * (atoms + ac);
}

double orthogonality_entry(const ChainParams& chain, std::size_t m, std::size_t n,
                           const QuadratureConfig& cfg) {
  return kernel_spectral(chain, 0, m, n, cfg);
}

}  // namespace kmmix
