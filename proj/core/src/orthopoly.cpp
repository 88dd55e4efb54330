#include "kmmix/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "kmmix/error.hpp"

namespace kmmix {

namespace {

bool near(double a, double b) noexcept {
  const double eps = std::numeric_limits<double>::epsilon();
  return std::abs(a - b) <= 4.0 * eps * std::max(1.0, std::abs(b));
}

bool near_double_root(const ChainParams& chain, double lambda) noexcept {
  return std::abs(lambda - chain.support_lo()) <= kDoubleRootGuard ||
         std::abs(lambda - chain.support_hi()) <= kDoubleRootGuard;
}

bool strictly_inside(const ChainParams& chain, double lambda) noexcept {
  return lambda > chain.support_lo() + kDoubleRootGuard &&
         lambda < chain.support_hi() - kDoubleRootGuard;
}

void check_lambda(double lambda) {
  if (!(lambda >= -1.0 && lambda <= 1.0)) {
    std::ostringstream os;
    os << "lambda must lie in [-1, 1], got " << lambda;
    throw InvalidParameter(os.str());
  }
}

// sin(n theta) / sin(theta), continuous at theta = 0 and pi.
double sin_ratio(std::size_t n, double theta) {
  const double s = std::sin(theta);
  if (std::abs(s) > 1e-8) return std::sin(static_cast<double>(n) * theta) / s;
  const double nn = static_cast<double>(n);
  // theta ~ 0: n; theta ~ pi: (-1)^(n-1) n
  if (theta < 1.0) return nn;
  return (n % 2 == 1) ? nn : -nn;
}

std::vector<double> recursion_sequence(const ChainParams& chain, std::size_t n_max,
                                       double lambda) {
  std::vector<double> out(n_max + 1);
  out[0] = 1.0;
  if (n_max == 0) return out;
  out[1] = lambda;
  const double p = chain.p();
  const double q = chain.q();
  const double shift = lambda - chain.r();
  for (std::size_t n = 1; n < n_max; ++n) {
    out[n + 1] = (shift * out[n] - q * out[n - 1]) / p;
  }
  return out;
}

std::vector<double> closed_form_sequence(const ChainParams& chain, std::size_t n_max,
                                         double lambda) {
  if (near_double_root(chain, lambda)) {
    std::ostringstream os;
    os.precision(17);
    os << "closed form is singular at the double root lambda=" << lambda;
    throw InvalidParameter(os.str());
  }
  std::vector<double> out(n_max + 1);
  // At the two eigenvalues one coefficient vanishes identically; any rounding
  // residue in it would be amplified by the dominant root.
  if (is_unit_atom(chain, lambda)) {
    for (auto& v : out) v = 1.0;
    return out;
  }
  if (is_negative_atom(chain, lambda)) {
    const double root = -chain.alpha();
    double v = 1.0;
    for (auto& o : out) {
      o = v;
      v *= root;
    }
    return out;
  }
  const CharRoots roots = char_roots(chain, lambda);
  const std::complex<double> diff = roots.rho2 - roots.rho1;
  const std::complex<double> c1 = (roots.rho2 - lambda) / diff;
  const std::complex<double> c2 = (lambda - roots.rho1) / diff;
  std::complex<double> pow1 = 1.0;
  std::complex<double> pow2 = 1.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    out[n] = (c1 * pow1 + c2 * pow2).real();
    pow1 *= roots.rho1;
    pow2 *= roots.rho2;
  }
  return out;
}

}  // namespace

const char* to_string(PolyEvalMethod method) noexcept {
  switch (method) {
    case PolyEvalMethod::recursion:
      return "recursion";
    case PolyEvalMethod::closed_form:
      return "closed_form";
    case PolyEvalMethod::trig_on_support:
      return "trig_on_support";
  }
  return "unknown";
}

bool is_unit_atom(const ChainParams&, double lambda) noexcept { return near(lambda, 1.0); }

bool is_negative_atom(const ChainParams& chain, double lambda) noexcept {
  return near(lambda, -chain.alpha());
}

CharRoots char_roots(const ChainParams& chain, double lambda) {
  const double p = chain.p();
  const double product = chain.q() / p;
  const double shift = lambda - chain.r();
  const double disc = shift * shift - 4.0 * chain.sqrt_pq() * chain.sqrt_pq();
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    // Compute the larger-magnitude root without cancellation, then use Vieta.
    if (shift >= 0.0) {
      const double rho1 = (shift + root) / (2.0 * p);
      return {rho1, product / rho1};
    }
    const double rho2 = (shift - root) / (2.0 * p);
    return {product / rho2, rho2};
  }
  const double im = std::sqrt(-disc) / (2.0 * p);
  const double re = shift / (2.0 * p);
  return {{re, im}, {re, -im}};
}

PolyEvalMethod default_method(const ChainParams& chain, double lambda) {
  if (strictly_inside(chain, lambda)) return PolyEvalMethod::trig_on_support;
  if (near_double_root(chain, lambda)) return PolyEvalMethod::recursion;
  return PolyEvalMethod::closed_form;
}

std::vector<double> q_sequence(const ChainParams& chain, std::size_t n_max,
                               double lambda, PolyEvalMethod method) {
  check_lambda(lambda);
  switch (method) {
    case PolyEvalMethod::recursion:
      return recursion_sequence(chain, n_max, lambda);
    case PolyEvalMethod::closed_form:
      return closed_form_sequence(chain, n_max, lambda);
    case PolyEvalMethod::trig_on_support: {
      if (!strictly_inside(chain, lambda)) {
        std::ostringstream os;
        os.precision(17);
        os << "trig form requires lambda strictly inside (" << chain.support_lo()
           << ", " << chain.support_hi() << "), got " << lambda;
        throw InvalidParameter(os.str());
      }
      const double c = std::clamp((lambda - chain.r()) / (2.0 * chain.sqrt_pq()), -1.0, 1.0);
      std::vector<double> out(n_max + 1);
      q_sequence_on_support(chain, std::acos(c), out);
      out.resize(n_max + 1);
      return out;
    }
  }
  throw InvalidParameter("unknown evaluation method");
}

std::vector<double> q_sequence(const ChainParams& chain, std::size_t n_max,
                               double lambda) {
  return q_sequence(chain, n_max, lambda, default_method(chain, lambda));
}

double q_eval(const ChainParams& chain, std::size_t n, double lambda,
              PolyEvalMethod method) {
  if (method == PolyEvalMethod::trig_on_support) {
    check_lambda(lambda);
    if (!strictly_inside(chain, lambda)) return q_sequence(chain, n, lambda, method).back();
    const double s = chain.root_modulus();
    const double c = std::clamp((lambda - chain.r()) / (2.0 * chain.sqrt_pq()), -1.0, 1.0);
    const double theta = std::acos(c);
    const double nn = static_cast<double>(n);
    const double shape = std::cos(nn * theta) +
                         (chain.r() / s + (2.0 * chain.p() - 1.0) * c) * sin_ratio(n, theta);
    return std::pow(s, nn) * shape;
  }
  return q_sequence(chain, n, lambda, method).back();
}

double q_eval(const ChainParams& chain, std::size_t n, double lambda) {
  return q_eval(chain, n, lambda, default_method(chain, lambda));
}

namespace {

template <class T>
void q_sequence_on_support_impl(const ChainParams& chain, T theta, std::vector<T>& out) {
  const std::size_t count = std::max<std::size_t>(out.size(), 2);
  out.resize(count);
  const T p = chain.p();
  const T s = std::sqrt(static_cast<T>(chain.q()) / p);
  const T c = std::cos(theta);
  const T slope = static_cast<T>(chain.r()) / s + (2 * p - 1) * c;
  // Chebyshev recurrences: T_{n+1} = 2c T_n - T_{n-1}, U likewise.
  T t_prev = 1, t_cur = c;  // T_0, T_1
  T u_prev = 0, u_cur = 1;  // U_{-1}, U_0
  T scale = 1;
  out[0] = 1;
  for (std::size_t n = 1; n < count; ++n) {
    scale *= s;
    out[n] = scale * (t_cur + slope * u_cur);
    const T t_next = 2 * c * t_cur - t_prev;
    const T u_next = 2 * c * u_cur - u_prev;
    t_prev = t_cur;
    t_cur = t_next;
    u_prev = u_cur;
    u_cur = u_next;
  }
}

}  // namespace

void q_sequence_on_support(const ChainParams& chain, double theta,
                           std::vector<double>& out) {
  q_sequence_on_support_impl(chain, theta, out);
}

void q_sequence_on_support(const ChainParams& chain, long double theta,
                           std::vector<long double>& out) {
  q_sequence_on_support_impl(chain, theta, out);
}

double point_mass_summability(const ChainParams& chain, double lambda,
                              std::size_t n_max) {
  if (!is_unit_atom(chain, lambda) && !is_negative_atom(chain, lambda)) {
    throw InvalidParameter("point_mass_summability: lambda must be 1 or -q/(q+r)");
  }
  const ReversibilityData rev(chain);
  const std::vector<double> values = q_sequence(chain, n_max, lambda, PolyEvalMethod::closed_form);
  double sum = 0.0;
  for (std::size_t k = 0; k <= n_max; ++k) sum += rev.pi(k) * values[k] * values[k];
  return sum;
}

}  // namespace kmmix
