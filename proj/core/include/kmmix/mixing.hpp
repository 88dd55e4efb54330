#pragma once

// Distance to stationarity for the walk started at 0:
//
//   || nu - mu_t ||_TV = 1/2 sum_n pi_n | I_n(t) |,
//   I_n(t) = integral over (-1, 1) of lambda^t Q_n(lambda) dpsi(lambda),
//
// where the open interval drops the atom at 1 but keeps the one at -q/(q+r).
// Closed-form envelope:  A alpha^t - B beta^t <= TV <= A alpha^t + B beta^t,
// alpha = q/(q+r), beta = r + 2 sqrt(pq); the lower side is only informative
// when alpha > beta.

#include <cstddef>
#include <vector>

#include "kmmix/chain.hpp"
#include "kmmix/spectral.hpp"

namespace kmmix {

struct BoundCoefficients {
  double A;
  double B;
  double alpha;
  double beta;
  double m;  // max(alpha, beta)
  // Bound on |contour integrand| / beta^t on the unit circle. Internal to B
  // (B = (M/2) (p/(q+r)) (1 + 1/(sqrt(pq) - p))); exposed for tests.
  double M;
};

BoundCoefficients coefficients(const ChainParams& chain);

// Finite poles of the contour integrand besides z = 0:
// sqrt(p/q) (r +- (1+q-p)) / (2 (q+r)).
struct ContourPoles {
  double outer;  // the + sign, in (0, 1)
  double inner;  // the - sign, in (-1, 0)
};
ContourPoles contour_poles(const ChainParams& chain);

enum class IntegralRoute { interval, contour };

const char* to_string(IntegralRoute route) noexcept;

// Uniform-rule size that resolves the contour integrand for (t, n).
std::size_t contour_nodes(std::size_t t, std::size_t n) noexcept;

// I_n(t) by the requested route. The contour route uses contour_nodes(t, n)
// trapezoidal nodes on |z| = 1 unless `nodes` is given.
double spectral_integral(const ChainParams& chain, std::size_t t, std::size_t n,
                         IntegralRoute route, const QuadratureConfig& cfg = {});
double spectral_integral_contour(const ChainParams& chain, std::size_t t, std::size_t n,
                                 std::size_t nodes);

// I_0(t), ..., I_{n_max}(t) by the interval route in a single quadrature pass.
std::vector<double> spectral_integrals(const ChainParams& chain, std::size_t t,
                                       std::size_t n_max, const QuadratureConfig& cfg = {});

// Tolerance scale for comparing the two routes: max(1, beta^t (q/p)^(n/2)).
double route_scale(const ChainParams& chain, std::size_t t, std::size_t n);

// Evaluates both routes and throws ConvergenceError if they differ by more
// than 1e-8 * route_scale. Returns the interval value.
double spectral_integral_checked(const ChainParams& chain, std::size_t t, std::size_t n,
                                 const QuadratureConfig& cfg = {});

struct TailControl {
  // Certified series remainder relative to the computed partial sum.
  double series_tol = 1e-12;
  std::size_t n_cap = 100000;
};

struct TvExact {
  double value;            // 1/2 sum_{n <= terms - 1} pi_n |I_n(t)|
  double remainder_bound;  // bound on the dropped terms
  std::size_t terms;
};

// Certified bound on 1/2 sum_{n > n_last} pi_n |I_n(t)|.
double tv_series_remainder(const ChainParams& chain, std::size_t t, std::size_t n_last);

TvExact tv_exact(const ChainParams& chain, std::size_t t, const TailControl& ctl = {},
                 const QuadratureConfig& cfg = {});

double tv_upper(const ChainParams& chain, std::size_t t);

struct LowerBound {
  double value;
  bool valid;  // alpha > beta and value > 0
};
LowerBound tv_lower(const ChainParams& chain, std::size_t t);

enum class MixingMethod { exact, bound };

// Least t with TV(t) <= eps (exact) or A alpha^t + B beta^t <= eps (bound).
std::size_t t_mix(const ChainParams& chain, double eps, MixingMethod method,
                  const TailControl& ctl = {}, const QuadratureConfig& cfg = {});

// p_t(i, j) = pi_j integral of lambda^t Q_i Q_j dpsi over the full measure.
double kernel_spectral(const ChainParams& chain, std::size_t t, std::size_t i,
                       std::size_t j, const QuadratureConfig& cfg = {});

// pi_n integral of Q_m Q_n dpsi; equals 1 when m == n and 0 otherwise.
double orthogonality_entry(const ChainParams& chain, std::size_t m, std::size_t n,
                           const QuadratureConfig& cfg = {});

}  // namespace kmmix
