#pragma once

// Karlin-McGregor polynomials of the reflecting walk:
//
//   Q_0 = 1,  Q_1 = lambda,
//   lambda Q_n = q Q_{n-1} + r Q_n + p Q_{n+1}   (n >= 1).
//
// Three evaluation routes are provided: the forward recursion, the closed
// form in the characteristic roots, and a trigonometric form valid on the
// continuous spectrum (r - 2 sqrt(pq), r + 2 sqrt(pq)).

#include <complex>
#include <cstddef>
#include <vector>

#include "kmmix/chain.hpp"

namespace kmmix {

// Roots of p x^2 + (r - lambda) x + q = 0.
struct CharRoots {
  std::complex<double> rho1;
  std::complex<double> rho2;

  bool is_real() const noexcept { return rho1.imag() == 0.0 && rho2.imag() == 0.0; }
};

enum class PolyEvalMethod { recursion, closed_form, trig_on_support };

const char* to_string(PolyEvalMethod method) noexcept;

// Off the continuous spectrum rho1 takes the + square root, so that
// |rho2| < sqrt(q/p) on (r + 2 sqrt(pq), 1]. On it the roots are the conjugate
// pair sqrt(q/p) e^{+-i theta}, rho1 in the upper half plane.
CharRoots char_roots(const ChainParams& chain, double lambda);

// Distance below which lambda counts as one of the double roots r +- 2 sqrt(pq).
inline constexpr double kDoubleRootGuard = 1e-9;

// Dispatch used when no method is requested: trig form strictly inside the
// continuous spectrum, recursion within kDoubleRootGuard of its endpoints,
// closed form elsewhere.
PolyEvalMethod default_method(const ChainParams& chain, double lambda);

double q_eval(const ChainParams& chain, std::size_t n, double lambda,
              PolyEvalMethod method);
double q_eval(const ChainParams& chain, std::size_t n, double lambda);

// Q_0(lambda), ..., Q_{n_max}(lambda).
std::vector<double> q_sequence(const ChainParams& chain, std::size_t n_max,
                               double lambda, PolyEvalMethod method);
std::vector<double> q_sequence(const ChainParams& chain, std::size_t n_max,
                               double lambda);

// Q_n at lambda = r + 2 sqrt(pq) cos(theta), theta in [0, pi]. Uses the
// Chebyshev form s^n [T_n(c) + (r/s + (2p - 1) c) U_{n-1}(c)], s = sqrt(q/p),
// which stays finite at the endpoints.
// out.size() on entry is the number of terms wanted.
void q_sequence_on_support(const ChainParams& chain, double theta,
                           std::vector<double>& out);
void q_sequence_on_support(const ChainParams& chain, long double theta,
                           std::vector<long double>& out);

// sum_{k <= n_max} pi_k Q_k(lambda)^2 for lambda one of the two eigenvalues
// 1 and -q/(q+r). Throws InvalidParameter for any other lambda.
double point_mass_summability(const ChainParams& chain, double lambda,
                              std::size_t n_max);

// True when lambda is, up to rounding, one of the two eigenvalues 1 or -alpha.
bool is_unit_atom(const ChainParams& chain, double lambda) noexcept;
bool is_negative_atom(const ChainParams& chain, double lambda) noexcept;

}  // namespace kmmix
