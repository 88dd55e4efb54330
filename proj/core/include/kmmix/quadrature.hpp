#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace kmmix {

// Gauss-Legendre rule on [-1, 1].
template <class T>
struct BasicGaussRule {
  std::vector<T> nodes;
  std::vector<T> weights;
};
using GaussRule = BasicGaussRule<double>;
using ExtendedGaussRule = BasicGaussRule<long double>;

// Rules are computed once per size and cached; the returned reference stays
// valid for the lifetime of the program. Thread-safe.
const GaussRule& gauss_legendre(std::size_t n);
// Same rule with nodes and weights in extended precision.
const ExtendedGaussRule& gauss_legendre_extended(std::size_t n);

// (1 / 2 pi i) * contour integral of f over |z - center| = radius, by the
// m-point trapezoidal rule. Spectrally accurate for f analytic on an annulus
// around the circle.
template <class F>
std::complex<double> circle_integral(F&& f, std::complex<double> center, double radius,
                                     std::size_t m) {
  std::complex<double> sum = 0.0;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::complex<double> offset = std::polar(radius, step * static_cast<double>(k));
    sum += f(center + offset) * offset;
  }
  return sum / static_cast<double>(m);
}

}  // namespace kmmix
