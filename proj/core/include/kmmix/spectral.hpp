#pragma once

// Spectral measure psi of the reflecting walk: atoms at 1 and -q/(q+r) plus
// an absolutely continuous part on (r - 2 sqrt(pq), r + 2 sqrt(pq)) with
// density
//
//   phi(x) = sqrt(4pq - (x - r)^2) / (2 pi ((r + q) x + q) (1 - x)).
//
// Integrals against the continuous part use x = r + 2 sqrt(pq) cos(theta),
// which turns the square-root endpoint behaviour into a smooth sin^2(theta)
// factor on (0, pi).

#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <type_traits>
#include <vector>

#include "kmmix/chain.hpp"
#include "kmmix/error.hpp"

namespace kmmix {

struct Atom {
  double location;
  double weight;
};

struct QuadratureConfig {
  std::size_t node_count = 512;
  // Number of node-doubling passes allowed after the first estimate.
  std::size_t refinements = 3;
  // Successive estimates must agree to tol relative to the integral of |f|.
  double tol = 1e-10;

  void validate() const;
};

struct AtomSelection {
  bool unit = true;      // atom at 1
  bool negative = true;  // atom at -q/(q+r)

  static constexpr AtomSelection all() { return {true, true}; }
  static constexpr AtomSelection none() { return {false, false}; }
  // Integration over the open interval (-1, 1).
  static constexpr AtomSelection open_interval() { return {false, true}; }
};

// One node of the continuous part; weight already includes the density and
// the Jacobian of the angle substitution.
template <class T>
struct BasicAcNode {
  T theta;
  T lambda;
  T weight;
};
using AcNode = BasicAcNode<double>;
using ExtendedAcNode = BasicAcNode<long double>;

class SpectralMeasure {
 public:
  // Throws InvalidParameter if an atom would fall inside the closed
  // continuous-spectrum interval.
  explicit SpectralMeasure(const ChainParams& chain);

  const ChainParams& chain() const noexcept { return chain_; }

  Atom unit_atom() const noexcept { return unit_; }
  Atom negative_atom() const noexcept { return negative_; }

  double support_lo() const noexcept { return chain_.support_lo(); }
  double support_hi() const noexcept { return chain_.support_hi(); }

  // Closed-form mass of the continuous part, p/(q+r).
  double ac_mass() const noexcept { return chain_.p() / (chain_.q() + chain_.r()); }

  // phi(x); zero outside the open support interval.
  double density(double x) const noexcept;
  // phi(x(theta)) |dx/dtheta| for theta in [0, pi].
  double density_theta(double theta) const noexcept;
  long double density_theta(long double theta) const noexcept;

  // Gauss-Legendre nodes mapped to theta in (0, pi).
  std::vector<AcNode> ac_nodes(std::size_t count) const;
  // Same nodes in extended precision, for integrands with heavy cancellation.
  std::vector<ExtendedAcNode> ac_nodes_extended(std::size_t count) const;

 private:
  ChainParams chain_;
  Atom unit_;
  Atom negative_;
};

inline SpectralMeasure build_measure(const ChainParams& chain) {
  return SpectralMeasure(chain);
}

namespace detail {

inline bool within(double a, double b, double scale, double tol) {
  return std::abs(a - b) <= tol * scale;
}
inline bool within(std::complex<double> a, std::complex<double> b, double scale,
                   double tol) {
  return std::abs(a - b) <= tol * scale;
}
inline bool within(const std::vector<double>& a, const std::vector<double>& b,
                   const std::vector<double>& scale, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(std::abs(a[i] - b[i]) <= tol * scale[i])) return false;
  }
  return true;
}

inline double headline(double v) { return v; }
inline double headline(std::complex<double> v) { return v.real(); }
inline double headline(const std::vector<double>& v) { return v.empty() ? 0.0 : v.front(); }

// Runs `eval(count, scale)` for count = node_count, 2 node_count, ... until
// two successive estimates agree.
template <class V, class S, class Eval>
V refine(const QuadratureConfig& cfg, Eval&& eval) {
  cfg.validate();
  std::size_t count = cfg.node_count;
  S scale{};
  V previous = eval(count, scale);
  for (std::size_t pass = 0; pass < cfg.refinements; ++pass) {
    count *= 2;
    V current = eval(count, scale);
    if (within(current, previous, scale, cfg.tol)) return current;
    if (pass + 1 == cfg.refinements) {
      std::ostringstream os;
      os << "spectral quadrature did not converge with " << count << " nodes";
      throw ConvergenceError(os.str(), headline(previous), headline(current));
    }
    previous = std::move(current);
  }
  // refinements == 0: a single fixed-node estimate.
  return previous;
}

}  // namespace detail

// w1 f(1) [unit] + w2 f(-alpha) [negative] + integral of f phi over the
// support. Returns the same scalar type as f (double or complex<double>).
template <class F>
auto integrate_psi(const SpectralMeasure& measure, F&& f,
                   AtomSelection atoms = AtomSelection::all(),
                   const QuadratureConfig& cfg = {}) {
  using V = std::decay_t<decltype(f(0.0))>;
  V atom_part{};
  if (atoms.unit) atom_part += measure.unit_atom().weight * f(measure.unit_atom().location);
  if (atoms.negative) {
    atom_part += measure.negative_atom().weight * f(measure.negative_atom().location);
  }
  const V ac = detail::refine<V, double>(cfg, [&](std::size_t count, double& scale) {
        V sum{};
        scale = 0.0;
        for (const AcNode& node : measure.ac_nodes(count)) {
          const V value = f(node.lambda);
          sum += node.weight * value;
          scale += node.weight * std::abs(value);
        }
        return sum;
      });
  return atom_part + ac;
}

// Upper-left resolvent entry a_0(s) = (e_0, (P - s I)^{-1} e_0), selected by
// the characteristic root of modulus below sqrt(q/p). Requires Im(s) != 0.
std::complex<double> resolvent_a0(const ChainParams& chain, std::complex<double> s);

// Stieltjes transform of psi by quadrature: integral of dpsi(z) / (z - s).
std::complex<double> stieltjes_transform(const SpectralMeasure& measure,
                                         std::complex<double> s,
                                         const QuadratureConfig& cfg = {});

// g(z) = sqrt((z - r)^2 - 4pq) / (((r + q) z + q) (1 - z)), principal branch.
std::complex<double> residue_integrand(const ChainParams& chain, std::complex<double> z);

struct ResidueCheck {
  double at_unit;        // Res(g, 1)
  double at_negative;    // Res(g, -q/(q+r))
  double radius_unit;
  double radius_negative;
};

// Residues of g at its two poles by small-circle trapezoidal quadrature.
// radius_scale shrinks or grows the default circles, which stay clear of the
// branch cuts of the principal square root.
ResidueCheck residue_check(const ChainParams& chain, double radius_scale = 1.0,
                           std::size_t nodes = 256);

}  // namespace kmmix
