#include "kmmix/spectral.hpp"

#include <algorithm>
#include <numbers>

#include "kmmix/quadrature.hpp"

namespace kmmix {

void QuadratureConfig::validate() const {
  if (node_count < 16) throw InvalidParameter("quadrature node_count must be at least 16");
  if (!(tol > 0.0)) throw InvalidParameter("quadrature tol must be positive");
}

SpectralMeasure::SpectralMeasure(const ChainParams& chain) : chain_(chain) {
  const double p = chain.p();
  const double q = chain.q();
  const double r = chain.r();
  const double gap = 1.0 + q - p;
  unit_ = {1.0, (q - p) / gap};
  negative_ = {-chain.alpha(), (gap * (q + r) - q) / (gap * (q + r))};

  // The density's poles at 1 and -alpha coincide with the atoms; both must
  // stay clear of the closed support interval.
  if (!(negative_.location < support_lo()) || !(support_hi() < unit_.location)) {
    std::ostringstream os;
    os.precision(17);
    os << "atom inside the continuous spectrum: -q/(q+r)=" << negative_.location
       << ", support=[" << support_lo() << ", " << support_hi() << "]";
    throw InvalidParameter(os.str());
  }
}

double SpectralMeasure::density(double x) const noexcept {
  if (!(x > support_lo() && x < support_hi())) return 0.0;
  const double q = chain_.q();
  const double r = chain_.r();
  const double half_width = 2.0 * chain_.sqrt_pq();
  const double rad = (half_width - (x - r)) * (half_width + (x - r));
  return std::sqrt(std::max(rad, 0.0)) /
         (2.0 * std::numbers::pi * ((r + q) * x + q) * (1.0 - x));
}

double SpectralMeasure::density_theta(double theta) const noexcept {
  const double q = chain_.q();
  const double r = chain_.r();
  const double lambda = r + 2.0 * chain_.sqrt_pq() * std::cos(theta);
  const double s = std::sin(theta);
  const double four_pq = 4.0 * chain_.p() * q;
  return four_pq * s * s /
         (2.0 * std::numbers::pi * ((r + q) * lambda + q) * (1.0 - lambda));
}

long double SpectralMeasure::density_theta(long double theta) const noexcept {
  const long double p = chain_.p();
  const long double q = chain_.q();
  const long double r = chain_.r();
  const long double lambda = r + 2 * std::sqrt(p * q) * std::cos(theta);
  const long double s = std::sin(theta);
  return 4 * p * q * s * s /
         (2 * std::numbers::pi_v<long double> * ((r + q) * lambda + q) * (1 - lambda));
}

std::vector<ExtendedAcNode> SpectralMeasure::ac_nodes_extended(std::size_t count) const {
  const ExtendedGaussRule& rule = gauss_legendre_extended(count);
  const long double half_pi = std::numbers::pi_v<long double> / 2;
  const long double half_width =
      2 * std::sqrt(static_cast<long double>(chain_.p()) * chain_.q());
  std::vector<ExtendedAcNode> nodes(count);
  for (std::size_t k = 0; k < count; ++k) {
    const long double theta = half_pi * (rule.nodes[k] + 1);
    nodes[k] = {theta, chain_.r() + half_width * std::cos(theta),
                half_pi * rule.weights[k] * density_theta(theta)};
  }
  return nodes;
}

std::vector<AcNode> SpectralMeasure::ac_nodes(std::size_t count) const {
  const GaussRule& rule = gauss_legendre(count);
  const double half_pi = 0.5 * std::numbers::pi;
  const double half_width = 2.0 * chain_.sqrt_pq();
  std::vector<AcNode> nodes(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double theta = half_pi * (rule.nodes[k] + 1.0);
    nodes[k] = {theta, chain_.r() + half_width * std::cos(theta),
                half_pi * rule.weights[k] * density_theta(theta)};
  }
  return nodes;
}

std::complex<double> resolvent_a0(const ChainParams& chain, std::complex<double> s) {
  if (s.imag() == 0.0) throw InvalidParameter("resolvent_a0 requires Im(s) != 0");
  const double p = chain.p();
  const std::complex<double> shift = s - chain.r();
  const std::complex<double> root = std::sqrt(shift * shift - 4.0 * p * chain.q());
  // Larger-modulus root first, the other by Vieta (rho1 rho2 = q/p).
  const std::complex<double> plus = shift + root;
  const std::complex<double> minus = shift - root;
  const std::complex<double> big = (std::abs(plus) >= std::abs(minus) ? plus : minus) / (2.0 * p);
  const std::complex<double> small = (chain.q() / p) / big;
  return 1.0 / (small - s);
}

std::complex<double> stieltjes_transform(const SpectralMeasure& measure,
                                         std::complex<double> s,
                                         const QuadratureConfig& cfg) {
  return integrate_psi(
      measure, [s](double z) { return 1.0 / (std::complex<double>(z) - s); },
      AtomSelection::all(), cfg);
}

std::complex<double> residue_integrand(const ChainParams& chain, std::complex<double> z) {
  const double q = chain.q();
  const double r = chain.r();
  const std::complex<double> shift = z - r;
  const std::complex<double> numerator = std::sqrt(shift * shift - 4.0 * chain.p() * q);
  return numerator / (((r + q) * z + q) * (1.0 - z));
}

ResidueCheck residue_check(const ChainParams& chain, double radius_scale,
                           std::size_t nodes) {
  if (!(radius_scale > 0.0 && radius_scale <= 1.0)) {
    throw InvalidParameter("residue_check: radius_scale must lie in (0, 1]");
  }
  const double alpha = chain.alpha();
  // Branch cuts of the principal root: the support interval and Re z = r.
  const double clear_unit =
      std::min({1.0 - chain.support_hi(), 1.0 - chain.r(), 1.0 + alpha});
  const double clear_negative =
      std::min({chain.support_lo() + alpha, chain.r() + alpha, 1.0 + alpha});
  ResidueCheck out{};
  out.radius_unit = 0.5 * radius_scale * clear_unit;
  out.radius_negative = 0.5 * radius_scale * clear_negative;
  const auto g = [&chain](std::complex<double> z) { return residue_integrand(chain, z); };
  out.at_unit = circle_integral(g, 1.0, out.radius_unit, nodes).real();
  out.at_negative = circle_integral(g, -alpha, out.radius_negative, nodes).real();
  return out;
}

}  // namespace kmmix
