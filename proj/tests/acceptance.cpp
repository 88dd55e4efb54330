// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "kmmix/chain.hpp"
#include "kmmix/coupling.hpp"
#include "kmmix/mixing.hpp"
#include "kmmix/spectral.hpp"
#include "test_support.hpp"

namespace {

using namespace kmmix;
using kmmix::testing::reference_chain;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double v) { return cli::format_double(v); }

double max_abs(double a, double b) { return std::max(a, b); }

Outcome coefficients_example() {
  const BoundCoefficients k = coefficients(reference_chain());
  double err = 0.0;
  err = max_abs(err, std::abs(k.A - 91.0 / 171.0));
  err = max_abs(err, std::abs(k.B - 39.0 / 28.0));
  err = max_abs(err, std::abs(k.alpha - 0.9));
  err = max_abs(err, std::abs(k.beta - 7.0 / 11.0));
  return {err <= 1e-12, "A=" + num(k.A) + " B=" + num(k.B) + " alpha=" + num(k.alpha) +
                            " beta=" + num(k.beta) + " max_err=" + num(err)};
}

Outcome measure_sanity() {
  const auto grid = kmmix::testing::parameter_grid();
  double worst_total = 0.0;
  double worst_ac = 0.0;
  for (const ChainParams& c : grid) {
    const SpectralMeasure m(c);
    const double ac = integrate_psi(m, [](double) { return 1.0; }, AtomSelection::none());
    worst_total = max_abs(worst_total,
                          std::abs(m.unit_atom().weight + m.negative_atom().weight + ac - 1.0));
    worst_ac = max_abs(worst_ac, std::abs(ac - c.p() / (c.q() + c.r())));
  }
  const SpectralMeasure m(reference_chain());
  const double ac = integrate_psi(m, [](double) { return 1.0; }, AtomSelection::none());
  const double example = std::max({std::abs(m.unit_atom().weight - 8.0 / 19.0),
                                   std::abs(m.negative_atom().weight - 91.0 / 190.0),
                                   std::abs(ac - 0.1)});
  const bool pass = worst_total <= 1e-10 && worst_ac <= 1e-10 && example <= 1e-10;
  return {pass, std::to_string(grid.size()) + " triples, max |total-1|=" + num(worst_total) +
                    " max |ac-p/(q+r)|=" + num(worst_ac) + " example err=" + num(example)};
}

Outcome orthogonality() {
  std::vector<ChainParams> chains{reference_chain()};
  for (const ChainParams& c : kmmix::testing::random_triples(5, 2024)) chains.push_back(c);
  double worst = 0.0;
  for (const ChainParams& c : chains) {
    for (std::size_t m = 0; m <= 20; ++m) {
      for (std::size_t n = 0; n <= 20; ++n) {
        worst = max_abs(worst, std::abs(orthogonality_entry(c, m, n) - (m == n ? 1.0 : 0.0)));
      }
    }
  }
  return {worst <= 1e-8, std::to_string(chains.size()) + " triples, max err=" + num(worst)};
}

Outcome kernel_equivalence() {
  const ChainParams c = reference_chain();
  double worst = 0.0;
  for (std::size_t t = 0; t <= 60; ++t) {
    for (std::size_t i = 0; i <= 12; ++i) {
      for (std::size_t j = 0; j <= 12; ++j) {
        worst = max_abs(worst, std::abs(kernel_spectral(c, t, i, j) - kernel_oracle(c, t, i, j)));
      }
    }
  }
  return {worst <= 1e-9, "max |spectral-oracle|=" + num(worst)};
}

Outcome tv_equivalence() {
  const ChainParams c = reference_chain();
  double worst = 0.0;
  std::size_t violations = 0;
  std::size_t lower_rows = 0;
  for (std::size_t t = 0; t <= 100; ++t) {
    const double exact = tv_exact(c, t).value;
    if (t <= 60) worst = max_abs(worst, std::abs(exact - tv_oracle(c, t)));
    // Comparisons allow for rounding in the last few bits of exact.
    const double slack = 1e-12 * exact;
    if (exact > tv_upper(c, t) + slack) ++violations;
    const LowerBound lo = tv_lower(c, t);
    if (lo.valid) {
      ++lower_rows;
      if (lo.value > exact + slack) ++violations;
    }
  }
  return {worst <= 1e-8 && violations == 0,
          "max |exact-oracle|=" + num(worst) + ", sandwich violations=" +
              std::to_string(violations) + " (" + std::to_string(lower_rows) + " rows lower_valid)"};
}

Outcome rate_recovery() {
  const ChainParams c = reference_chain();
  std::vector<double> tv(81);
  for (std::size_t t = 30; t <= 80; ++t) tv[t] = tv_exact(c, t).value;
  const double slope = log_slope(tv, 30, 80);
  const double rel = std::abs(slope - std::log(0.9)) / std::abs(std::log(0.9));
  return {rel <= 0.01, "slope=" + num(slope) + " log(0.9)=" + num(std::log(0.9)) +
                           " rel_err=" + num(rel)};
}

Outcome route_equivalence() {
  const ChainParams c = reference_chain();
  double worst = 0.0;
  for (std::size_t t = 0; t <= 60; ++t) {
    const std::vector<double> interval = spectral_integrals(c, t, 20);
    for (std::size_t n = 0; n <= 20; ++n) {
      const double contour = spectral_integral(c, t, n, IntegralRoute::contour);
      worst = max_abs(worst, std::abs(interval[n] - contour) / route_scale(c, t, n));
    }
  }
  return {worst <= 1e-8, "max scaled diff=" + num(worst)};
}

Outcome mixing_scaling() {
  const ChainParams c = reference_chain();
  bool dominated = true;
  std::ostringstream os;
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    const std::size_t exact = t_mix(c, eps, MixingMethod::exact);
    const std::size_t bound = t_mix(c, eps, MixingMethod::bound);
    dominated = dominated && exact <= bound;
    os << "eps=" << num(eps) << ": exact=" << exact << " bound=" << bound << "; ";
  }
  const double base = static_cast<double>(t_mix(c, 1e-6, MixingMethod::exact));
  const double squared = static_cast<double>(t_mix(c, 1e-12, MixingMethod::exact));
  const double ratio = squared / base;
  os << "t_mix(1e-12)/t_mix(1e-6)=" << num(ratio);
  return {dominated && std::abs(ratio - 2.0) <= 0.2, os.str()};
}

Outcome drift_identity() {
  double worst = 0.0;
  for (const ChainParams& c : kmmix::testing::parameter_grid()) {
    for (std::size_t x = 0; x <= 50; ++x) {
      worst = max_abs(worst, std::abs(drift_identity_residual(c, x)) / energy(c, x));
    }
  }
  return {worst <= 1e-12, "max relative residual=" + num(worst)};
}

Outcome hitting_cross_check() {
  const ChainParams c = reference_chain();
  double worst = 0.0;
  double sample_formula = 0.0;
  double sample_exact = 0.0;
  for (std::size_t n = 1; n <= 10; ++n) {
    const std::vector<double> exact = hitting_pmf_exact_series(c, n, 40);
    for (std::size_t k = 0; k <= 40; ++k) {
      const double formula = hitting_pmf_paper(c, n, k);
      const double derived = static_cast<double>(k) / static_cast<double>(n) * exact[k];
      worst = max_abs(worst, std::abs(formula - derived));
      if (n == 1 && k == 3) {
        sample_formula = formula;
        sample_exact = exact[k];
      }
    }
  }
  const std::vector<double> tail = stationary_hitting_tail(c, 100);
  const double slope = log_slope(tail, 40, 100);
  const double target = std::log(c.beta());
  const double rel = std::abs(slope - target) / std::abs(target);
  return {worst <= 1e-12 && rel <= 0.02,
          "max |formula-(k/n)exact|=" + num(worst) + " (n=1,k=3: formula=" + num(sample_formula) +
              " exact=" + num(sample_exact) + "); tail slope=" + num(slope) +
              " log(beta)=" + num(target) + " rel_err=" + num(rel)};
}

Outcome coupling_monte_carlo() {
  const ChainParams c = reference_chain();
  constexpr std::size_t horizon = 100;
  constexpr std::uint64_t replicas = 100000;
  std::vector<double> tv(horizon + 1);
  DistributionVector mu = DistributionVector::point_mass(0);
  for (std::size_t t = 0; t <= horizon; ++t) {
    if (t > 0) mu = evolve(c, std::move(mu), 1);
    tv[t] = tv_to_stationary(c, mu);
  }
  std::size_t violations = 0;
  std::ostringstream os;
  RateFit modified_fit{};
  for (CouplingMode mode : {CouplingMode::classical, CouplingMode::modified}) {
    const SurvivalCurve curve = simulate_coupling(c, mode, horizon, replicas, kDefaultSeed);
    for (std::size_t t = 0; t <= horizon; ++t) {
      if (tv[t] > curve.survival[t] + 3.0 * curve.std_error[t]) ++violations;
    }
    const RateFit fit = rate_fit(curve, 20, horizon);
    os << to_string(mode) << " rate=" << num(fit.rate) << "+-" << num(fit.std_error) << "; ";
    if (mode == CouplingMode::modified) modified_fit = fit;
  }
  const double lo = modified_fit.rate - 1.96 * modified_fit.std_error;
  const double hi = modified_fit.rate + 1.96 * modified_fit.std_error;
  os << "coupling-inequality violations=" << violations << "; modified 95% CI=[" << num(lo)
     << ", " << num(hi) << "] vs 0.9";
  return {violations == 0 && lo <= 0.9 && 0.9 <= hi, os.str()};
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> configs = {
      {"couple", "--p", "1/11", "--q", "9/11", "--r", "1/11", "--mode", "modified", "--replicas",
       "100000", "--seed", "42"},
      {"tv", "--p", "1/11", "--q", "9/11", "--r", "1/11", "--t-max", "60", "--format", "csv"},
      {"analyze", "--p", "1/11", "--q", "9/11", "--r", "1/11"},
  };
  std::size_t mismatches = 0;
  for (const auto& args : configs) {
    std::ostringstream out_a;
    std::ostringstream out_b;
    std::ostringstream err;
    const int a = cli::run(args, out_a, err);
    const int b = cli::run(args, out_b, err);
    if (a != 0 || b != 0 || out_a.str() != out_b.str() || out_a.str().empty()) ++mismatches;
  }
  return {mismatches == 0, std::to_string(configs.size()) + " configurations, " +
                               std::to_string(mismatches) + " mismatches"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"worked-example coefficients", coefficients_example},
      {"spectral measure sanity", measure_sanity},
      {"orthogonality", orthogonality},
      {"kernel equivalence", kernel_equivalence},
      {"TV equivalence and sandwich", tv_equivalence},
      {"rate recovery", rate_recovery},
      {"route equivalence", route_equivalence},
      {"mixing time scaling", mixing_scaling},
      {"drift identity", drift_identity},
      {"hitting-time cross-check", hitting_cross_check},
      {"coupling Monte Carlo", coupling_monte_carlo},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out{false, ""};
    try {
      out = criteria[k].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failures;
    std::printf("criterion %2zu %s: %s | %s [%.2fs]\n", k + 1, out.pass ? "PASS" : "FAIL",
                criteria[k].first, out.detail.c_str(), secs);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
