#include "kmmix/orthopoly.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "kmmix/error.hpp"
#include "test_support.hpp"

namespace kmmix {
namespace {

using testing::reference_chain;
using testing::parameter_grid;

TEST(CharRoots, VietaRelations) {
  const ChainParams c = reference_chain();
  for (double lambda : {-0.95, -0.9, 0.0, 0.3, 0.8, 1.0}) {
    const CharRoots roots = char_roots(c, lambda);
    const std::complex<double> sum = roots.rho1 + roots.rho2;
    const std::complex<double> prod = roots.rho1 * roots.rho2;
    EXPECT_NEAR(sum.real(), (lambda - c.r()) / c.p(), 1e-12);
    EXPECT_NEAR(prod.real(), c.q() / c.p(), 1e-12);
  }
}

TEST(CharRoots, ConjugatePairOnSupport) {
  const ChainParams c = reference_chain();
  const CharRoots roots = char_roots(c, c.r());
  EXPECT_FALSE(roots.is_real());
  EXPECT_GT(roots.rho1.imag(), 0.0);
  EXPECT_NEAR(std::abs(roots.rho1), c.root_modulus(), 1e-13);
  EXPECT_NEAR(std::abs(roots.rho2), c.root_modulus(), 1e-13);
}

TEST(QEval, LowOrderValues) {
  const ChainParams c = reference_chain();
  for (double lambda : {-0.5, 0.1, 0.5}) {
    EXPECT_DOUBLE_EQ(q_eval(c, 0, lambda, PolyEvalMethod::recursion), 1.0);
    EXPECT_DOUBLE_EQ(q_eval(c, 1, lambda, PolyEvalMethod::recursion), lambda);
    const double q2 = ((lambda - c.r()) * lambda - c.q()) / c.p();
    EXPECT_NEAR(q_eval(c, 2, lambda, PolyEvalMethod::recursion), q2, 1e-13);
  }
}

TEST(QEval, EigenvectorAtUnit) {
  for (const ChainParams& c : parameter_grid()) {
    for (std::size_t n = 0; n <= 30; ++n) {
      EXPECT_DOUBLE_EQ(q_eval(c, n, 1.0), 1.0);
      EXPECT_DOUBLE_EQ(q_eval(c, n, 1.0, PolyEvalMethod::closed_form), 1.0);
      // Forward recursion amplifies rounding by the dominant root (q/p)^n.
      const double growth = std::pow(c.q() / c.p(), static_cast<double>(n));
      EXPECT_NEAR(q_eval(c, n, 1.0, PolyEvalMethod::recursion), 1.0, 1e-14 * growth);
    }
  }
}

TEST(QEval, EigenvectorAtNegativeAtom) {
  const ChainParams c = reference_chain();
  const double lambda = -c.alpha();
  for (std::size_t n = 0; n <= 20; ++n) {
    EXPECT_NEAR(q_eval(c, n, lambda), std::pow(lambda, static_cast<double>(n)), 1e-13);
  }
}

TEST(QEval, MethodsAgreeOffSupport) {
  for (const ChainParams& c : parameter_grid()) {
    const double lo = std::max(-1.0, -c.alpha() + 0.05);
    for (double lambda : {lo, 0.5 * (lo + c.support_lo()), c.support_hi() + 0.02,
                          0.5 * (c.support_hi() + 1.0)}) {
      if (lambda >= c.support_lo() && lambda <= c.support_hi()) continue;
      if (lambda <= -c.alpha() + 0.01 || lambda >= 0.99) continue;
      for (std::size_t n = 0; n <= 15; ++n) {
        const double a = q_eval(c, n, lambda, PolyEvalMethod::recursion);
        const double b = q_eval(c, n, lambda, PolyEvalMethod::closed_form);
        EXPECT_NEAR(a, b, 1e-9 * std::max(1.0, std::abs(a))) << "lambda=" << lambda << " n=" << n;
      }
    }
  }
}

TEST(QEval, TrigFormAgreesOnSupport) {
  for (const ChainParams& c : parameter_grid()) {
    for (double frac : {0.1, 0.37, 0.5, 0.81}) {
      const double lambda = c.support_lo() + frac * (c.support_hi() - c.support_lo());
      const double scale = std::pow(c.root_modulus(), 15.0);
      for (std::size_t n = 0; n <= 15; ++n) {
        const double a = q_eval(c, n, lambda, PolyEvalMethod::recursion);
        const double b = q_eval(c, n, lambda, PolyEvalMethod::trig_on_support);
        const double d = q_eval(c, n, lambda, PolyEvalMethod::closed_form);
        EXPECT_NEAR(a, b, 1e-11 * scale);
        EXPECT_NEAR(a, d, 1e-11 * scale);
      }
    }
  }
}

TEST(QEval, ClosedFormRejectsDoubleRoot) {
  const ChainParams c = reference_chain();
  EXPECT_THROW(q_eval(c, 3, c.support_hi(), PolyEvalMethod::closed_form), InvalidParameter);
  // Default dispatch handles the edge through the recursion.
  EXPECT_EQ(default_method(c, c.support_hi()), PolyEvalMethod::recursion);
  EXPECT_NO_THROW(q_eval(c, 3, c.support_hi()));
}

TEST(QSequence, MatchesSingleEvaluations) {
  const ChainParams c = ChainParams::make(0.2, 0.5, 0.3);
  for (double lambda : {-0.3, 0.2, 0.95}) {
    const std::vector<double> seq = q_sequence(c, 12, lambda);
    ASSERT_EQ(seq.size(), 13u);
    for (std::size_t n = 0; n <= 12; ++n) EXPECT_NEAR(seq[n], q_eval(c, n, lambda), 1e-10);
  }
}

TEST(QSequence, SupportEndpointsStayFinite) {
  const ChainParams c = reference_chain();
  std::vector<double> at_zero(25);
  std::vector<double> at_pi(25);
  q_sequence_on_support(c, 0.0, at_zero);
  q_sequence_on_support(c, std::numbers::pi, at_pi);
  const std::vector<double> rec_hi = q_sequence(c, 24, c.support_hi(), PolyEvalMethod::recursion);
  const std::vector<double> rec_lo = q_sequence(c, 24, c.support_lo(), PolyEvalMethod::recursion);
  for (std::size_t n = 0; n < 25; ++n) {
    ASSERT_TRUE(std::isfinite(at_zero[n]));
    EXPECT_NEAR(at_zero[n], rec_hi[n], 1e-9 * std::max(1.0, std::abs(rec_hi[n])));
    EXPECT_NEAR(at_pi[n], rec_lo[n], 1e-9 * std::max(1.0, std::abs(rec_lo[n])));
  }
}

TEST(Summability, AtomWeightsInverse) {
  const ChainParams c = reference_chain();
  // sum pi_n Q_n(lambda)^2 = 1 / psi({lambda}) at each eigenvalue.
  EXPECT_NEAR(point_mass_summability(c, 1.0, 400), 19.0 / 8.0, 1e-12);
  EXPECT_NEAR(point_mass_summability(c, -0.9, 400), 190.0 / 91.0, 1e-12);
  EXPECT_THROW(point_mass_summability(c, 0.5, 10), InvalidParameter);
}

TEST(MethodNames, Strings) {
  EXPECT_STREQ(to_string(PolyEvalMethod::recursion), "recursion");
  EXPECT_STREQ(to_string(PolyEvalMethod::closed_form), "closed_form");
  EXPECT_STREQ(to_string(PolyEvalMethod::trig_on_support), "trig_on_support");
}

}  // namespace
}  // namespace kmmix
