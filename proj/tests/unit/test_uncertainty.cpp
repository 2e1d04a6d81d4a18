#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "canonical_tf/errors.hpp"
#include "canonical_tf/lct.hpp"
#include "canonical_tf/moments.hpp"
#include "canonical_tf/uncertainty.hpp"
#include "test_support.hpp"

namespace ctf = canonical_tf;
using ctf::ErrorKind;
using ctf::ParamMatrix;
using ctf::SampledSignal;
using ctf::Theorem;

namespace {

constexpr double kPi = std::numbers::pi;

// Map spreads for a width-w Gaussian signal and a unit Gaussian window,
// both centred and unchirped: T^2 = (w^2 + 1)/2 and
// F^2 = a^2 w^2/2 + b^2/(2 w^2) + b^2/2.
double theorem1_lhs(const ParamMatrix& A, double w) {
  const double a = A.a(), b = A.b();
  return (w * w + 1) / 2 * (a * a * w * w / 2 + b * b / (2 * w * w) + b * b / 2);
}

}  // namespace

TEST(Theorem, ParseAndPrint) {
  EXPECT_EQ(ctf::parse_theorem("stern"), Theorem::Stern);
  EXPECT_EQ(ctf::parse_theorem("0"), Theorem::Stern);
  EXPECT_EQ(ctf::parse_theorem("3"), Theorem::Three);
  EXPECT_EQ(ctf::parse_theorem(ctf::to_string(Theorem::Two)), Theorem::Two);
  EXPECT_THROW(ctf::parse_theorem("4"), ctf::Error);
}

TEST(BoundReport, PassesWithinSlack) {
  EXPECT_TRUE(ctf::make_bound_report(Theorem::One, 1.0 - 1e-7, 1.0, "").passed);
  EXPECT_FALSE(ctf::make_bound_report(Theorem::One, 0.99, 1.0, "").passed);
  const ctf::BoundReport r = ctf::make_bound_report(Theorem::One, 3.0, 2.0, "ctx");
  EXPECT_DOUBLE_EQ(r.gap, 1.0);
  EXPECT_DOUBLE_EQ(r.relative_slack, 0.5);
  EXPECT_EQ(r.context, "ctx");
}

TEST(Stern, UnitGaussianAttainsBound) {
  const ctf::BoundReport r = ctf::stern_check(ctf::gaussian(ctf::testing::desk_grid(), 0, 1), ParamMatrix::fourier());
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.lhs, 0.25, 1e-10);
  EXPECT_DOUBLE_EQ(r.rhs, 0.25);
}

TEST(Stern, GeneralMatrixGaussian) {
  // T^2 = 1/2, F^2 = (a^2 + b^2)/2 = 5/2, so lhs = 5/4 against b^2/4 = 1.
  const ctf::BoundReport r =
      ctf::stern_check(ctf::gaussian(ctf::testing::desk_grid(), 0, 1), ParamMatrix::validate(1, 2, 0.5, 2));
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.lhs, 1.25, 1e-8);
  EXPECT_DOUBLE_EQ(r.rhs, 1.0);
}

TEST(Stern, RectUnderFourierHolds) {
  const ctf::BoundReport r = ctf::stern_check(ctf::rect(ctf::testing::desk_grid(), 0, 1), ParamMatrix::fourier());
  EXPECT_TRUE(r.passed);
  EXPECT_GT(r.lhs, 0.25);
}

TEST(Theorem1, GaussianEqualityCase) {
  const SampledSignal f = ctf::gaussian(ctf::testing::desk_grid(), 0, 1);
  const ctf::BoundReport r = ctf::theorem1_check(f, f, ParamMatrix::fourier());
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.lhs, 1.0, 1e-8);
  EXPECT_DOUBLE_EQ(r.rhs, 1.0);
  ASSERT_TRUE(r.lhs_alternate.has_value());
  EXPECT_NEAR(*r.lhs_alternate, r.lhs, 1e-8);
}

TEST(Theorem1, FractionalRhsIsSinSquared) {
  const SampledSignal f = ctf::gaussian(ctf::testing::desk_grid(), 0, 1);
  for (double alpha : {kPi / 6, kPi / 4, kPi / 3}) {
    const ctf::BoundReport r = ctf::theorem1_check(f, f, ParamMatrix::fractional(alpha));
    EXPECT_NEAR(r.rhs, std::pow(std::sin(alpha), 2), 1e-15);
    EXPECT_NEAR(r.lhs, theorem1_lhs(ParamMatrix::fractional(alpha), 1.0), 1e-8);
    EXPECT_TRUE(r.passed);
  }
}

TEST(Theorem1, RejectsBZero) {
  const SampledSignal f = ctf::gaussian(ctf::testing::desk_grid(), 0, 1);
  try {
    ctf::theorem1_check(f, f, ParamMatrix::identity());
    FAIL();
  } catch (const ctf::Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BZero);
  }
}

TEST(Theorem1Property, WidthDependenceMatchesClosedForm) {
  const ctf::Grid grid = ctf::testing::desk_grid();
  const SampledSignal g = ctf::gaussian(grid, 0, 1);
  for (const auto& A : ctf::testing::battery_matrices()) {
    double previous = 0.0;
    for (double w : {1.0, 1.5, 2.0}) {
      const ctf::BoundReport r = ctf::theorem1_check(ctf::gaussian(grid, 0, w), g, A);
      // The w = 2 tails are cut at about 1e-7 of the peak on [-8, 8).
      EXPECT_NEAR(r.lhs / theorem1_lhs(A, w), 1.0, 1e-4) << A.to_string() << " w=" << w;
      EXPECT_TRUE(r.passed);
      // Beyond the balanced width the product grows with w.
      if (A == ParamMatrix::fourier()) EXPECT_GT(r.lhs, previous);
      previous = r.lhs;
    }
  }
}

TEST(Theorem1Property, WideningWindowTradesTimeForFrequency) {
  const ctf::Grid grid = ctf::testing::desk_grid();
  for (const auto& A : ctf::testing::battery_matrices()) {
    for (const auto& f : ctf::testing::battery_signals()) {
      double last_t = 0.0, last_u = INFINITY;
      for (double w : {0.5, 1.0, 2.0}) {
        const ctf::AdditivityReport r = ctf::lemma2_check(f, ctf::gaussian(grid, 0, w), A);
        EXPECT_GT(r.map.spread_t, last_t) << A.to_string() << " w=" << w;
        EXPECT_LT(r.map.spread_u, last_u) << A.to_string() << " w=" << w;
        last_t = r.map.spread_t;
        last_u = r.map.spread_u;
      }
    }
  }
}

TEST(Theorem1, ShearedMatrixBoundIsBSquared) {
  const ParamMatrix A = ParamMatrix::validate(1, 2, 0.5, 2);
  for (const auto& f : ctf::testing::battery_signals()) {
    for (const auto& g : ctf::testing::battery_windows()) {
      const ctf::BoundReport r = ctf::theorem1_check(f, g, A);
      EXPECT_DOUBLE_EQ(r.rhs, 4.0);
      EXPECT_GE(r.lhs, 4.0);
      EXPECT_TRUE(r.passed);
    }
  }
}

TEST(Theorem1Property, ScaleInvariant) {
  const ctf::Grid grid = ctf::testing::desk_grid();
  const SampledSignal f = ctf::gaussian(grid, 0.5, 1, 1);
  std::vector<ctf::complex> doubled(f.values().begin(), f.values().end());
  for (auto& v : doubled) v *= 2.0;
  const SampledSignal g = ctf::gaussian(grid, 1, 1);
  for (const auto& A : ctf::testing::battery_matrices()) {
    const ctf::BoundReport r1 = ctf::theorem1_check(f, g, A);
    const ctf::BoundReport r2 = ctf::theorem1_check(SampledSignal(grid, doubled), g, A);
    EXPECT_NEAR(r2.lhs / r1.lhs, 1.0, 1e-12);
  }
}

TEST(Theorem1Property, HoldsOverBattery) {
  for (const auto& f : ctf::testing::battery_signals()) {
    for (const auto& g : ctf::testing::battery_windows()) {
      for (const auto& A : ctf::testing::battery_matrices()) {
        const ctf::BoundReport r = ctf::theorem1_check(f, g, A, 1.5);
        EXPECT_TRUE(r.passed) << A.to_string();
        EXPECT_GE(r.lhs, r.rhs * (1 - ctf::kBoundSlack));
      }
    }
  }
}

TEST(Theorem2, FourierAgainstSixthTurn) {
  const SampledSignal f = ctf::gaussian(ctf::testing::desk_grid(), 0, 1);
  const ctf::BoundReport r =
      ctf::theorem2_check(f, f, ParamMatrix::fractional(kPi / 2), ParamMatrix::fractional(kPi / 6));
  EXPECT_NEAR(r.rhs, 3.0 / 16.0, 1e-15);
  // F_A^2 = 1 and F_B^2 = 1/2 + 1/8.
  EXPECT_NEAR(r.lhs, 0.625, 1e-8);
  EXPECT_TRUE(r.passed);
}

TEST(Theorem2, EqualMatricesGiveZeroRhs) {
  const SampledSignal f = ctf::gaussian(ctf::testing::desk_grid(), 0, 1);
  const ParamMatrix A = ParamMatrix::validate(2, 1, 1, 1);
  EXPECT_EQ(ctf::theorem2_check(f, f, A, A).rhs, 0.0);
}

TEST(Theorem2, FourierAgainstQuarterTurn) {
  const SampledSignal f = ctf::gaussian(ctf::testing::desk_grid(), 0, 1);
  const ctf::BoundReport r = ctf::theorem2_check(f, f, ParamMatrix::fourier(), ParamMatrix::fractional(kPi / 4));
  EXPECT_NEAR(r.rhs, 0.125, 1e-15);
  EXPECT_TRUE(r.passed);
}

TEST(Theorem3, SymmetricPointHasRealAnticommutator) {
  const SampledSignal f = ctf::gaussian(ctf::testing::desk_grid(), 0, 1);
  const ctf::Thm3Report r = ctf::theorem3_check(f, f, ParamMatrix::fourier(), 0.0, 0.0);
  EXPECT_NEAR(std::abs(r.anticommutator_expectation), 0.0, 1e-10);
  EXPECT_GT(r.local_energy, 0.0);
  EXPECT_GT(r.spectral_energy, 0.0);
  EXPECT_TRUE(r.passed_commutator);
  // b = 1: both readings of the constant coincide.
  EXPECT_DOUBLE_EQ(r.rhs_paper, r.rhs_commutator_consistent);
}

TEST(Theorem3, ChirpedGaussianUnderFourier) {
  const ctf::Grid grid = ctf::testing::desk_grid();
  const SampledSignal f = ctf::gaussian(grid, 0.5, 1, 1);
  const SampledSignal g = ctf::gaussian(grid, 0, 1);
  for (const auto& r : ctf::theorem3_subgrid(f, g, ParamMatrix::fourier(), 3)) {
    EXPECT_TRUE(r.passed_commutator) << "t=" << r.t << " u=" << r.u;
    EXPECT_GT(r.lhs, 0.0);
    EXPECT_NEAR(std::abs(r.anticommutator_expectation.imag()), 0.0,
                1e-10 * std::max(1.0, std::abs(r.anticommutator_expectation)));
  }
}

TEST(Theorem3, ConstantsDifferByBSquaredScaling) {
  const SampledSignal f = ctf::gaussian(ctf::testing::desk_grid(), 0, 1);
  const ParamMatrix A = ParamMatrix::fractional(kPi / 6);
  const ctf::Thm3Report r = ctf::theorem3_check(f, f, A, 0.0, 0.0);
  // rhs = |anti + i kappa Q/2|^2 / (Q P) with kappa = 1 or b; for a real
  // anticommutator the two differ by (1 - b^2) Q / 4P.
  ASSERT_NEAR(r.anticommutator_expectation.imag(), 0.0, 1e-12);
  const double b = A.b();
  EXPECT_NEAR(r.rhs_paper - r.rhs_commutator_consistent, (1 - b * b) * r.local_energy / (4 * r.spectral_energy),
              1e-10 * r.rhs_paper);
}

TEST(Battery, EmptyConfigHasNoEntries) {
  ctf::BatteryConfig config;
  const ctf::BatteryResult r = ctf::run_battery(config);
  EXPECT_TRUE(r.entries.empty());
  EXPECT_FALSE(r.any_violation());
  EXPECT_FALSE(r.any_errored());
}

TEST(Battery, ErrorsAreIsolatedPerEntry) {
  ctf::BatteryConfig config;
  // The second signal's chirp outruns the sampling rate.
  config.signals = {ctf::parse_signal_spec("gaussian:0,1"), ctf::parse_signal_spec("gaussian:0,1,100,0")};
  config.windows = {ctf::parse_signal_spec("gaussian:0,1")};
  config.matrices = {{"fourier", ParamMatrix::fourier()}, {"frft:pi/6", ParamMatrix::fractional(kPi / 6)}};
  config.theorems = {Theorem::One};
  const ctf::BatteryResult r = ctf::run_battery(config);
  ASSERT_EQ(r.entries.size(), 4u);
  for (const auto& e : r.entries) {
    if (e.signal_index == 0) {
      EXPECT_EQ(e.status, ctf::EntryStatus::Passed);
    } else {
      EXPECT_EQ(e.status, ctf::EntryStatus::Errored);
      EXPECT_TRUE(e.numerical_error);
      EXPECT_FALSE(e.error.empty());
    }
  }
  EXPECT_TRUE(r.any_errored());
  EXPECT_FALSE(r.all_passed());
}

TEST(Battery, DefaultConfigPasses) {
  const ctf::BatteryResult r = ctf::run_battery(ctf::BatteryConfig::default_config());
  EXPECT_TRUE(r.all_passed());
  // signals x windows x matrices for Theorems 1 and 2.
  EXPECT_EQ(r.entries.size(), 72u);
  for (const auto& s : r.summary) EXPECT_GE(s.min_slack, -ctf::kBoundSlack);
}

TEST(Battery, ExplicitPairsRestrictTheorem2) {
  ctf::BatteryConfig config = ctf::BatteryConfig::default_config();
  config.signals.resize(1);
  config.windows.resize(1);
  config.theorems = {Theorem::Two};
  config.pairs = {{0, 1}};
  const ctf::BatteryResult r = ctf::run_battery(config);
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0].matrix_index, 0u);
  ASSERT_TRUE(r.entries[0].matrix2_index.has_value());
  EXPECT_EQ(*r.entries[0].matrix2_index, 1u);
}

TEST(RequireResolved, FlagsTruncatedSignal) {
  const ctf::Grid grid = ctf::testing::desk_grid();
  try {
    ctf::require_resolved(ctf::gaussian(grid, 0, 6), ctf::gaussian(grid, 0, 1), ParamMatrix::fourier(), 0.0);
    FAIL();
  } catch (const ctf::Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unresolved);
  }
  EXPECT_NO_THROW(ctf::require_resolved(ctf::gaussian(grid, 0, 1), ctf::gaussian(grid, 0, 1),
                                        ParamMatrix::fourier(), 0.0));
}
