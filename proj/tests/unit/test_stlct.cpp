#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "canonical_tf/errors.hpp"
#include "canonical_tf/lct.hpp"
#include "canonical_tf/stlct.hpp"
#include "test_support.hpp"

namespace ctf = canonical_tf;
using ctf::complex;
using ctf::ErrorKind;
using ctf::ParamMatrix;
using ctf::SampledSignal;

namespace {

constexpr double kPi = std::numbers::pi;

ctf::Grid t_grid() { return ctf::centered_grid(1024, 16.0 / 1024.0); }

// Independent quadrature of sum_k f(tau_k) conj(g(tau_k - t)) K_A(tau_k, u) dt.
complex quadrature(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A, double t, double u) {
  const ctf::Grid& grid = f.grid();
  complex sum = 0.0;
  for (std::size_t k = 0; k < grid.n; ++k) {
    const double shifted = grid.point(k) - t;
    const double r = (shifted - grid.t0) / grid.dt;
    const long long idx = std::llround(r);
    if (idx < 0 || idx >= static_cast<long long>(grid.n)) continue;
    sum += f[k] * std::conj(g[static_cast<std::size_t>(idx)]) * ctf::kernel(A, grid.point(k), u);
  }
  return sum * grid.dt;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ctf::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::Parse;
}

}  // namespace

TEST(LocalSignal, UnitGaussianLocalEnergy) {
  const ctf::Grid g = ctf::testing::desk_grid();
  const SampledSignal f = ctf::gaussian(g, 0, 1);
  EXPECT_NEAR(ctf::local_energy(f, f, 0.0), 1.0 / std::sqrt(2.0 * kPi), 1e-12);
  // Q(t) = exp(-t^2/2) / sqrt(2 pi) for two unit Gaussians.
  EXPECT_NEAR(ctf::local_energy(f, f, 1.0), std::exp(-0.5) / std::sqrt(2.0 * kPi), 1e-12);
}

TEST(LocalSignal, IntegratesToEnergyProduct) {
  const ctf::Grid g = ctf::testing::desk_grid();
  const SampledSignal f = ctf::gaussian(g, 0.5, 1, 1);
  const SampledSignal w = ctf::gaussian(g, 0, 0.5);
  const std::vector<double> Q = [&] {
    std::vector<double> q;
    for (std::size_t i = 0; i < g.n; ++i) q.push_back(ctf::local_energy(f, w, t_grid().point(i)));
    return q;
  }();
  double total = 0.0;
  for (double q : Q) total += q * g.dt;
  EXPECT_NEAR(total, ctf::energy(f) * ctf::energy(w), 1e-10);
}

TEST(LocalSignal, RectOverlap) {
  const ctf::Grid g = ctf::testing::desk_grid();
  const SampledSignal r = ctf::rect(g, 0, 0.5);
  EXPECT_NEAR(ctf::local_energy(r, r, 0.0), ctf::energy(r), 1e-15);
  EXPECT_EQ(ctf::local_energy(r, r, 2.0), 0.0);
  EXPECT_EQ(kind_of([&] { ctf::normalized_local_signal(r, r, 2.0); }), ErrorKind::ZeroLocalEnergy);
  EXPECT_NEAR(ctf::energy(ctf::normalized_local_signal(r, r, 0.25)), 1.0, 1e-14);
}

TEST(LocalSignal, ShiftMustBeOnLattice) {
  const SampledSignal f = ctf::gaussian(ctf::testing::desk_grid(), 0, 1);
  EXPECT_EQ(kind_of([&] { ctf::local_signal(f, f, 0.3 * f.grid().dt); }), ErrorKind::OffGridShift);
  const SampledSignal other = ctf::gaussian(ctf::centered_grid(512, 0.03), 0, 1);
  EXPECT_EQ(kind_of([&] { ctf::local_signal(f, other, 0.0); }), ErrorKind::GridMismatch);
}

TEST(Stlct, MatchesIndependentQuadrature) {
  const auto signals = ctf::testing::battery_signals();
  const auto windows = ctf::testing::battery_windows();
  for (const auto& A : ctf::testing::battery_matrices()) {
    const ctf::Grid ug = ctf::induced_grid(A, signals[1].grid());
    const ctf::TimeFreqMap S = ctf::stlct(signals[1], windows[2], A, t_grid(), ug);
    double peak = 0.0;
    for (const auto& v : S.values) peak = std::max(peak, std::abs(v));
    for (std::size_t i : {400u, 512u, 560u}) {
      for (std::size_t j : {500u, 512u, 530u}) {
        const complex q = quadrature(signals[1], windows[2], A, t_grid().point(i), ug.point(j));
        EXPECT_LT(std::abs(S.at(i, j) - q), 1e-9 * peak) << A.to_string() << " i=" << i << " j=" << j;
      }
    }
  }
}

TEST(Stlct, RowEqualsLctOfLocalSignal) {
  const SampledSignal f = ctf::gaussian(ctf::testing::desk_grid(), -1, 0.7, 0, 3);
  const SampledSignal g = ctf::gaussian(ctf::testing::desk_grid(), 0, 0.5);
  const ParamMatrix A = ParamMatrix::fractional(kPi / 6);
  const double t = t_grid().point(480);
  const SampledSignal row = ctf::stlct_row(f, g, A, t);
  const SampledSignal expected = ctf::lct_fast(A, ctf::local_signal(f, g, t));
  EXPECT_LT(ctf::relative_l2(row.values(), expected.values()), 1e-15);
}

TEST(Stlct, RoutesAgree) {
  const auto signals = ctf::testing::battery_signals();
  const auto windows = ctf::testing::battery_windows();
  for (const auto& A : ctf::testing::battery_matrices()) {
    const ctf::Grid ug = ctf::induced_grid(A, signals[0].grid());
    const ctf::TimeFreqMap S = ctf::stlct(signals[2], windows[1], A, t_grid(), ug);
    const ctf::TimeFreqMap Ss = ctf::stlct_spectral(signals[2], windows[1], A, 0.0, t_grid(), ug);
    EXPECT_LT(ctf::relative_l2(Ss.values, S.values), 1e-3) << A.to_string();
  }
}

TEST(Stlct, SubGridSelection) {
  const SampledSignal f = ctf::gaussian(ctf::testing::desk_grid(), 0, 1);
  const ParamMatrix A = ParamMatrix::fourier();
  const ctf::Grid full_u = ctf::induced_grid(A, f.grid());
  const ctf::TimeFreqMap S = ctf::stlct(f, f, A, t_grid(), full_u);
  const ctf::Grid sub_t = ctf::make_grid(16, t_grid().point(500), 2 * t_grid().dt);
  const ctf::Grid sub_u = ctf::make_grid(8, full_u.point(508), full_u.dt);
  const ctf::TimeFreqMap s = ctf::stlct(f, f, A, sub_t, sub_u);
  for (std::size_t i = 0; i < sub_t.n; ++i) {
    for (std::size_t j = 0; j < sub_u.n; ++j) EXPECT_LT(std::abs(s.at(i, j) - S.at(500 + 2 * i, 508 + j)), 1e-12);
  }
}

TEST(Stlct, ConjugateLinearInWindow) {
  const ctf::Grid grid = ctf::testing::desk_grid();
  const SampledSignal f = ctf::gaussian(grid, 0.5, 1, 1);
  const SampledSignal g = ctf::gaussian(grid, 1, 1);
  const complex alpha(0.6, -1.7);
  std::vector<complex> scaled(grid.n);
  for (std::size_t k = 0; k < grid.n; ++k) scaled[k] = alpha * g[k];
  const ParamMatrix A = ParamMatrix::validate(2, 1, 1, 1);
  const ctf::Grid ug = ctf::induced_grid(A, grid);
  const ctf::TimeFreqMap S = ctf::stlct(f, g, A, t_grid(), ug);
  const ctf::TimeFreqMap Sa = ctf::stlct(f, SampledSignal(grid, scaled), A, t_grid(), ug);
  std::vector<complex> expected(S.values.size());
  for (std::size_t k = 0; k < expected.size(); ++k) expected[k] = std::conj(alpha) * S.values[k];
  EXPECT_LT(ctf::relative_l2(Sa.values, expected), 1e-14);
}

TEST(Stlct, ZeroSignalGivesZeroMap) {
  const ctf::Grid grid = ctf::testing::desk_grid();
  const ParamMatrix A = ParamMatrix::fourier();
  const ctf::TimeFreqMap S = ctf::stlct(ctf::SampledSignal::zeros(grid), ctf::gaussian(grid, 0, 1), A, t_grid(),
                                        ctf::induced_grid(A, grid));
  EXPECT_EQ(S.total_energy(), 0.0);
}

TEST(StlctSpectral, DPrimeOnlyChangesPhase) {
  const auto signals = ctf::testing::battery_signals();
  const auto windows = ctf::testing::battery_windows();
  const ParamMatrix A = ParamMatrix::validate(1, 2, 0.5, 2);
  const ctf::Grid ug = ctf::induced_grid(A, signals[0].grid());
  const ctf::TimeFreqMap S0 = ctf::stlct_spectral(signals[0], windows[2], A, 0.0, t_grid(), ug);
  double peak = 0.0;
  for (const auto& v : S0.values) peak = std::max(peak, std::abs(v));
  for (double dp : {-3.0, 0.5, 7.0}) {
    const ctf::TimeFreqMap S = ctf::stlct_spectral(signals[0], windows[2], A, dp, t_grid(), ug);
    for (std::size_t k = 0; k < S.values.size(); ++k) {
      ASSERT_NEAR(std::abs(S.values[k]), std::abs(S0.values[k]), 1e-10 * peak) << "d'=" << dp;
    }
  }
}

TEST(StlctProperty, EnergyFactorizes) {
  const auto signals = ctf::testing::battery_signals();
  const auto windows = ctf::testing::battery_windows();
  for (const auto& A : ctf::testing::battery_matrices()) {
    for (const auto& f : signals) {
      for (const auto& g : windows) {
        const ctf::TimeFreqMap S = ctf::stlct(f, g, A, t_grid(), ctf::induced_grid(A, f.grid()));
        EXPECT_NEAR(S.total_energy() / (ctf::energy(f) * ctf::energy(g)), 1.0, 1e-3) << A.to_string();
      }
    }
  }
}

TEST(LocalSpectrum, IntegratesToEnergyProduct) {
  const auto signals = ctf::testing::battery_signals();
  const auto windows = ctf::testing::battery_windows();
  for (const auto& A : ctf::testing::battery_matrices()) {
    const ctf::Grid ug = ctf::induced_grid(A, signals[0].grid());
    double total = 0.0;
    for (std::size_t j = 0; j < ug.n; j += 1) total += ctf::local_spectrum_energy(signals[1], windows[0], A, ug.point(j));
    EXPECT_NEAR(total * ug.dt, 1.0, 1e-6) << A.to_string();
  }
}

TEST(LocalSpectrum, OffLatticeFrequencyRejected) {
  const SampledSignal f = ctf::gaussian(ctf::testing::desk_grid(), 0, 1);
  const ParamMatrix A = ParamMatrix::fourier();
  const double du = ctf::induced_grid(A, f.grid()).dt;
  EXPECT_EQ(kind_of([&] { ctf::local_spectrum_energy(f, f, A, 0.37 * du); }), ErrorKind::OffGridShift);
}

TEST(Sftt, FourierSpectrogramMatchesStlct) {
  const ctf::Grid grid = ctf::testing::desk_grid();
  const SampledSignal f = ctf::gaussian(grid, 0.5, 1, 1);
  const SampledSignal g = ctf::gaussian(grid, 0, 1);
  const ParamMatrix A = ParamMatrix::fourier();
  const ctf::Grid ug = ctf::induced_grid(A, grid);
  const ctf::TimeFreqMap S = ctf::stlct(f, g, A, t_grid(), ug);
  const ctf::TimeFreqMap s = ctf::sftt(f, g, A, t_grid(), ug, ug);
  const auto PS = S.magnitude_squared();
  const auto Ps = s.magnitude_squared();
  const double peak = *std::max_element(PS.begin(), PS.end());
  for (std::size_t k = 0; k < PS.size(); ++k) {
    if (PS[k] > 1e-9 * peak) ASSERT_LT(std::abs(Ps[k] - PS[k]) / PS[k], 1e-3);
  }
}

TEST(Sftt, ColumnMatchesMap) {
  const ctf::Grid grid = ctf::testing::desk_grid();
  const SampledSignal f = ctf::gaussian(grid, 0, 1);
  const ParamMatrix A = ParamMatrix::fractional(kPi / 6);
  const ctf::Grid ug = ctf::induced_grid(A, grid);
  const ctf::TimeFreqMap s = ctf::sftt(f, f, A, t_grid(), ug, ug);
  const SampledSignal col = ctf::sftt_column(f, f, A, ug.point(520));
  ASSERT_EQ(col.size(), t_grid().n);
  double worst = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < col.size(); ++i) {
    worst = std::max(worst, std::abs(col[i] - s.at(i, 520)));
    peak = std::max(peak, std::abs(col[i]));
  }
  EXPECT_LT(worst, 1e-12 * peak);
}
