#include "canonical_tf/moments.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "canonical_tf/errors.hpp"
#include "canonical_tf/lct.hpp"

namespace canonical_tf {

double Relation::deviation() const noexcept { return std::abs(lhs - rhs); }

const char* to_string(MeanTimeSign s) {
  switch (s) {
    case MeanTimeSign::Minus: return "minus";
    case MeanTimeSign::Plus: return "plus";
    case MeanTimeSign::Both: return "both";
    case MeanTimeSign::Neither: return "neither";
  }
  return "neither";
}

namespace {

MomentReport weighted_moments(std::span<const complex> values, const Grid& grid) {
  const double E = energy(values, grid.dt);
  if (E < kMinEnergy) {
    std::ostringstream msg;
    msg << "energy " << E << " is below " << kMinEnergy;
    throw Error(ErrorKind::ZeroEnergy, msg.str());
  }
  double first = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) first += grid.point(k) * std::norm(values[k]);
  const double mean = first * grid.dt / E;
  double second = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double x = grid.point(k) - mean;
    second += x * x * std::norm(values[k]);
  }
  return MomentReport{mean, second * grid.dt / E, E};
}

}  // namespace

MomentReport time_moments(const SampledSignal& s) { return weighted_moments(s.values(), s.grid()); }

MomentReport freq_moments(const ParamMatrix& A, const SampledSignal& s) {
  const SampledSignal L = lct_fast(A, s);
  return weighted_moments(L.values(), L.grid());
}

StlctMomentReport stlct_moments(const TimeFreqMap& map) {
  const Grid& tg = map.t_grid;
  const Grid& ug = map.u_grid;
  const double cell = tg.dt * ug.dt;
  const double W = map.total_energy();
  if (W < kMinEnergy) throw Error(ErrorKind::ZeroEnergy, "time-frequency map has no energy");

  // Marginals first; the 2-D central moments are moments of the marginals.
  std::vector<double> t_marginal(tg.n, 0.0);
  std::vector<double> u_marginal(ug.n, 0.0);
  for (std::size_t i = 0; i < tg.n; ++i) {
    for (std::size_t j = 0; j < ug.n; ++j) {
      const double w = std::norm(map.at(i, j));
      t_marginal[i] += w;
      u_marginal[j] += w;
    }
  }
  auto moments = [&](const std::vector<double>& marginal, const Grid& g) {
    double first = 0.0;
    for (std::size_t k = 0; k < g.n; ++k) first += g.point(k) * marginal[k];
    const double mean = first * cell / W;
    double second = 0.0;
    for (std::size_t k = 0; k < g.n; ++k) {
      const double x = g.point(k) - mean;
      second += x * x * marginal[k];
    }
    return std::pair{mean, second * cell / W};
  };
  const auto [mean_t, spread_t] = moments(t_marginal, tg);
  const auto [mean_u, spread_u] = moments(u_marginal, ug);
  return StlctMomentReport{mean_t, spread_t, mean_u, spread_u, W};
}

AdditivityReport lemma2_check(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A,
                              double d_prime) {
  const ParamMatrix A1 = A.window_matrix(d_prime);
  const Grid t_grid = centered_grid(f.grid().n, f.grid().dt);
  const TimeFreqMap map = stlct(f, g, A, t_grid, induced_grid(A, f.grid()));

  AdditivityReport r;
  r.map = stlct_moments(map);
  r.signal_time = time_moments(f);
  r.window_time = time_moments(g);
  r.signal_freq = freq_moments(A, f);
  r.window_freq = freq_moments(A1, g);

  r.mean_t_plus = {r.map.mean_t, r.signal_time.mean + r.window_time.mean};
  r.mean_t_minus = {r.map.mean_t, r.signal_time.mean - r.window_time.mean};
  r.spread_t = {r.map.spread_t, r.signal_time.spread + r.window_time.spread};
  r.mean_u = {r.map.mean_u, r.signal_freq.mean - r.window_freq.mean};
  r.spread_u = {r.map.spread_u, r.signal_freq.spread + r.window_freq.spread};

  const bool plus = r.mean_t_plus.deviation() < kAdditivityTolerance;
  const bool minus = r.mean_t_minus.deviation() < kAdditivityTolerance;
  r.sign = plus && minus ? MeanTimeSign::Both
           : minus       ? MeanTimeSign::Minus
           : plus        ? MeanTimeSign::Plus
                         : MeanTimeSign::Neither;
  return r;
}

ConditionalMoments conditional_freq_moments(const TimeFreqMap& map, std::span<const double> Q) {
  if (Q.size() != map.t_grid.n) throw Error(ErrorKind::GridMismatch, "Q must have one entry per t row");
  const Grid& ug = map.u_grid;
  ConditionalMoments out;
  out.axis_values = map.t_grid.points();
  out.weights.assign(Q.begin(), Q.end());
  out.means.assign(Q.size(), std::numeric_limits<double>::quiet_NaN());
  out.variances.assign(Q.size(), std::numeric_limits<double>::quiet_NaN());
  out.defined.assign(Q.size(), false);
  for (std::size_t i = 0; i < Q.size(); ++i) {
    if (Q[i] < kMinEnergy) continue;
    double first = 0.0;
    for (std::size_t j = 0; j < ug.n; ++j) first += ug.point(j) * std::norm(map.at(i, j));
    const double mean = first * ug.dt / Q[i];
    double second = 0.0;
    for (std::size_t j = 0; j < ug.n; ++j) {
      const double x = ug.point(j) - mean;
      second += x * x * std::norm(map.at(i, j));
    }
    out.means[i] = mean;
    out.variances[i] = second * ug.dt / Q[i];
    out.defined[i] = true;
  }
  return out;
}

ConditionalMoments conditional_time_moments(const TimeFreqMap& map_sftt, std::span<const double> P) {
  if (P.size() != map_sftt.u_grid.n) throw Error(ErrorKind::GridMismatch, "P must have one entry per u column");
  const Grid& tg = map_sftt.t_grid;
  ConditionalMoments out;
  out.axis_values = map_sftt.u_grid.points();
  out.weights.assign(P.begin(), P.end());
  out.means.assign(P.size(), std::numeric_limits<double>::quiet_NaN());
  out.variances.assign(P.size(), std::numeric_limits<double>::quiet_NaN());
  out.defined.assign(P.size(), false);
  for (std::size_t j = 0; j < P.size(); ++j) {
    if (P[j] < kMinEnergy) continue;
    double first = 0.0;
    for (std::size_t i = 0; i < tg.n; ++i) first += tg.point(i) * std::norm(map_sftt.at(i, j));
    const double mean = first * tg.dt / P[j];
    double second = 0.0;
    for (std::size_t i = 0; i < tg.n; ++i) {
      const double x = tg.point(i) - mean;
      second += x * x * std::norm(map_sftt.at(i, j));
    }
    out.means[j] = mean;
    out.variances[j] = second * tg.dt / P[j];
    out.defined[j] = true;
  }
  return out;
}

std::vector<double> local_energies(const SampledSignal& f, const SampledSignal& g, const Grid& t_grid) {
  std::vector<double> Q(t_grid.n);
  for (std::size_t i = 0; i < t_grid.n; ++i) Q[i] = local_energy(f, g, t_grid.point(i));
  return Q;
}

std::vector<double> local_spectrum_energies(const SampledSignal& f, const SampledSignal& g,
                                            const ParamMatrix& A, const Grid& u_grid) {
  const SampledSignal Lf = lct_fast(A, f);
  const SampledSignal Lg = lct_fast(A, g);
  const Grid& mu = Lf.grid();
  const long long n = static_cast<long long>(mu.n);
  std::vector<double> P(u_grid.n);
  for (std::size_t j = 0; j < u_grid.n; ++j) {
    const double r = u_grid.point(j) / mu.dt;
    if (std::abs(r - std::round(r)) > 1e-6) {
      throw Error(ErrorKind::OffGridShift, "u is not on the induced frequency lattice");
    }
    const long long ju = static_cast<long long>(std::round(r)) + n / 2;
    double sum = 0.0;
    for (long long k = 0; k < n; ++k) {
      const long long gi = ju - k + n / 2;
      if (gi >= 0 && gi < n) sum += std::norm(Lf[static_cast<std::size_t>(k)]) * std::norm(Lg[static_cast<std::size_t>(gi)]);
    }
    P[j] = sum * mu.dt;
  }
  return P;
}

std::vector<complex> central_derivative(std::span<const complex> x, double dt) {
  const long long n = static_cast<long long>(x.size());
  auto at = [&](long long k) { return k >= 0 && k < n ? x[static_cast<std::size_t>(k)] : complex{}; };
  std::vector<complex> out(x.size());
  for (long long k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] = (at(k - 2) - 8.0 * at(k - 1) + 8.0 * at(k + 1) - at(k + 2)) / (12.0 * dt);
  }
  return out;
}

std::vector<complex> apply_frequency_operator(const ParamMatrix& A, const Grid& grid,
                                              std::span<const complex> x, double shift) {
  // u K_A(tau, u) = (a tau - (b/i) d/dtau) K_A(tau, u); integrating by parts
  // moves the derivative onto the local signal.
  const std::vector<complex> dx = central_derivative(x, grid.dt);
  const complex minus_ib(0.0, -A.b());
  std::vector<complex> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    out[k] = (A.a() * grid.point(k) - shift) * x[k] + minus_ib * dx[k];
  }
  return out;
}

double sigma_u_given_t_derivative_form(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A,
                                       double t, double mean_u_t) {
  const SampledSignal local = local_signal(f, g, t);
  const double Q = energy(local);
  if (Q < kMinEnergy) {
    std::ostringstream msg;
    msg << "Q(" << t << ") = " << Q;
    throw Error(ErrorKind::ZeroLocalEnergy, msg.str());
  }
  const std::vector<complex> Bf = apply_frequency_operator(A, local.grid(), local.values(), mean_u_t);
  return energy(Bf, local.grid().dt) / Q;
}

}  // namespace canonical_tf
