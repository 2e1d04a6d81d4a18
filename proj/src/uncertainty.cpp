#include "canonical_tf/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "canonical_tf/errors.hpp"
#include "canonical_tf/lct.hpp"
#include "canonical_tf/stlct.hpp"

namespace canonical_tf {

const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::Stern: return "stern";
    case Theorem::One: return "1";
    case Theorem::Two: return "2";
    case Theorem::Three: return "3";
  }
  return "?";
}

Theorem parse_theorem(const std::string& text) {
  if (text == "stern" || text == "0") return Theorem::Stern;
  if (text == "1") return Theorem::One;
  if (text == "2") return Theorem::Two;
  if (text == "3") return Theorem::Three;
  throw Error(ErrorKind::Parse, "theorem must be one of stern, 1, 2, 3: '" + text + "'");
}

const char* to_string(EntryStatus s) {
  switch (s) {
    case EntryStatus::Passed: return "passed";
    case EntryStatus::Violated: return "violated";
    case EntryStatus::Errored: return "errored";
  }
  return "errored";
}

BoundReport make_bound_report(Theorem theorem, double lhs, double rhs, std::string context) {
  BoundReport r;
  r.theorem = theorem;
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = lhs - rhs;
  r.relative_slack = rhs > 0.0 ? lhs / rhs - 1.0 : std::numeric_limits<double>::infinity();
  r.passed = lhs >= rhs * (1.0 - kBoundSlack);
  r.context = std::move(context);
  return r;
}

namespace {

constexpr std::size_t kMaxPadFactor = 16;

Grid shift_grid(const SampledSignal& f) { return centered_grid(f.grid().n, f.grid().dt); }

// For d != 0 the local spectrum keeps a chirp that spreads s(., u) beyond the
// support of f, so the time axis is zero-padded until the column decays.
std::pair<SampledSignal, double> resolved_sftt_column(const SampledSignal& f, const SampledSignal& g,
                                                      const ParamMatrix& A, double u) {
  for (std::size_t factor = 1; factor <= kMaxPadFactor; factor *= 2) {
    const SampledSignal fp = zero_pad(f, factor);
    const SampledSignal gp = zero_pad(g, factor);
    try {
      SampledSignal column = sftt_column(fp, gp, A, u);
      if (!decays_at_endpoints(column.values())) continue;
      const double P = local_spectrum_energy(fp, gp, A, u);
      if (P < kMinEnergy) {
        std::ostringstream msg;
        msg << "P(" << u << ") = " << P;
        throw Error(ErrorKind::ZeroSpectralEnergy, msg.str());
      }
      return {std::move(column), P};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Undersampled) throw;
    }
  }
  std::ostringstream msg;
  msg << "short-frequency column at u = " << u << " does not fit a " << kMaxPadFactor << "x padded time axis";
  throw Error(ErrorKind::Unresolved, msg.str());
}

StlctMomentReport map_moments(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A) {
  return stlct_moments(stlct(f, g, A, shift_grid(f), induced_grid(A, f.grid())));
}

}  // namespace

BoundReport stern_check(const SampledSignal& f, const ParamMatrix& A) {
  A.require_nonzero_b();
  const double T2 = time_moments(f).spread;
  const double F2 = freq_moments(A, f).spread;
  return make_bound_report(Theorem::Stern, T2 * F2, A.b() * A.b() / 4.0, "A=" + A.to_string());
}

BoundReport theorem1_check(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A,
                           double d_prime) {
  const ParamMatrix A1 = A.window_matrix(d_prime);
  const StlctMomentReport m = map_moments(f, g, A);
  BoundReport r = make_bound_report(Theorem::One, m.spread_t * m.spread_u, A.b() * A.b(), "A=" + A.to_string());
  const double T2 = time_moments(f).spread + time_moments(g).spread;
  const double F2 = freq_moments(A, f).spread + freq_moments(A1, g).spread;
  r.lhs_alternate = T2 * F2;
  return r;
}

BoundReport theorem2_check(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A,
                           const ParamMatrix& B, double d_prime) {
  const ParamMatrix A1 = A.window_matrix(d_prime);
  const ParamMatrix B1 = B.window_matrix(d_prime);
  const double FA = map_moments(f, g, A).spread_u;
  const double FB = map_moments(f, g, B).spread_u;
  const double cross = A.a() * B.b() - B.a() * A.b();
  BoundReport r =
      make_bound_report(Theorem::Two, FA * FB, cross * cross / 4.0, "A=" + A.to_string() + " B=" + B.to_string());
  const double FA1 = freq_moments(A, f).spread + freq_moments(A1, g).spread;
  const double FB1 = freq_moments(B, f).spread + freq_moments(B1, g).spread;
  r.lhs_alternate = FA1 * FB1;
  return r;
}

Thm3Report theorem3_check(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A, double t,
                          double u) {
  A.require_nonzero_b();
  Thm3Report r;
  r.t = t;
  r.u = u;

  const SampledSignal local = local_signal(f, g, t);
  const double Q = energy(local);
  if (Q < kMinEnergy) {
    std::ostringstream msg;
    msg << "Q(" << t << ") = " << Q;
    throw Error(ErrorKind::ZeroLocalEnergy, msg.str());
  }
  r.local_energy = Q;

  // <u>_t and sigma^2_{u|t} from the STLCT row, weighted by Q(t).
  const SampledSignal row = stlct_row(f, g, A, t);
  double mean_u = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) mean_u += row.grid().point(j) * std::norm(row[j]);
  mean_u *= row.grid().dt / Q;
  double var_u = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    const double x = row.grid().point(j) - mean_u;
    var_u += x * x * std::norm(row[j]);
  }
  var_u *= row.grid().dt / Q;

  // <t>_u and sigma^2_{t|u} from the short-frequency time transform, weighted by P(u).
  const auto [column, P] = resolved_sftt_column(f, g, A, u);
  r.spectral_energy = P;
  double mean_t = 0.0;
  for (std::size_t i = 0; i < column.size(); ++i) mean_t += column.grid().point(i) * std::norm(column[i]);
  mean_t *= column.grid().dt / P;
  double var_t = 0.0;
  for (std::size_t i = 0; i < column.size(); ++i) {
    const double x = column.grid().point(i) - mean_t;
    var_t += x * x * std::norm(column[i]);
  }
  var_t *= column.grid().dt / P;

  r.sigma2_u_given_t = var_u;
  r.sigma2_t_given_u = var_t;
  r.lhs = var_u * var_t;

  // Operators on the local signal: A = tau - <t>_u, B = a tau + (b/i) d/dtau - <u>_t.
  const Grid& grid = local.grid();
  auto position = [&](std::span<const complex> x) {
    std::vector<complex> out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = (grid.point(k) - mean_t) * x[k];
    return out;
  };
  const std::vector<complex> Af = position(local.values());
  const std::vector<complex> Bf = apply_frequency_operator(A, grid, local.values(), mean_u);
  const std::vector<complex> ABf = position(Bf);
  const std::vector<complex> BAf = apply_frequency_operator(A, grid, Af, mean_u);
  complex anti = 0.0;
  for (std::size_t k = 0; k < local.size(); ++k) anti += std::conj(local[k]) * (ABf[k] + BAf[k]);
  anti *= 0.5 * grid.dt;
  r.anticommutator_expectation = anti;

  // The 1/(Q P) prefactor sits outside the squared magnitude.
  auto rhs = [&](double kappa) { return std::norm(anti + complex(0.0, 0.5 * kappa * Q)) / (Q * P); };
  r.rhs_paper = rhs(1.0);
  r.rhs_commutator_consistent = rhs(A.b());
  r.passed_commutator = r.lhs >= r.rhs_commutator_consistent * (1.0 - kBoundSlack);
  r.passed_printed = r.lhs >= r.rhs_paper * (1.0 - kBoundSlack);
  return r;
}

namespace {

std::vector<std::size_t> top_indices(const std::vector<double>& w, std::size_t count) {
  std::vector<std::size_t> idx(w.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
  idx.resize(std::min(count, idx.size()));
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

std::vector<Thm3Report> theorem3_subgrid(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A,
                                         std::size_t side) {
  const Grid t_grid = shift_grid(f);
  const Grid u_grid = induced_grid(A, f.grid());
  const std::vector<double> Q = local_energies(f, g, t_grid);
  const std::vector<double> P = local_spectrum_energies(f, g, A, u_grid);
  std::vector<Thm3Report> out;
  for (std::size_t i : top_indices(Q, side)) {
    for (std::size_t j : top_indices(P, side)) {
      out.push_back(theorem3_check(f, g, A, t_grid.point(i), u_grid.point(j)));
    }
  }
  return out;
}

BatteryConfig BatteryConfig::default_config() {
  BatteryConfig c;
  c.signals = {parse_signal_spec("gaussian:0,1,0,0"), parse_signal_spec("gaussian:0.5,1,1,0"),
               parse_signal_spec("gaussian:-1,0.7,0,3")};
  c.windows = {parse_signal_spec("gaussian:0,1"), parse_signal_spec("gaussian:0,0.5"),
               parse_signal_spec("gaussian:1,1")};
  for (const char* m : {"fourier", "frft:pi/6", "1,2,0.5,2", "2,1,1,1"}) {
    c.matrices.push_back({m, parse_matrix(m)});
  }
  return c;
}

bool BatteryResult::all_passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.status == EntryStatus::Passed; });
}

bool BatteryResult::any_violation() const {
  return std::any_of(entries.begin(), entries.end(), [](const auto& e) { return e.status == EntryStatus::Violated; });
}

bool BatteryResult::any_errored() const {
  return std::any_of(entries.begin(), entries.end(), [](const auto& e) { return e.status == EntryStatus::Errored; });
}

void require_resolved(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A, double d_prime) {
  auto check = [](std::span<const complex> v, const char* what) {
    if (!decays_at_endpoints(v)) {
      throw Error(ErrorKind::Unresolved, std::string(what) + " does not decay at the grid ends");
    }
  };
  check(f.values(), "signal");
  check(g.values(), "window");
  check(lct_fast(A, f).values(), "signal transform");
  check(lct_fast(A.window_matrix(d_prime), g).values(), "window transform");
}

namespace {

std::string describe(const BatteryConfig& c, const BatteryEntry& e) {
  std::string s = "f=" + c.signals[e.signal_index].to_string();
  if (e.theorem != Theorem::Stern) s += " g=" + c.windows[e.window_index].to_string();
  s += " A=" + c.matrices[e.matrix_index].name;
  if (e.matrix2_index) s += " B=" + c.matrices[*e.matrix2_index].name;
  return s;
}

}  // namespace

BatteryResult run_battery(const BatteryConfig& config) {
  BatteryResult result;
  const std::size_t m = config.matrices.size();
  auto partner = [&](std::size_t i) -> std::size_t {
    for (const auto& [x, y] : config.pairs) {
      if (x == i) return y;
    }
    return (i + 1) % m;
  };

  for (std::size_t si = 0; si < config.signals.size(); ++si) {
    for (std::size_t wi = 0; wi < config.windows.size(); ++wi) {
      for (std::size_t mi = 0; mi < m; ++mi) {
        for (Theorem th : config.theorems) {
          if (th == Theorem::Stern && wi != 0) continue;
          if (th == Theorem::Two && !config.pairs.empty() &&
              std::none_of(config.pairs.begin(), config.pairs.end(), [&](const auto& p) { return p.first == mi; })) {
            continue;
          }
          BatteryEntry e;
          e.theorem = th;
          e.signal_index = si;
          e.window_index = wi;
          e.matrix_index = mi;
          if (th == Theorem::Two) e.matrix2_index = partner(mi);
          try {
            const SampledSignal f = config.signals[si].generate(config.grid);
            const SampledSignal g = config.windows[wi].generate(config.grid);
            const ParamMatrix& A = config.matrices[mi].matrix;
            require_resolved(f, g, A, config.d_prime);
            switch (th) {
              case Theorem::Stern: e.bound = stern_check(f, A); break;
              case Theorem::One: e.bound = theorem1_check(f, g, A, config.d_prime); break;
              case Theorem::Two: {
                const ParamMatrix& B = config.matrices[*e.matrix2_index].matrix;
                require_resolved(f, g, B, config.d_prime);
                e.bound = theorem2_check(f, g, A, B, config.d_prime);
                break;
              }
              case Theorem::Three: e.thm3 = theorem3_subgrid(f, g, A); break;
            }
            bool ok = true;
            if (e.bound) {
              e.bound->context = describe(config, e);
              ok = e.bound->passed;
            } else {
              ok = std::all_of(e.thm3.begin(), e.thm3.end(), [](const auto& r) { return r.passed_commutator; });
            }
            e.status = ok ? EntryStatus::Passed : EntryStatus::Violated;
          } catch (const Error& err) {
            e.status = EntryStatus::Errored;
            e.error = err.what();
            e.numerical_error = is_numerical(err.kind());
          }
          result.entries.push_back(std::move(e));
        }
      }
    }
  }

  for (Theorem th : config.theorems) {
    TheoremSummary s;
    s.theorem = th;
    s.min_slack = std::numeric_limits<double>::infinity();
    for (const auto& e : result.entries) {
      if (e.theorem != th) continue;
      if (e.status == EntryStatus::Passed) ++s.passed;
      if (e.status == EntryStatus::Violated) ++s.violated;
      if (e.status == EntryStatus::Errored) {
        ++s.errored;
        continue;
      }
      if (e.bound) s.min_slack = std::min(s.min_slack, e.bound->relative_slack);
      for (const auto& r : e.thm3) {
        s.min_slack = std::min(s.min_slack, r.lhs / r.rhs_commutator_consistent - 1.0);
        if (r.passed_printed) {
          ++s.printed_constant_held;
        } else {
          ++s.printed_constant_failed;
        }
      }
    }
    result.summary.push_back(s);
  }
  return result;
}

}  // namespace canonical_tf
