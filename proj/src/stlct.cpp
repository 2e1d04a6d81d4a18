#include "canonical_tf/stlct.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "canonical_tf/errors.hpp"
#include "canonical_tf/lct.hpp"
#include "canonical_tf/parallel.hpp"
#include "lct_internal.hpp"

namespace canonical_tf {

TimeFreqMap::TimeFreqMap(Grid t, Grid u, ParamMatrix A)
    : t_grid(t), u_grid(u), values(t.n * u.n), matrix(A) {}

double TimeFreqMap::total_energy() const { return energy(values, t_grid.dt * u_grid.dt); }

std::vector<double> TimeFreqMap::magnitude_squared() const {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = std::norm(values[i]);
  return out;
}

namespace {

// Integer m with x = m * step, or Error(OffGridShift).
long long lattice_steps(double x, double step, const char* what) {
  const double r = x / step;
  const double m = std::round(r);
  if (std::abs(r - m) > 1e-6) {
    std::ostringstream msg;
    msg << what << ' ' << x << " is not a multiple of the lattice spacing " << step;
    throw Error(ErrorKind::OffGridShift, msg.str());
  }
  return static_cast<long long>(m);
}

// Index of x on a centered lattice, possibly outside [0, n).
long long centered_index(const Grid& lattice, double x, const char* what) {
  return lattice_steps(x, lattice.dt, what) + static_cast<long long>(lattice.n / 2);
}

void require_same_grid(const SampledSignal& f, const SampledSignal& g) {
  if (!f.grid().matches(g.grid())) {
    throw Error(ErrorKind::GridMismatch, "signal and window must share one grid");
  }
}

void require_t_lattice(const Grid& t_grid, double dt) {
  for (std::size_t i = 0; i < t_grid.n; ++i) lattice_steps(t_grid.point(i), dt, "shift");
}

// Indices of u_grid on the induced lattice; all must be in range.
std::vector<std::size_t> u_indices(const Grid& u_grid, const Grid& lattice) {
  std::vector<std::size_t> idx(u_grid.n);
  for (std::size_t j = 0; j < u_grid.n; ++j) {
    const long long i = centered_index(lattice, u_grid.point(j), "frequency");
    if (i < 0 || i >= static_cast<long long>(lattice.n)) {
      throw Error(ErrorKind::OffGridShift, "frequency outside the induced grid");
    }
    idx[j] = static_cast<std::size_t>(i);
  }
  return idx;
}

// Both frequency-side routes return to time through a DFT, so anything that
// spreads past the time lattice of that DFT wraps around. The lattice edges
// bound what lies beyond them; 1e-8 in power keeps the wrapped part below 1e-4
// in amplitude. Judged over the whole map, not per column: a column far out in
// u is tiny everywhere and its own edge ratio means nothing.
constexpr double kWrapFloor = 1e-8;

struct WrapMonitor {
  std::mutex mutex;
  double edge = 0.0;
  double peak = 0.0;

  void record(const SampledSignal& column) {
    double p = 0.0;
    for (const auto& v : column.values()) p = std::max(p, std::norm(v));
    const double e = std::max(std::norm(column[0]), std::norm(column[column.size() - 1]));
    std::lock_guard lock(mutex);
    edge = std::max(edge, e);
    peak = std::max(peak, p);
  }

  void check(const char* route) const {
    if (edge > kWrapFloor * peak) {
      std::ostringstream msg;
      msg << route << " transform does not decay at the edges of its time lattice (edge/peak " << edge / peak
          << "); it wraps around, widen the grid";
      throw Error(ErrorKind::Undersampled, msg.str());
    }
  }
};

// Evaluates sum_k h[k] K_{A^-1}(xi_k, t) dxi at every t of t_grid. Points on
// the centered dt-lattice come from one fast transform; others by quadrature.
std::vector<complex> back_to_time(const ParamMatrix& A, const SampledSignal& h, const Grid& t_grid, double dt,
                                  WrapMonitor& monitor) {
  const SampledSignal column = detail::lct_fast_unchecked(A.inverse(), h);
  monitor.record(column);
  const Grid& cg = column.grid();
  std::vector<complex> out(t_grid.n);
  const KernelSpec Kinv(A.inverse());
  for (std::size_t i = 0; i < t_grid.n; ++i) {
    const double t = t_grid.point(i);
    const long long idx = lattice_steps(t, dt, "shift") + static_cast<long long>(cg.n / 2);
    if (idx >= 0 && idx < static_cast<long long>(cg.n)) {
      out[i] = column[static_cast<std::size_t>(idx)];
    } else {
      complex sum = 0.0;
      for (std::size_t k = 0; k < h.size(); ++k) sum += h[k] * Kinv(h.grid().point(k), t);
      out[i] = sum * h.grid().dt;
    }
  }
  return out;
}

}  // namespace

SampledSignal local_signal(const SampledSignal& f, const SampledSignal& g, double t) {
  require_same_grid(f, g);
  const long long m = lattice_steps(t, f.grid().dt, "shift");
  const long long n = static_cast<long long>(f.size());
  std::vector<complex> v(f.size());
  for (long long k = 0; k < n; ++k) {
    const long long src = k - m;
    if (src >= 0 && src < n) {
      v[static_cast<std::size_t>(k)] = f[static_cast<std::size_t>(k)] * std::conj(g[static_cast<std::size_t>(src)]);
    }
  }
  return SampledSignal(f.grid(), std::move(v));
}

double local_energy(const SampledSignal& f, const SampledSignal& g, double t) {
  return energy(local_signal(f, g, t));
}

SampledSignal normalized_local_signal(const SampledSignal& f, const SampledSignal& g, double t) {
  SampledSignal s = local_signal(f, g, t);
  const double q = energy(s);
  if (q < kMinEnergy) {
    std::ostringstream msg;
    msg << "Q(" << t << ") = " << q;
    throw Error(ErrorKind::ZeroLocalEnergy, msg.str());
  }
  const double scale = 1.0 / std::sqrt(q);
  for (auto& v : s.mutable_values()) v *= scale;
  return s;
}

SampledSignal stlct_row(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A, double t) {
  return lct_fast(A, local_signal(f, g, t));
}

TimeFreqMap stlct(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A, const Grid& t_grid,
                  const Grid& u_grid) {
  A.require_nonzero_b();
  require_same_grid(f, g);
  require_t_lattice(t_grid, f.grid().dt);
  const bool fast = u_grid.matches(induced_grid(A, f.grid()));
  TimeFreqMap map(t_grid, u_grid, A);
  parallel_for(t_grid.n, [&](std::size_t i) {
    const SampledSignal local = local_signal(f, g, t_grid.point(i));
    const SampledSignal row = fast ? lct_fast(A, local) : lct_direct(A, local, u_grid);
    std::copy(row.values().begin(), row.values().end(), map.values.begin() + static_cast<long>(i * u_grid.n));
  });
  return map;
}

TimeFreqMap stlct_spectral(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A,
                           double d_prime, const Grid& t_grid, const Grid& u_grid) {
  A.require_nonzero_b();
  require_same_grid(f, g);
  require_t_lattice(t_grid, f.grid().dt);
  const double b = A.b();
  const ParamMatrix A1 = A.window_matrix(d_prime);

  const SampledSignal Lf = lct_fast(A, f);
  const SampledSignal L1g = lct_fast(A1, g);  // same |b|, so same lattice as Lf
  const Grid& xi = Lf.grid();
  const std::size_t n = xi.n;
  const std::vector<std::size_t> uj = u_indices(u_grid, xi);

  // sqrt(-i 2 pi b) exp(i d' gamma^2 / 2b) conj(L_{A1} g(gamma)) on the lattice.
  const complex root = std::sqrt(complex(0.0, -2.0 * std::numbers::pi * b));
  std::vector<complex> window_factor(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double gamma = xi.point(i);
    window_factor[i] = root * std::polar(1.0, d_prime * gamma * gamma / (2.0 * b)) * std::conj(L1g[i]);
  }

  const long long half = static_cast<long long>(n / 2);
  auto column_input = [&](std::size_t j) {
    const long long ju = static_cast<long long>(uj[j]);
    std::vector<complex> h(n);
    for (long long k = 0; k < static_cast<long long>(n); ++k) {
      const long long gi = k - ju + half;
      if (gi >= 0 && gi < static_cast<long long>(n)) {
        h[static_cast<std::size_t>(k)] = Lf[static_cast<std::size_t>(k)] * window_factor[static_cast<std::size_t>(gi)];
      }
    }
    return h;
  };
  const KernelSpec K(A);
  TimeFreqMap map(t_grid, u_grid, A);
  WrapMonitor monitor;
  parallel_for(u_grid.n, [&](std::size_t j) {
    const std::vector<complex> column =
        back_to_time(A, SampledSignal(xi, column_input(j)), t_grid, f.grid().dt, monitor);
    const double u = xi.point(uj[j]);
    for (std::size_t i = 0; i < t_grid.n; ++i) map.at(i, j) = K(t_grid.point(i), u) * column[i];
  });
  monitor.check("spectral-route");
  return map;
}

namespace {

std::vector<complex> local_spectrum_values(const SampledSignal& Lf, const SampledSignal& Lg, std::size_t ju) {
  const long long n = static_cast<long long>(Lf.size());
  const long long half = n / 2;
  const long long j = static_cast<long long>(ju);
  std::vector<complex> v(Lf.size());
  for (long long k = 0; k < n; ++k) {
    // u - mu_k = (j - k) du lands on lattice index j - k + n/2.
    const long long gi = j - k + half;
    if (gi >= 0 && gi < n) v[static_cast<std::size_t>(k)] = Lf[static_cast<std::size_t>(k)] * Lg[static_cast<std::size_t>(gi)];
  }
  return v;
}

}  // namespace

SampledSignal local_spectrum(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A, double u,
                             const Grid& mu_grid) {
  A.require_nonzero_b();
  require_same_grid(f, g);
  const SampledSignal Lf = lct_fast(A, f);
  if (!mu_grid.matches(Lf.grid())) {
    throw Error(ErrorKind::GridMismatch, "local spectrum lives on the induced frequency grid");
  }
  const SampledSignal Lg = lct_fast(A, g);
  const std::size_t ju = u_indices(Grid{1, u, 1.0}, Lf.grid())[0];
  return SampledSignal(Lf.grid(), local_spectrum_values(Lf, Lg, ju));
}

double local_spectrum_energy(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A, double u) {
  A.require_nonzero_b();
  return energy(local_spectrum(f, g, A, u, induced_grid(A, f.grid())));
}

SampledSignal sftt_column(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A, double u) {
  A.require_nonzero_b();
  require_same_grid(f, g);
  const SampledSignal Lf = lct_fast(A, f);
  const SampledSignal Lg = lct_fast(A, g);
  const std::size_t ju = u_indices(Grid{1, u, 1.0}, Lf.grid())[0];
  return lct_fast(A.inverse(), SampledSignal(Lf.grid(), local_spectrum_values(Lf, Lg, ju)));
}

TimeFreqMap sftt(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A, const Grid& t_grid,
                 const Grid& u_grid, const Grid& mu_grid) {
  A.require_nonzero_b();
  require_same_grid(f, g);
  require_t_lattice(t_grid, f.grid().dt);
  const SampledSignal Lf = lct_fast(A, f);
  if (!mu_grid.matches(Lf.grid())) {
    throw Error(ErrorKind::GridMismatch, "mu integration runs over the induced frequency grid");
  }
  const SampledSignal Lg = lct_fast(A, g);
  const std::vector<std::size_t> uj = u_indices(u_grid, Lf.grid());
  TimeFreqMap map(t_grid, u_grid, A);
  WrapMonitor monitor;
  parallel_for(u_grid.n, [&](std::size_t j) {
    const SampledSignal Lu(Lf.grid(), local_spectrum_values(Lf, Lg, uj[j]));
    const std::vector<complex> column = back_to_time(A, Lu, t_grid, f.grid().dt, monitor);
    for (std::size_t i = 0; i < t_grid.n; ++i) map.at(i, j) = column[i];
  });
  monitor.check("short-frequency");
  return map;
}

}  // namespace canonical_tf
