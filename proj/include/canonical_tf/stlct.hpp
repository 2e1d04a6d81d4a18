#pragma once

#include <vector>

#include "canonical_tf/param_matrix.hpp"
#include "canonical_tf/signal.hpp"

namespace canonical_tf {

/// Complex map over a (t, u) lattice, row-major in t.
struct TimeFreqMap {
  Grid t_grid;
  Grid u_grid;
  std::vector<complex> values;
  ParamMatrix matrix;

  TimeFreqMap(Grid t, Grid u, ParamMatrix A);

  complex& at(std::size_t i, std::size_t j) { return values[i * u_grid.n + j]; }
  const complex& at(std::size_t i, std::size_t j) const { return values[i * u_grid.n + j]; }

  /// sum |values|^2 dt du.
  double total_energy() const;
  /// |values|^2 in the same layout.
  std::vector<double> magnitude_squared() const;
};

/// f(tau) conj(g(tau - t)), shifting the window by whole samples. Throws
/// Error(GridMismatch) if f and g are on different grids, Error(OffGridShift)
/// if t is not an integer multiple of dt.
SampledSignal local_signal(const SampledSignal& f, const SampledSignal& g, double t);

/// Q(t) = energy(local_signal(f, g, t)). Returns 0 when the supports are disjoint.
double local_energy(const SampledSignal& f, const SampledSignal& g, double t);

/// q_t = local_signal / sqrt(Q(t)). Throws Error(ZeroLocalEnergy) when Q(t) < kMinEnergy.
SampledSignal normalized_local_signal(const SampledSignal& f, const SampledSignal& g, double t);

/// One t-row of the STLCT: L_A[local_signal(f, g, t)] on induced_grid(A, f.grid()).
SampledSignal stlct_row(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A, double t);

/// S(t, u) = int f(tau) conj(g(tau - t)) K_A(tau, u) dtau. Rows use the fast
/// path when u_grid is the induced grid and direct quadrature otherwise.
TimeFreqMap stlct(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A, const Grid& t_grid,
                  const Grid& u_grid);

/// Same map computed from the spectrum side:
///   S(t,u) = int L_A f(xi) G*(xi | u, t) dxi,
///   G*(xi | u, t) = sqrt(-i 2 pi b) exp(i d'(xi-u)^2 / 2b) conj(L_{A1} g(xi - u)) K_A(t,u) conj(K_A(t,xi)),
/// with A1 = (0, b, -1/b, d'). u_grid must lie on the induced lattice
/// (Error(OffGridShift) otherwise); t_grid on the dt lattice.
TimeFreqMap stlct_spectral(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A,
                           double d_prime, const Grid& t_grid, const Grid& u_grid);

/// L_u(mu) = L_A f(mu) * L_A g(u - mu) sampled on mu_grid, which must be the
/// induced grid of f (Error(GridMismatch)); u must lie on it (Error(OffGridShift)).
SampledSignal local_spectrum(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A, double u,
                             const Grid& mu_grid);

/// P(u) = energy(local_spectrum).
double local_spectrum_energy(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A, double u);

/// One u-column of the short-frequency time transform, on the centered t grid
/// with the spacing of f.
SampledSignal sftt_column(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A, double u);

/// s(t, u) = int L_A f(mu) L_A g(u - mu) conj(K_A(t, mu)) dmu. mu_grid must be
/// the induced grid; u_grid lies on it; t_grid on the dt lattice.
TimeFreqMap sftt(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A, const Grid& t_grid,
                 const Grid& u_grid, const Grid& mu_grid);

}  // namespace canonical_tf
