#pragma once

#include <string>
#include <vector>

#include "canonical_tf/param_matrix.hpp"
#include "canonical_tf/signal.hpp"

namespace canonical_tf {

/// Kernel K_A(t,u) = p * exp(i a t^2/2b - i t u/b + i d u^2/2b) with
/// p = 1/sqrt(i 2 pi b) taken on the principal branch.
struct KernelSpec {
  ParamMatrix matrix;
  complex prefactor;

  /// Throws Error(BZero) for |b| < kBZeroThreshold.
  explicit KernelSpec(const ParamMatrix& A);

  complex operator()(double t, double u) const noexcept;
};

complex kernel(const ParamMatrix& A, double t, double u);

/// Non-fatal findings attached to a transform.
struct Diagnostics {
  bool truncated = false;
  std::vector<std::string> messages;
};

/// Output grid of lct_fast: spacing 2 pi |b| / (n dt), centered on zero.
Grid induced_grid(const ParamMatrix& A, const Grid& input);

/// Riemann-sum quadrature of the LCT integral, O(n_in * n_out). This is the
/// reference the fast path is checked against.
SampledSignal lct_direct(const ParamMatrix& A, const SampledSignal& f, const Grid& out_grid,
                         Diagnostics* diag = nullptr);

/// Chirp, DFT, chirp. Output lives on induced_grid(A, f.grid()).
/// Throws Error(Undersampled) if the input chirp |a/b| t_max dt reaches pi.
SampledSignal lct_fast(const ParamMatrix& A, const SampledSignal& f);

/// b = 0 branch: sqrt(d) exp(i c d u^2/2) f(d u) on the input grid rescaled
/// by 1/d (reversed when d < 0). sqrt(d) is the principal complex root.
SampledSignal lct_b_zero(const ParamMatrix& A, const SampledSignal& f);

/// Quadrature of f(t) = int F(u) K_{A^-1}(u, t) du on out_grid.
SampledSignal ilct(const ParamMatrix& A, const SampledSignal& F, const Grid& out_grid);

/// Linear interpolation of s at x; zero outside the grid.
complex interpolate_linear(const SampledSignal& s, double x);

}  // namespace canonical_tf
