#include "canonical_tf/lct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "canonical_tf/errors.hpp"
#include "canonical_tf/parallel.hpp"
#include "fft.hpp"
#include "lct_internal.hpp"

namespace canonical_tf {

KernelSpec::KernelSpec(const ParamMatrix& A) : matrix(A) {
  A.require_nonzero_b();
  // std::sqrt takes the principal branch, arg in (-pi, pi].
  prefactor = 1.0 / std::sqrt(complex(0.0, 2.0 * std::numbers::pi * A.b()));
}

complex KernelSpec::operator()(double t, double u) const noexcept {
  const double b = matrix.b();
  const double phase = matrix.a() * t * t / (2.0 * b) - t * u / b + matrix.d() * u * u / (2.0 * b);
  return prefactor * std::polar(1.0, phase);
}

complex kernel(const ParamMatrix& A, double t, double u) { return KernelSpec(A)(t, u); }

Grid induced_grid(const ParamMatrix& A, const Grid& input) {
  A.require_nonzero_b();
  const double du =
      2.0 * std::numbers::pi * std::abs(A.b()) / (static_cast<double>(input.n) * input.dt);
  return centered_grid(input.n, du);
}

SampledSignal lct_direct(const ParamMatrix& A, const SampledSignal& f, const Grid& out_grid,
                         Diagnostics* diag) {
  const KernelSpec K(A);
  if (diag != nullptr && !decays_at_endpoints(f.values())) {
    diag->truncated = true;
    diag->messages.emplace_back("TruncationWarning: input does not decay at the grid endpoints");
  }
  const Grid& in = f.grid();
  std::vector<complex> out(out_grid.n);
  parallel_for(out_grid.n, [&](std::size_t j) {
    const double u = out_grid.point(j);
    complex sum = 0.0;
    for (std::size_t k = 0; k < in.n; ++k) sum += f[k] * K(in.point(k), u);
    out[j] = sum * in.dt;
  });
  return SampledSignal(out_grid, std::move(out));
}

namespace {

// Largest |t| where |f|^2 is above the endpoint-decay floor.
double effective_extent(const SampledSignal& f) {
  double peak = 0.0;
  for (const auto& v : f.values()) peak = std::max(peak, std::norm(v));
  double extent = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (std::norm(f[k]) > kEndpointDecay * peak) extent = std::max(extent, std::abs(f.grid().point(k)));
  }
  return extent;
}

}  // namespace

namespace detail {

SampledSignal lct_fast_unchecked(const ParamMatrix& A, const SampledSignal& f) {
  const KernelSpec K(A);
  const Grid& in = f.grid();
  const double a = A.a();
  const double b = A.b();
  const double d = A.d();

  const Grid out_grid = induced_grid(A, in);
  const std::size_t n = in.n;
  std::vector<complex> h(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = in.point(k);
    h[k] = f[k] * std::polar(1.0, a * t * t / (2.0 * b));
  }
  detail::dft_forward(h);

  // Bin for output sample j is sign(b) * (j - n/2) mod n.
  const long long nn = static_cast<long long>(n);
  const long long half = nn / 2;
  const long long sign = b > 0.0 ? 1 : -1;
  std::vector<complex> out(n);
  for (long long j = 0; j < nn; ++j) {
    const long long m = ((sign * (j - half)) % nn + nn) % nn;
    const double u = out_grid.point(static_cast<std::size_t>(j));
    const double phase = -in.t0 * u / b + d * u * u / (2.0 * b);
    out[static_cast<std::size_t>(j)] =
        K.prefactor * in.dt * h[static_cast<std::size_t>(m)] * std::polar(1.0, phase);
  }
  return SampledSignal(out_grid, std::move(out));
}

}  // namespace detail

SampledSignal lct_fast(const ParamMatrix& A, const SampledSignal& f) {
  SampledSignal out = detail::lct_fast_unchecked(A, f);

  // The input chirp aliases once it advances pi per sample. Inputs that carry
  // a cancelling chirp of their own (spectra headed back through the inverse)
  // are fine, so the geometric rule only fires when the output also shows
  // wrap-around at the band edges.
  const double chirp_step = std::abs(A.a() / A.b()) * effective_extent(f) * f.grid().dt;
  if (chirp_step >= std::numbers::pi && !decays_at_endpoints(out.values())) {
    std::ostringstream msg;
    msg << "input chirp advances " << chirp_step << " rad per sample (limit pi); refine the grid";
    throw Error(ErrorKind::Undersampled, msg.str());
  }
  return out;
}

complex interpolate_linear(const SampledSignal& s, double x) {
  const Grid& g = s.grid();
  double pos = (x - g.t0) / g.dt;
  const double last = static_cast<double>(g.n - 1);
  // Snap rounding noise at the ends back onto the grid.
  if (pos < 0.0 && pos > -1e-9) pos = 0.0;
  if (pos > last && pos < last + 1e-9) pos = last;
  if (pos < 0.0 || pos > last) return 0.0;
  const auto k = static_cast<std::size_t>(std::floor(pos));
  if (k + 1 >= g.n) return s[g.n - 1];
  const double w = pos - static_cast<double>(k);
  return (1.0 - w) * s[k] + w * s[k + 1];
}

SampledSignal lct_b_zero(const ParamMatrix& A, const SampledSignal& f) {
  if (!A.b_zero()) {
    throw Error(ErrorKind::DegenerateMatrix, "chirp-multiplication branch requires b = 0");
  }
  const double c = A.c();
  const double d = A.d();
  // ad = 1 when b = 0, so d = 0 cannot pass validation.
  if (d == 0.0) throw Error(ErrorKind::DegenerateMatrix, "b = 0 with d = 0");

  const Grid& in = f.grid();
  const Grid out_grid = d > 0.0 ? make_grid(in.n, in.t0 / d, in.dt / d)
                                : make_grid(in.n, in.back() / d, in.dt / std::abs(d));
  const complex root_d = std::sqrt(complex(d, 0.0));
  std::vector<complex> out(in.n);
  for (std::size_t k = 0; k < in.n; ++k) {
    const double u = out_grid.point(k);
    out[k] = root_d * std::polar(1.0, 0.5 * c * d * u * u) * interpolate_linear(f, d * u);
  }
  return SampledSignal(out_grid, std::move(out));
}

SampledSignal ilct(const ParamMatrix& A, const SampledSignal& F, const Grid& out_grid) {
  const KernelSpec K(A.inverse());
  const Grid& in = F.grid();
  std::vector<complex> out(out_grid.n);
  parallel_for(out_grid.n, [&](std::size_t k) {
    const double t = out_grid.point(k);
    complex sum = 0.0;
    for (std::size_t j = 0; j < in.n; ++j) sum += F[j] * K(in.point(j), t);
    out[k] = sum * in.dt;
  });
  return SampledSignal(out_grid, std::move(out));
}

}  // namespace canonical_tf
