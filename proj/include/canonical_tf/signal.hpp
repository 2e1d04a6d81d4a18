#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace canonical_tf {

using complex = std::complex<double>;

inline constexpr double kMinEnergy = 1e-14;
// |endpoint|^2 / peak^2 above this counts as truncation.
inline constexpr double kEndpointDecay = 1e-12;

/// Uniform sampling lattice t0 + k*dt, k = 0..n-1.
struct Grid {
  std::size_t n = 0;
  double t0 = 0.0;
  double dt = 1.0;

  double point(std::size_t k) const noexcept { return t0 + static_cast<double>(k) * dt; }
  double back() const noexcept { return point(n - 1); }
  std::vector<double> points() const;

  /// Whether the grid is symmetric in the DFT sense, t0 == -(n/2)*dt.
  bool centered() const noexcept;

  /// Same lattice up to a relative tolerance on t0/dt.
  bool matches(const Grid& other, double rel_tol = 1e-12) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Throws Error(BadGrid) unless n >= 8, dt > 0 and both are finite.
Grid make_grid(std::size_t n, double t0, double dt);

/// The DFT-centered grid with n points and spacing dt.
Grid centered_grid(std::size_t n, double dt);

/// Complex samples on a Grid. Values are checked finite on construction.
class SampledSignal {
 public:
  SampledSignal(Grid grid, std::vector<complex> values);
  static SampledSignal zeros(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const complex> values() const noexcept { return values_; }
  std::vector<complex>& mutable_values() noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  const complex& operator[](std::size_t k) const noexcept { return values_[k]; }

 private:
  Grid grid_;
  std::vector<complex> values_;
};

/// Mean/spread of |s|^2 along one axis. spread is the central second moment.
struct MomentReport {
  double mean = 0.0;
  double spread = 0.0;
  double energy = 0.0;
};

/// (pi w^2)^{-1/4} exp(-(t-c)^2 / 2w^2) exp(i (chirp/2)(t-c)^2 + i carrier (t-c)).
/// Unit energy in the continuum; throws Error(BadWidth) for width <= 0.
SampledSignal gaussian(const Grid& grid, double center, double width, double chirp_rate = 0.0,
                       double carrier = 0.0);

/// Indicator of [center - half_width, center + half_width].
SampledSignal rect(const Grid& grid, double center, double half_width);

/// Embeds s in a grid `factor` times longer with the same dt, zeros on both
/// sides. A centered grid stays centered.
SampledSignal zero_pad(const SampledSignal& s, std::size_t factor);

/// Riemann sum of |s|^2 with weight dt.
double energy(const SampledSignal& s);
double energy(std::span<const complex> values, double weight);

/// sum conj(s1) s2 dt. Throws Error(GridMismatch) if grids differ.
complex inner_product(const SampledSignal& s1, const SampledSignal& s2);

/// Relative L2 distance ||x - y|| / ||y||. Throws Error(GridMismatch) on size mismatch.
double relative_l2(std::span<const complex> x, std::span<const complex> y);

/// True when both endpoint samples are below kEndpointDecay relative to the peak
/// (in squared magnitude). A zero signal decays trivially.
bool decays_at_endpoints(std::span<const complex> values, double rel = kEndpointDecay);

/// Signal generator description, e.g. "gaussian:0,1,0,0" or "rect:0,0.5".
struct SignalSpec {
  enum class Kind { Gaussian, Rect };
  Kind kind = Kind::Gaussian;
  double center = 0.0;
  double width = 1.0;  // half-width for Rect
  double chirp_rate = 0.0;
  double carrier = 0.0;

  SampledSignal generate(const Grid& grid) const;
  std::string to_string() const;
};

/// "gaussian:center,width[,chirp[,carrier]]" or "rect:center,half_width".
SignalSpec parse_signal_spec(std::string_view text);

/// "n,t0,dt".
Grid parse_grid(std::string_view text);

}  // namespace canonical_tf
