#include "canonical_tf/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "canonical_tf/errors.hpp"
#include "parse_util.hpp"

namespace canonical_tf {

std::vector<double> Grid::points() const {
  std::vector<double> p(n);
  for (std::size_t k = 0; k < n; ++k) p[k] = point(k);
  return p;
}

bool Grid::centered() const noexcept {
  const double expected = -static_cast<double>(n / 2) * dt;
  return std::abs(t0 - expected) <= 1e-12 * std::max(1.0, std::abs(expected));
}

bool Grid::matches(const Grid& other, double rel_tol) const noexcept {
  if (n != other.n) return false;
  const double scale = std::max(std::abs(dt), std::abs(other.dt));
  if (std::abs(dt - other.dt) > rel_tol * scale) return false;
  const double span = std::max({std::abs(t0), std::abs(other.t0), scale});
  return std::abs(t0 - other.t0) <= rel_tol * span;
}

Grid make_grid(std::size_t n, double t0, double dt) {
  if (n < 8) throw Error(ErrorKind::BadGrid, "need at least 8 samples, got " + std::to_string(n));
  if (!std::isfinite(t0) || !std::isfinite(dt) || !(dt > 0.0)) {
    throw Error(ErrorKind::BadGrid, "spacing must be finite and positive");
  }
  return Grid{n, t0, dt};
}

Grid centered_grid(std::size_t n, double dt) {
  return make_grid(n, -static_cast<double>(n / 2) * dt, dt);
}

SampledSignal::SampledSignal(Grid grid, std::vector<complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n) {
    throw Error(ErrorKind::GridMismatch, "sample count " + std::to_string(values_.size()) +
                                             " does not match grid size " + std::to_string(grid_.n));
  }
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorKind::NonFinite, "signal samples must be finite");
    }
  }
}

SampledSignal SampledSignal::zeros(const Grid& grid) {
  return SampledSignal(grid, std::vector<complex>(grid.n));
}

SampledSignal gaussian(const Grid& grid, double center, double width, double chirp_rate, double carrier) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw Error(ErrorKind::BadWidth, "gaussian width must be positive");
  }
  const double norm = std::pow(std::numbers::pi * width * width, -0.25);
  std::vector<complex> v(grid.n);
  for (std::size_t k = 0; k < grid.n; ++k) {
    const double x = grid.point(k) - center;
    const double amp = norm * std::exp(-x * x / (2.0 * width * width));
    v[k] = std::polar(amp, 0.5 * chirp_rate * x * x + carrier * x);
  }
  return SampledSignal(grid, std::move(v));
}

SampledSignal rect(const Grid& grid, double center, double half_width) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw Error(ErrorKind::BadWidth, "rect half-width must be positive");
  }
  std::vector<complex> v(grid.n);
  // Small slack so that lattice points exactly on the edge are included.
  const double edge = half_width * (1.0 + 1e-12);
  for (std::size_t k = 0; k < grid.n; ++k) {
    if (std::abs(grid.point(k) - center) <= edge) v[k] = 1.0;
  }
  return SampledSignal(grid, std::move(v));
}

double energy(std::span<const complex> values, double weight) {
  double sum = 0.0;
  for (const auto& v : values) sum += std::norm(v);
  return sum * weight;
}

SampledSignal zero_pad(const SampledSignal& s, std::size_t factor) {
  if (factor == 0) throw Error(ErrorKind::BadGrid, "padding factor must be at least 1");
  if (factor == 1) return s;
  const Grid& g = s.grid();
  const std::size_t offset = (factor - 1) * g.n / 2;
  std::vector<complex> v(g.n * factor);
  std::copy(s.values().begin(), s.values().end(), v.begin() + static_cast<long>(offset));
  const Grid padded = make_grid(v.size(), g.t0 - static_cast<double>(offset) * g.dt, g.dt);
  return SampledSignal(padded, std::move(v));
}

double energy(const SampledSignal& s) { return energy(s.values(), s.grid().dt); }

complex inner_product(const SampledSignal& s1, const SampledSignal& s2) {
  if (!s1.grid().matches(s2.grid())) throw Error(ErrorKind::GridMismatch, "inner product needs one grid");
  complex sum = 0.0;
  for (std::size_t k = 0; k < s1.size(); ++k) sum += std::conj(s1[k]) * s2[k];
  return sum * s1.grid().dt;
}

double relative_l2(std::span<const complex> x, std::span<const complex> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::GridMismatch, "relative_l2 needs equal lengths");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    num += std::norm(x[k] - y[k]);
    den += std::norm(y[k]);
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
  return std::sqrt(num / den);
}

bool decays_at_endpoints(std::span<const complex> values, double rel) {
  if (values.empty()) return true;
  double peak = 0.0;
  for (const auto& v : values) peak = std::max(peak, std::norm(v));
  if (peak == 0.0) return true;
  return std::norm(values.front()) <= rel * peak && std::norm(values.back()) <= rel * peak;
}

SampledSignal SignalSpec::generate(const Grid& grid) const {
  switch (kind) {
    case Kind::Gaussian: return gaussian(grid, center, width, chirp_rate, carrier);
    case Kind::Rect: return rect(grid, center, width);
  }
  return SampledSignal::zeros(grid);
}

std::string SignalSpec::to_string() const {
  std::ostringstream out;
  out.precision(17);
  if (kind == Kind::Rect) {
    out << "rect:" << center << ',' << width;
  } else {
    out << "gaussian:" << center << ',' << width << ',' << chirp_rate << ',' << carrier;
  }
  return out.str();
}

SignalSpec parse_signal_spec(std::string_view text) {
  const std::string_view t = detail::trim(text);
  const auto colon = t.find(':');
  const std::string_view name = colon == std::string_view::npos ? t : t.substr(0, colon);
  const std::vector<double> v =
      colon == std::string_view::npos ? std::vector<double>{} : detail::parse_doubles(t.substr(colon + 1));
  SignalSpec spec;
  if (name == "gaussian") {
    if (v.size() > 4) throw Error(ErrorKind::Parse, "gaussian takes center,width[,chirp[,carrier]]");
    spec.kind = SignalSpec::Kind::Gaussian;
    if (v.size() > 0) spec.center = v[0];
    if (v.size() > 1) spec.width = v[1];
    if (v.size() > 2) spec.chirp_rate = v[2];
    if (v.size() > 3) spec.carrier = v[3];
    if (!(spec.width > 0.0)) throw Error(ErrorKind::BadWidth, "gaussian width must be positive");
  } else if (name == "rect") {
    if (v.size() != 2) throw Error(ErrorKind::Parse, "rect takes center,half_width");
    spec.kind = SignalSpec::Kind::Rect;
    spec.center = v[0];
    spec.width = v[1];
    if (!(spec.width > 0.0)) throw Error(ErrorKind::BadWidth, "rect half-width must be positive");
  } else {
    throw Error(ErrorKind::Parse, "unknown signal preset '" + std::string(name) + "'");
  }
  return spec;
}

Grid parse_grid(std::string_view text) {
  const std::vector<double> v = detail::parse_doubles(text);
  if (v.size() != 3 || v[0] < 0 || v[0] != std::floor(v[0])) {
    throw Error(ErrorKind::Parse, "grid must be 'n,t0,dt'");
  }
  return make_grid(static_cast<std::size_t>(v[0]), v[1], v[2]);
}

}  // namespace canonical_tf
