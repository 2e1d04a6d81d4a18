#pragma once

#include <array>
#include <string>
#include <string_view>

namespace canonical_tf {

inline constexpr double kUnimodularTolerance = 1e-9;
// Below this |b| the transform is the chirp-multiplication branch.
inline constexpr double kBZeroThreshold = 1e-8;

/// Unimodular real 2x2 matrix (a, b; c, d) parameterizing a linear canonical
/// transform. Instances are always valid: the only ways to obtain one are the
/// checked factory functions below.
class ParamMatrix {
 public:
  /// Throws Error(NonFinite) on NaN/Inf entries and Error(NonUnimodular) when
  /// |ad - bc - 1| exceeds kUnimodularTolerance.
  static ParamMatrix validate(double a, double b, double c, double d);

  /// (cos alpha, sin alpha, -sin alpha, cos alpha): the fractional Fourier
  /// transform of angle alpha. alpha = pi/2 is the ordinary Fourier transform.
  static ParamMatrix fractional(double alpha);

  static ParamMatrix fourier() { return validate(0.0, 1.0, -1.0, 0.0); }
  static ParamMatrix identity() { return validate(1.0, 0.0, 0.0, 1.0); }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  double d() const noexcept { return d_; }
  double det() const noexcept { return a_ * d_ - b_ * c_; }
  std::array<double, 4> entries() const noexcept { return {a_, b_, c_, d_}; }

  /// True when |b| < kBZeroThreshold.
  bool b_zero() const noexcept;

  /// (d, -b, -c, a).
  ParamMatrix inverse() const noexcept;

  /// Window-domain matrix (0, b, -1/b, d'). Throws Error(BZero) if b_zero().
  ParamMatrix window_matrix(double d_prime = 0.0) const;

  /// Throws Error(BZero) if b_zero().
  void require_nonzero_b() const;

  std::string to_string() const;

  friend bool operator==(const ParamMatrix&, const ParamMatrix&) = default;

 private:
  ParamMatrix(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {}

  double a_;
  double b_;
  double c_;
  double d_;
};

/// Parses "a,b,c,d" or one of the presets "fourier", "identity", "frft:<alpha>".
/// Throws Error(Parse) on malformed text, plus the validate() errors.
ParamMatrix parse_matrix(std::string_view text);

}  // namespace canonical_tf
