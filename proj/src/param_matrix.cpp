#include "canonical_tf/param_matrix.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "canonical_tf/errors.hpp"
#include "parse_util.hpp"

namespace canonical_tf {

ParamMatrix ParamMatrix::validate(double a, double b, double c, double d) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d)) {
    throw Error(ErrorKind::NonFinite, "matrix entries must be finite");
  }
  const double det = a * d - b * c;
  if (std::abs(det - 1.0) > kUnimodularTolerance) {
    std::ostringstream msg;
    msg << "ad - bc = " << det << " (expected 1)";
    throw Error(ErrorKind::NonUnimodular, msg.str());
  }
  return ParamMatrix(a, b, c, d);
}

ParamMatrix ParamMatrix::fractional(double alpha) {
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  return validate(c, s, -s, c);
}

bool ParamMatrix::b_zero() const noexcept { return std::abs(b_) < kBZeroThreshold; }

ParamMatrix ParamMatrix::inverse() const noexcept { return ParamMatrix(d_, -b_, -c_, a_); }

ParamMatrix ParamMatrix::window_matrix(double d_prime) const {
  require_nonzero_b();
  if (!std::isfinite(d_prime)) throw Error(ErrorKind::NonFinite, "d' must be finite");
  // det = 0 * d' - b * (-1/b) = 1 for every d'.
  return ParamMatrix(0.0, b_, -1.0 / b_, d_prime);
}

void ParamMatrix::require_nonzero_b() const {
  if (b_zero()) {
    throw Error(ErrorKind::BZero, "b=0: chirp-multiplication branch; use --method bzero");
  }
}

std::string ParamMatrix::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << a_ << ',' << b_ << ',' << c_ << ',' << d_;
  return out.str();
}

ParamMatrix parse_matrix(std::string_view text) {
  const std::string_view t = detail::trim(text);
  if (t == "fourier") return ParamMatrix::fourier();
  if (t == "identity") return ParamMatrix::identity();
  if (t.starts_with("frft:")) {
    return ParamMatrix::fractional(detail::parse_double(t.substr(5)));
  }
  const std::vector<double> v = detail::parse_doubles(t);
  if (v.size() != 4) {
    throw Error(ErrorKind::Parse, "matrix must be 'a,b,c,d', 'fourier', 'identity' or 'frft:<alpha>': " +
                                      std::string(text));
  }
  return ParamMatrix::validate(v[0], v[1], v[2], v[3]);
}

}  // namespace canonical_tf
