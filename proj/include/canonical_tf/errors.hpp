#pragma once

#include <stdexcept>
#include <string>

namespace canonical_tf {

enum class ErrorKind {
  NonFinite,
  NonUnimodular,
  BZero,
  DegenerateMatrix,
  BadGrid,
  BadWidth,
  GridMismatch,
  OffGridShift,
  Undersampled,
  ZeroEnergy,
  ZeroLocalEnergy,
  ZeroSpectralEnergy,
  Unresolved,
  Parse,
};

const char* to_string(ErrorKind kind);

// Numerical failures map to CLI exit code 3; everything else is a usage or
// input problem (exit code 2).
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace canonical_tf
