#include "canonical_tf/errors.hpp"

namespace canonical_tf {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NonUnimodular: return "NonUnimodular";
    case ErrorKind::BZero: return "BZero";
    case ErrorKind::DegenerateMatrix: return "DegenerateMatrix";
    case ErrorKind::BadGrid: return "BadGrid";
    case ErrorKind::BadWidth: return "BadWidth";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::OffGridShift: return "OffGridShift";
    case ErrorKind::Undersampled: return "Undersampled";
    case ErrorKind::ZeroEnergy: return "ZeroEnergy";
    case ErrorKind::ZeroLocalEnergy: return "ZeroLocalEnergy";
    case ErrorKind::ZeroSpectralEnergy: return "ZeroSpectralEnergy";
    case ErrorKind::Unresolved: return "Unresolved";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

bool is_numerical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BZero:
    case ErrorKind::DegenerateMatrix:
    case ErrorKind::Undersampled:
    case ErrorKind::ZeroEnergy:
    case ErrorKind::ZeroLocalEnergy:
    case ErrorKind::ZeroSpectralEnergy:
    case ErrorKind::Unresolved:
      return true;
    default:
      return false;
  }
}

}  // namespace canonical_tf
