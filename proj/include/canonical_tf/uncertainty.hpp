#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "canonical_tf/moments.hpp"
#include "canonical_tf/param_matrix.hpp"
#include "canonical_tf/signal.hpp"

namespace canonical_tf {

// lhs >= rhs * (1 - kBoundSlack) counts as satisfied.
inline constexpr double kBoundSlack = 1e-6;

enum class Theorem { Stern, One, Two, Three };
const char* to_string(Theorem t);
Theorem parse_theorem(const std::string& text);

struct BoundReport {
  Theorem theorem = Theorem::One;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double relative_slack = 0.0;
  bool passed = false;
  /// Second evaluation of lhs where one exists (Theorem 1: from 1-D moments).
  std::optional<double> lhs_alternate;
  std::string context;
};

BoundReport make_bound_report(Theorem theorem, double lhs, double rhs, std::string context);

struct Thm3Report {
  double t = 0.0;
  double u = 0.0;
  double sigma2_u_given_t = 0.0;
  double sigma2_t_given_u = 0.0;
  double lhs = 0.0;
  /// |<f_t, (1/2 [A,B]_+ + i/2) f_t>|^2 / (Q(t) P(u)).
  double rhs_paper = 0.0;
  /// Same with i b/2, the commutator of the operators as written.
  double rhs_commutator_consistent = 0.0;
  complex anticommutator_expectation;
  double local_energy = 0.0;
  double spectral_energy = 0.0;
  bool passed_commutator = false;
  bool passed_printed = false;
};

BoundReport stern_check(const SampledSignal& f, const ParamMatrix& A);
BoundReport theorem1_check(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A,
                           double d_prime = 0.0);
BoundReport theorem2_check(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A,
                           const ParamMatrix& B, double d_prime = 0.0);

/// Evaluates the conditional-deviation bound at one (t, u). t lies on the dt
/// lattice of f and u on the induced grid. Throws Error(ZeroLocalEnergy) or
/// Error(ZeroSpectralEnergy) when Q(t) or P(u) is below kMinEnergy.
Thm3Report theorem3_check(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A, double t,
                          double u);

/// theorem3_check on the side x side cells with the largest Q(t) P(u).
std::vector<Thm3Report> theorem3_subgrid(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A,
                                         std::size_t side = 5);

struct NamedMatrix {
  std::string name;
  ParamMatrix matrix;
};

struct BatteryConfig {
  Grid grid = centered_grid(1024, 16.0 / 1024.0);
  std::vector<SignalSpec> signals;
  std::vector<SignalSpec> windows;
  std::vector<NamedMatrix> matrices;
  /// Index pairs into `matrices` for Theorem 2; empty means (i, i+1 mod m).
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<Theorem> theorems = {Theorem::One, Theorem::Two};
  double d_prime = 0.0;

  static BatteryConfig default_config();
};

enum class EntryStatus { Passed, Violated, Errored };
const char* to_string(EntryStatus s);

struct BatteryEntry {
  Theorem theorem = Theorem::One;
  std::size_t signal_index = 0;
  std::size_t window_index = 0;
  std::size_t matrix_index = 0;
  std::optional<std::size_t> matrix2_index;
  EntryStatus status = EntryStatus::Errored;
  std::optional<BoundReport> bound;
  std::vector<Thm3Report> thm3;
  std::string error;
  bool numerical_error = false;
};

struct TheoremSummary {
  Theorem theorem = Theorem::One;
  std::size_t passed = 0;
  std::size_t violated = 0;
  std::size_t errored = 0;
  double min_slack = 0.0;
  /// Theorem 3 only: cells where the printed constant also held / failed.
  std::size_t printed_constant_held = 0;
  std::size_t printed_constant_failed = 0;
};

struct BatteryResult {
  std::vector<BatteryEntry> entries;
  std::vector<TheoremSummary> summary;

  bool all_passed() const;
  bool any_violation() const;
  bool any_errored() const;
};

/// Checks that f, g and their transforms decay at the grid ends so a bound
/// failure can be trusted. Throws Error(Unresolved) otherwise.
void require_resolved(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A, double d_prime);

/// Signals x windows x matrices x theorems, in config order. Individual
/// failures are recorded and never abort the batch.
BatteryResult run_battery(const BatteryConfig& config);

}  // namespace canonical_tf
