#pragma once

#include <span>
#include <vector>

#include "canonical_tf/param_matrix.hpp"
#include "canonical_tf/signal.hpp"
#include "canonical_tf/stlct.hpp"

namespace canonical_tf {

struct StlctMomentReport {
  double mean_t = 0.0;
  double spread_t = 0.0;
  double mean_u = 0.0;
  double spread_u = 0.0;
  double total_energy = 0.0;
};

/// Per-slice conditional moments of a spectrogram. Entries whose weight is
/// below kMinEnergy are marked undefined and hold NaN.
struct ConditionalMoments {
  std::vector<double> axis_values;
  std::vector<double> means;
  std::vector<double> variances;
  std::vector<double> weights;
  std::vector<bool> defined;
};

struct Relation {
  double lhs = 0.0;
  double rhs = 0.0;
  double deviation() const noexcept;
};

enum class MeanTimeSign { Minus, Plus, Both, Neither };
const char* to_string(MeanTimeSign s);

/// Both sides of each additivity identity. mean_t is checked against
/// t_f + t_g and against t_f - t_g; `sign` says which one the map agrees with.
struct AdditivityReport {
  Relation mean_t_plus;   // t_S vs t_f + t_g
  Relation mean_t_minus;  // t_S vs t_f - t_g
  Relation spread_t;      // T_S^2 vs T_f^2 + T_g^2
  Relation mean_u;        // u_S vs u_{A,f} - u_{A1,g}
  Relation spread_u;      // F_S^2 vs F_{A,f}^2 + F_{A1,g}^2
  MeanTimeSign sign = MeanTimeSign::Neither;
  MomentReport signal_time, window_time, signal_freq, window_freq;
  StlctMomentReport map;
};

/// Tolerance used by lemma2_check to classify the mean-time sign.
inline constexpr double kAdditivityTolerance = 1e-3;

MomentReport time_moments(const SampledSignal& s);
/// Moments of |L_A s|^2 on its induced grid.
MomentReport freq_moments(const ParamMatrix& A, const SampledSignal& s);

StlctMomentReport stlct_moments(const TimeFreqMap& map);

AdditivityReport lemma2_check(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A,
                              double d_prime = 0.0);

/// <u>_t and sigma^2_{u|t} of |S(t,.)|^2, normalized by Q (one entry per t row).
ConditionalMoments conditional_freq_moments(const TimeFreqMap& map, std::span<const double> Q);

/// <t>_u and sigma^2_{t|u} of |s(.,u)|^2, normalized by P (one entry per u column).
ConditionalMoments conditional_time_moments(const TimeFreqMap& map_sftt, std::span<const double> P);

/// Q(t) for every row of t_grid.
std::vector<double> local_energies(const SampledSignal& f, const SampledSignal& g, const Grid& t_grid);
/// P(u) for every point of u_grid.
std::vector<double> local_spectrum_energies(const SampledSignal& f, const SampledSignal& g,
                                            const ParamMatrix& A, const Grid& u_grid);

/// Fourth-order central difference with zero padding outside the grid.
std::vector<complex> central_derivative(std::span<const complex> x, double dt);

/// Applies (a tau + (b/i) d/dtau - shift) to x on grid.
std::vector<complex> apply_frequency_operator(const ParamMatrix& A, const Grid& grid,
                                              std::span<const complex> x, double shift);

/// sigma^2_{u|t} = (1/Q) int |(a tau + (b/i) d/dtau - <u>_t) f_t|^2 dtau.
/// Throws Error(ZeroLocalEnergy) when Q(t) < kMinEnergy.
double sigma_u_given_t_derivative_form(const SampledSignal& f, const SampledSignal& g, const ParamMatrix& A,
                                       double t, double mean_u_t);

}  // namespace canonical_tf
