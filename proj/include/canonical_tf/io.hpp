#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "canonical_tf/moments.hpp"
#include "canonical_tf/signal.hpp"
#include "canonical_tf/stlct.hpp"
#include "canonical_tf/uncertainty.hpp"

namespace canonical_tf::io {

enum class Format { Csv, Json };
Format parse_format(std::string_view text);
/// Guess from the file extension; CSV unless it ends in ".json".
Format format_for_path(const std::string& path);

/// 17 significant digits, '.' separator.
std::string format_number(double x);

// Signals: CSV "t,re,im" (axis name configurable) or JSON {"t0","dt","re","im"}.
void write_signal_csv(std::ostream& out, const SampledSignal& s, std::string_view axis = "t");
void write_signal_json(std::ostream& out, const SampledSignal& s);
/// Throws Error(Parse) on malformed input or non-uniform spacing (1e-9 relative).
SampledSignal read_signal_csv(std::istream& in);
SampledSignal read_signal_json(std::istream& in);
SampledSignal read_signal_file(const std::string& path);
void write_signal_file(const std::string& path, const SampledSignal& s, Format format, std::string_view axis = "t");

// Maps: CSV "t,u,re,im", JSON with both grids and flat arrays, spectrogram CSV
// "t,u,magnitude_squared".
void write_map_csv(std::ostream& out, const TimeFreqMap& map);
void write_map_json(std::ostream& out, const TimeFreqMap& map);
void write_spectrogram_csv(std::ostream& out, const TimeFreqMap& map);

nlohmann::json to_json(const Grid& g);
nlohmann::json to_json(const MomentReport& time, const MomentReport& freq);
nlohmann::json to_json(const StlctMomentReport& r);
nlohmann::json to_json(const AdditivityReport& r);
nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const Thm3Report& r);
nlohmann::json to_json(const BatteryResult& r, const BatteryConfig& config);

/// CSV "t,mean_u,var_u,Q" (or "u,mean_t,var_t,P" for the time-conditional side).
void write_conditional_csv(std::ostream& out, const ConditionalMoments& m, bool frequency_side);

/// Battery config JSON:
/// {"grid": {"n","t0","dt"}, "signals": ["gaussian:0,1", ...], "windows": [...],
///  "matrices": ["fourier", "1,2,0.5,2", ...], "pairs": [[0,1], ...],
///  "theorems": ["1","2","3","stern"], "d_prime": 0}
BatteryConfig parse_battery_config(const nlohmann::json& j);
BatteryConfig read_battery_config(const std::string& path);

/// Fixed-width summary table of a battery run.
void print_battery_table(std::ostream& out, const BatteryResult& r, const BatteryConfig& config);

}  // namespace canonical_tf::io
