#include "canonical_tf/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "canonical_tf/errors.hpp"
#include "parse_util.hpp"

namespace canonical_tf::io {

using nlohmann::json;

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw Error(ErrorKind::Parse, "format must be csv or json: '" + std::string(text) + "'");
}

Format format_for_path(const std::string& path) {
  const std::string ext = ".json";
  return path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0 ? Format::Json
                                                                                                  : Format::Csv;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

// JSON has no NaN; undefined entries become null.
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, "cannot open '" + path + "' for writing");
  return out;
}

Grid grid_from_samples(const std::vector<double>& t) {
  if (t.size() < 2) throw Error(ErrorKind::Parse, "signal needs at least two samples");
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (std::abs((t[k] - t[k - 1]) - dt) > 1e-9 * std::abs(dt)) {
      throw Error(ErrorKind::Parse, "sample spacing is not uniform at row " + std::to_string(k + 1));
    }
  }
  try {
    return make_grid(t.size(), t.front(), dt);
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

}  // namespace

void write_signal_csv(std::ostream& out, const SampledSignal& s, std::string_view axis) {
  out << axis << ",re,im\n";
  for (std::size_t k = 0; k < s.size(); ++k) {
    out << format_number(s.grid().point(k)) << ',' << format_number(s[k].real()) << ','
        << format_number(s[k].imag()) << '\n';
  }
}

void write_signal_json(std::ostream& out, const SampledSignal& s) {
  json re = json::array(), im = json::array();
  for (const auto& v : s.values()) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  json j = {{"n", s.grid().n}, {"t0", s.grid().t0}, {"dt", s.grid().dt}, {"re", re}, {"im", im}};
  out << j.dump(2) << '\n';
}

SampledSignal read_signal_csv(std::istream& in) {
  std::string line;
  std::vector<double> t;
  std::vector<complex> v;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split(line, ',');
    if (row == 1 && !fields.empty()) {
      // A header row starts with a non-number.
      try {
        detail::parse_plain_double(fields[0]);
      } catch (const Error&) {
        continue;
      }
    }
    if (fields.size() != 3) {
      throw Error(ErrorKind::Parse, "row " + std::to_string(row) + ": expected 3 columns");
    }
    double x[3];
    for (int c = 0; c < 3; ++c) {
      try {
        x[c] = detail::parse_plain_double(fields[static_cast<std::size_t>(c)]);
      } catch (const Error&) {
        throw Error(ErrorKind::Parse, "row " + std::to_string(row) + ": bad number '" +
                                          std::string(fields[static_cast<std::size_t>(c)]) + "'");
      }
    }
    t.push_back(x[0]);
    v.emplace_back(x[1], x[2]);
  }
  const Grid grid = grid_from_samples(t);
  try {
    return SampledSignal(grid, std::move(v));
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

SampledSignal read_signal_json(std::istream& in) {
  try {
    const json j = json::parse(in);
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != im.size()) throw Error(ErrorKind::Parse, "re and im lengths differ");
    std::vector<complex> v(re.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = {re[k], im[k]};
    const Grid grid = make_grid(v.size(), j.at("t0").get<double>(), j.at("dt").get<double>());
    return SampledSignal(grid, std::move(v));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

SampledSignal read_signal_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  return format_for_path(path) == Format::Json ? read_signal_json(in) : read_signal_csv(in);
}

void write_signal_file(const std::string& path, const SampledSignal& s, Format format, std::string_view axis) {
  std::ofstream out = open_out(path);
  if (format == Format::Json) {
    write_signal_json(out, s);
  } else {
    write_signal_csv(out, s, axis);
  }
}

void write_map_csv(std::ostream& out, const TimeFreqMap& map) {
  out << "t,u,re,im\n";
  for (std::size_t i = 0; i < map.t_grid.n; ++i) {
    const std::string t = format_number(map.t_grid.point(i));
    for (std::size_t j = 0; j < map.u_grid.n; ++j) {
      const complex v = map.at(i, j);
      out << t << ',' << format_number(map.u_grid.point(j)) << ',' << format_number(v.real()) << ','
          << format_number(v.imag()) << '\n';
    }
  }
}

void write_map_json(std::ostream& out, const TimeFreqMap& map) {
  json re = json::array(), im = json::array();
  for (const auto& v : map.values) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  json j = {{"t_grid", to_json(map.t_grid)},
            {"u_grid", to_json(map.u_grid)},
            {"matrix", map.matrix.to_string()},
            {"layout", "row-major in t"},
            {"re", re},
            {"im", im}};
  out << j.dump(2) << '\n';
}

void write_spectrogram_csv(std::ostream& out, const TimeFreqMap& map) {
  out << "t,u,magnitude_squared\n";
  for (std::size_t i = 0; i < map.t_grid.n; ++i) {
    const std::string t = format_number(map.t_grid.point(i));
    for (std::size_t j = 0; j < map.u_grid.n; ++j) {
      out << t << ',' << format_number(map.u_grid.point(j)) << ',' << format_number(std::norm(map.at(i, j)))
          << '\n';
    }
  }
}

json to_json(const Grid& g) { return {{"n", g.n}, {"t0", g.t0}, {"dt", g.dt}}; }

json to_json(const MomentReport& time, const MomentReport& freq) {
  return {{"time", {{"mean", time.mean}, {"spread", time.spread}, {"energy", time.energy}}},
          {"freq", {{"mean", freq.mean}, {"spread", freq.spread}, {"energy", freq.energy}}}};
}

json to_json(const StlctMomentReport& r) {
  return {{"mean_t", r.mean_t},
          {"spread_t", r.spread_t},
          {"mean_u", r.mean_u},
          {"spread_u", r.spread_u},
          {"total_energy", r.total_energy}};
}

namespace {

json relation(const Relation& r) { return {{"lhs", r.lhs}, {"rhs", r.rhs}, {"deviation", r.deviation()}}; }

json moment(const MomentReport& m) { return {{"mean", m.mean}, {"spread", m.spread}, {"energy", m.energy}}; }

}  // namespace

json to_json(const AdditivityReport& r) {
  return {{"map", to_json(r.map)},
          {"signal_time", moment(r.signal_time)},
          {"window_time", moment(r.window_time)},
          {"signal_freq", moment(r.signal_freq)},
          {"window_freq", moment(r.window_freq)},
          {"mean_t_plus", relation(r.mean_t_plus)},
          {"mean_t_minus", relation(r.mean_t_minus)},
          {"spread_t", relation(r.spread_t)},
          {"mean_u", relation(r.mean_u)},
          {"spread_u", relation(r.spread_u)},
          {"mean_t_sign", to_string(r.sign)}};
}

json to_json(const BoundReport& r) {
  json j = {{"theorem", to_string(r.theorem)},
            {"lhs", number(r.lhs)},
            {"rhs", number(r.rhs)},
            {"gap", number(r.gap)},
            {"relative_slack", number(r.relative_slack)},
            {"passed", r.passed},
            {"context", r.context}};
  if (r.lhs_alternate) j["lhs_alternate"] = number(*r.lhs_alternate);
  return j;
}

json to_json(const Thm3Report& r) {
  return {{"t", r.t},
          {"u", r.u},
          {"sigma2_u_given_t", r.sigma2_u_given_t},
          {"sigma2_t_given_u", r.sigma2_t_given_u},
          {"lhs", r.lhs},
          {"rhs_paper", r.rhs_paper},
          {"rhs_commutator_consistent", r.rhs_commutator_consistent},
          {"anticommutator_expectation", {{"re", r.anticommutator_expectation.real()},
                                          {"im", r.anticommutator_expectation.imag()}}},
          {"local_energy", r.local_energy},
          {"spectral_energy", r.spectral_energy},
          {"passed_commutator", r.passed_commutator},
          {"passed_printed", r.passed_printed}};
}

json to_json(const BatteryResult& r, const BatteryConfig& config) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json j = {{"theorem", to_string(e.theorem)},
              {"status", to_string(e.status)},
              {"signal", config.signals[e.signal_index].to_string()},
              {"window", config.windows[e.window_index].to_string()},
              {"matrix", config.matrices[e.matrix_index].name}};
    if (e.matrix2_index) j["matrix2"] = config.matrices[*e.matrix2_index].name;
    if (e.bound) j["report"] = to_json(*e.bound);
    if (!e.thm3.empty()) {
      json cells = json::array();
      for (const auto& c : e.thm3) cells.push_back(to_json(c));
      j["cells"] = cells;
    }
    if (e.status == EntryStatus::Errored) {
      j["error"] = e.error;
      j["numerical"] = e.numerical_error;
    }
    entries.push_back(j);
  }
  json summary = json::array();
  for (const auto& s : r.summary) {
    json j = {{"theorem", to_string(s.theorem)},
              {"passed", s.passed},
              {"violated", s.violated},
              {"errored", s.errored},
              {"min_slack", number(s.min_slack)}};
    if (s.theorem == Theorem::Three) {
      j["printed_constant_held"] = s.printed_constant_held;
      j["printed_constant_failed"] = s.printed_constant_failed;
    }
    summary.push_back(j);
  }
  return {{"grid", to_json(config.grid)}, {"entries", entries}, {"summary", summary}};
}

void write_conditional_csv(std::ostream& out, const ConditionalMoments& m, bool frequency_side) {
  out << (frequency_side ? "t,mean_u,var_u,Q\n" : "u,mean_t,var_t,P\n");
  for (std::size_t k = 0; k < m.axis_values.size(); ++k) {
    out << format_number(m.axis_values[k]) << ',' << format_number(m.means[k]) << ','
        << format_number(m.variances[k]) << ',' << format_number(m.weights[k]) << '\n';
  }
}

BatteryConfig parse_battery_config(const json& j) {
  BatteryConfig c;
  try {
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      c.grid = make_grid(g.at("n").get<std::size_t>(), g.at("t0").get<double>(), g.at("dt").get<double>());
    }
    for (const auto& s : j.value("signals", json::array())) c.signals.push_back(parse_signal_spec(s.get<std::string>()));
    for (const auto& s : j.value("windows", json::array())) c.windows.push_back(parse_signal_spec(s.get<std::string>()));
    for (const auto& s : j.value("matrices", json::array())) {
      const auto name = s.get<std::string>();
      c.matrices.push_back({name, parse_matrix(name)});
    }
    for (const auto& p : j.value("pairs", json::array())) {
      const auto a = p.at(0).get<std::size_t>();
      const auto b = p.at(1).get<std::size_t>();
      if (a >= c.matrices.size() || b >= c.matrices.size()) {
        throw Error(ErrorKind::Parse, "matrix pair index out of range");
      }
      c.pairs.emplace_back(a, b);
    }
    if (j.contains("theorems")) {
      c.theorems.clear();
      for (const auto& t : j.at("theorems")) {
        c.theorems.push_back(parse_theorem(t.is_string() ? t.get<std::string>() : std::to_string(t.get<int>())));
      }
    }
    c.d_prime = j.value("d_prime", 0.0);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("battery config: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, std::string("battery config: ") + e.what());
  }
  return c;
}

BatteryConfig read_battery_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  try {
    return parse_battery_config(json::parse(in));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("battery config: ") + e.what());
  }
}

void print_battery_table(std::ostream& out, const BatteryResult& r, const BatteryConfig& config) {
  char line[256];
  std::snprintf(line, sizeof line, "%-8s %8s %9s %8s %14s\n", "theorem", "passed", "violated", "errored",
                "min_slack");
  out << line;
  for (const auto& s : r.summary) {
    std::snprintf(line, sizeof line, "%-8s %8zu %9zu %8zu %14.6g\n", to_string(s.theorem), s.passed, s.violated,
                  s.errored, s.min_slack);
    out << line;
  }
  for (const auto& s : r.summary) {
    if (s.theorem != Theorem::Three) continue;
    out << "theorem 3, commutator constant (i b/2): "
        << (s.violated == 0 && s.errored == 0 ? "held on every cell" : "did not hold everywhere") << '\n';
    out << "theorem 3, printed constant (i/2): held on " << s.printed_constant_held << " cells, failed on "
        << s.printed_constant_failed << '\n';
  }
  for (const auto& e : r.entries) {
    if (e.status == EntryStatus::Passed) continue;
    out << to_string(e.status) << ": theorem " << to_string(e.theorem) << " f="
        << config.signals[e.signal_index].to_string() << " g=" << config.windows[e.window_index].to_string()
        << " A=" << config.matrices[e.matrix_index].name;
    if (e.matrix2_index) out << " B=" << config.matrices[*e.matrix2_index].name;
    if (!e.error.empty()) out << " (" << e.error << ')';
    out << '\n';
  }
}

}  // namespace canonical_tf::io
