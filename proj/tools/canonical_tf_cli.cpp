// canonical-tf: generate signals, run transforms and check the uncertainty
// bounds from the command line. Exit codes: 0 ok, 1 bound violated,
// 2 bad invocation or input, 3 numerical failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "canonical_tf/errors.hpp"
#include "canonical_tf/io.hpp"
#include "canonical_tf/lct.hpp"
#include "canonical_tf/moments.hpp"
#include "canonical_tf/param_matrix.hpp"
#include "canonical_tf/signal.hpp"
#include "canonical_tf/stlct.hpp"
#include "canonical_tf/uncertainty.hpp"

namespace ctf = canonical_tf;
namespace io = canonical_tf::io;

namespace {

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kNumerical = 3 };

struct Options {
  std::string input;
  std::string output;
  std::string signal;
  std::string grid = "1024,-8,0.015625";
  std::string window;
  std::string matrix = "fourier";
  std::string matrix2;
  std::string method = "fast";
  std::string route = "time";
  std::string theorem;
  std::string format;
  std::string config;
  std::string conditional;
  double d_prime = 0.0;
  std::optional<double> t;
  std::optional<double> u;
};

io::Format output_format(const Options& o) {
  if (!o.format.empty()) return io::parse_format(o.format);
  return o.output.empty() ? io::Format::Csv : io::format_for_path(o.output);
}

// Writes through `emit` to --out, or to stdout when no path was given.
template <typename F>
void write_output(const Options& o, F&& emit) {
  if (o.output.empty() || o.output == "-") {
    emit(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw ctf::Error(ctf::ErrorKind::Parse, "cannot open '" + o.output + "' for writing");
  emit(out);
}

ctf::SampledSignal load_signal(const Options& o) {
  if (!o.input.empty()) return io::read_signal_file(o.input);
  if (o.signal.empty()) throw ctf::Error(ctf::ErrorKind::Parse, "give an input file or --signal");
  return ctf::parse_signal_spec(o.signal).generate(ctf::parse_grid(o.grid));
}

ctf::SampledSignal load_window(const Options& o, const ctf::Grid& grid) {
  if (o.window.empty()) throw ctf::Error(ctf::ErrorKind::Parse, "--window is required");
  return ctf::parse_signal_spec(o.window).generate(grid);
}

void emit_signal(const Options& o, const ctf::SampledSignal& s, std::string_view axis) {
  const io::Format format = output_format(o);
  write_output(o, [&](std::ostream& out) {
    if (format == io::Format::Json) {
      io::write_signal_json(out, s);
    } else {
      io::write_signal_csv(out, s, axis);
    }
  });
}

void emit_json(const Options& o, const nlohmann::json& j) {
  write_output(o, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

int cmd_gen(const Options& o) {
  if (o.signal.empty()) throw ctf::Error(ctf::ErrorKind::Parse, "--signal is required");
  emit_signal(o, ctf::parse_signal_spec(o.signal).generate(ctf::parse_grid(o.grid)), "t");
  return kOk;
}

int cmd_lct(const Options& o) {
  const ctf::ParamMatrix A = ctf::parse_matrix(o.matrix);
  const ctf::SampledSignal f = load_signal(o);
  if (o.method == "bzero") {
    emit_signal(o, ctf::lct_b_zero(A, f), "u");
    return kOk;
  }
  A.require_nonzero_b();
  if (o.method == "fast") {
    emit_signal(o, ctf::lct_fast(A, f), "u");
  } else {
    ctf::Diagnostics diag;
    const ctf::SampledSignal F = ctf::lct_direct(A, f, ctf::induced_grid(A, f.grid()), &diag);
    for (const auto& m : diag.messages) std::cerr << m << '\n';
    emit_signal(o, F, "u");
  }
  return kOk;
}

ctf::TimeFreqMap compute_map(const Options& o, const std::string& route) {
  const ctf::ParamMatrix A = ctf::parse_matrix(o.matrix);
  A.require_nonzero_b();
  const ctf::SampledSignal f = load_signal(o);
  const ctf::SampledSignal g = load_window(o, f.grid());
  const ctf::Grid t_grid = ctf::centered_grid(f.grid().n, f.grid().dt);
  const ctf::Grid u_grid = ctf::induced_grid(A, f.grid());
  if (route == "time") return ctf::stlct(f, g, A, t_grid, u_grid);
  if (route == "spectral") return ctf::stlct_spectral(f, g, A, o.d_prime, t_grid, u_grid);
  return ctf::sftt(f, g, A, t_grid, u_grid, u_grid);
}

int cmd_stlct(const Options& o) {
  const ctf::TimeFreqMap map = compute_map(o, o.route);
  const io::Format format = output_format(o);
  write_output(o, [&](std::ostream& out) {
    if (format == io::Format::Json) {
      io::write_map_json(out, map);
    } else {
      io::write_map_csv(out, map);
    }
  });
  return kOk;
}

int cmd_spectrogram(const Options& o) {
  const ctf::TimeFreqMap map = compute_map(o, o.route);
  write_output(o, [&](std::ostream& out) { io::write_spectrogram_csv(out, map); });
  return kOk;
}

int cmd_moments(const Options& o) {
  const ctf::ParamMatrix A = ctf::parse_matrix(o.matrix);
  const ctf::SampledSignal f = load_signal(o);
  if (o.window.empty()) {
    emit_json(o, io::to_json(ctf::time_moments(f), ctf::freq_moments(A, f)));
    return kOk;
  }
  const ctf::SampledSignal g = load_window(o, f.grid());
  if (o.conditional.empty()) {
    emit_json(o, io::to_json(ctf::lemma2_check(f, g, A, o.d_prime)));
    return kOk;
  }
  const ctf::Grid t_grid = ctf::centered_grid(f.grid().n, f.grid().dt);
  const ctf::Grid u_grid = ctf::induced_grid(A, f.grid());
  if (o.conditional == "freq") {
    const auto Q = ctf::local_energies(f, g, t_grid);
    const auto m = ctf::conditional_freq_moments(ctf::stlct(f, g, A, t_grid, u_grid), Q);
    write_output(o, [&](std::ostream& out) { io::write_conditional_csv(out, m, true); });
  } else {
    const auto P = ctf::local_spectrum_energies(f, g, A, u_grid);
    const auto m = ctf::conditional_time_moments(ctf::sftt(f, g, A, t_grid, u_grid, u_grid), P);
    write_output(o, [&](std::ostream& out) { io::write_conditional_csv(out, m, false); });
  }
  return kOk;
}

int run_battery(const Options& o) {
  ctf::BatteryConfig config = o.config.empty() ? ctf::BatteryConfig::default_config()
                                               : io::read_battery_config(o.config);
  if (!o.theorem.empty()) config.theorems = {ctf::parse_theorem(o.theorem)};
  const ctf::BatteryResult result = ctf::run_battery(config);
  const nlohmann::json report = io::to_json(result, config);
  if (o.output.empty() || o.output == "-") {
    std::cout << report.dump(2) << '\n';
    io::print_battery_table(std::cerr, result, config);
  } else {
    emit_json(o, report);
    io::print_battery_table(std::cout, result, config);
  }
  if (result.any_violation()) return kViolation;
  if (result.any_errored()) return kNumerical;
  return kOk;
}

int cmd_verify(const Options& o) {
  if (o.signal.empty() && o.input.empty()) return run_battery(o);
  if (o.theorem.empty()) throw ctf::Error(ctf::ErrorKind::Parse, "--theorem is required with --signal");
  const ctf::Theorem theorem = ctf::parse_theorem(o.theorem);
  const ctf::ParamMatrix A = ctf::parse_matrix(o.matrix);
  const ctf::SampledSignal f = load_signal(o);

  if (theorem == ctf::Theorem::Stern) {
    const ctf::BoundReport r = ctf::stern_check(f, A);
    emit_json(o, io::to_json(r));
    return r.passed ? kOk : kViolation;
  }
  const ctf::SampledSignal g = load_window(o, f.grid());
  ctf::require_resolved(f, g, A, o.d_prime);
  switch (theorem) {
    case ctf::Theorem::One: {
      const ctf::BoundReport r = ctf::theorem1_check(f, g, A, o.d_prime);
      emit_json(o, io::to_json(r));
      return r.passed ? kOk : kViolation;
    }
    case ctf::Theorem::Two: {
      if (o.matrix2.empty()) throw ctf::Error(ctf::ErrorKind::Parse, "--matrix2 is required for theorem 2");
      const ctf::ParamMatrix B = ctf::parse_matrix(o.matrix2);
      ctf::require_resolved(f, g, B, o.d_prime);
      const ctf::BoundReport r = ctf::theorem2_check(f, g, A, B, o.d_prime);
      emit_json(o, io::to_json(r));
      return r.passed ? kOk : kViolation;
    }
    default: {
      if (!o.t || !o.u) throw ctf::Error(ctf::ErrorKind::Parse, "--t and --u are required for theorem 3");
      const ctf::Thm3Report r = ctf::theorem3_check(f, g, A, *o.t, *o.u);
      emit_json(o, io::to_json(r));
      return r.passed_commutator ? kOk : kViolation;
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear canonical and short-time transforms with uncertainty-bound checks", "canonical-tf"};
  app.require_subcommand(1);
  Options o;

  auto add_signal = [&](CLI::App* c, bool positional) {
    if (positional) c->add_option("input", o.input, "Input signal file (CSV t,re,im or JSON)");
    c->add_option("--signal", o.signal, "Generated signal, e.g. gaussian:0,1 or rect:0,0.5");
    c->add_option("--grid", o.grid, "Sampling grid n,t0,dt for --signal")->capture_default_str();
  };
  auto add_output = [&](CLI::App* c, bool positional) {
    if (positional) c->add_option("output", o.output, "Output file (stdout when omitted)");
    c->add_option("--out", o.output, "Output file (stdout when omitted)");
    c->add_option("--format", o.format, "csv or json (default from the output extension)")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_matrix = [&](CLI::App* c) {
    c->add_option("--matrix", o.matrix, "a,b,c,d or fourier, identity, frft:<alpha>")->capture_default_str();
  };
  auto add_window = [&](CLI::App* c) {
    c->add_option("--window", o.window, "Window, e.g. gaussian:0,1");
    c->add_option("--dprime", o.d_prime, "Free entry of the window-side matrix")->capture_default_str();
  };

  auto* gen = app.add_subcommand("gen", "Sample a generated signal");
  add_signal(gen, false);
  add_output(gen, true);

  auto* lct = app.add_subcommand("lct", "Linear canonical transform of a signal");
  add_signal(lct, true);
  add_output(lct, true);
  add_matrix(lct);
  lct->add_option("--method", o.method, "fast, direct or bzero")
      ->check(CLI::IsMember({"fast", "direct", "bzero"}))
      ->capture_default_str();

  auto* stlct = app.add_subcommand("stlct", "Short-time transform samples t,u,re,im");
  auto* spec = app.add_subcommand("spectrogram", "Squared magnitude t,u,magnitude_squared");
  for (auto* c : {stlct, spec}) {
    add_signal(c, true);
    add_output(c, true);
    add_matrix(c);
    add_window(c);
    c->add_option("--route", o.route, "time, spectral or sftt")
        ->check(CLI::IsMember({"time", "spectral", "sftt"}))
        ->capture_default_str();
  }

  auto* moments = app.add_subcommand("moments", "Moments, additivity and conditional moments (JSON/CSV)");
  add_signal(moments, true);
  add_output(moments, false);
  add_matrix(moments);
  add_window(moments);
  moments->add_option("--conditional", o.conditional, "freq: <u>_t per t; time: <t>_u per u")
      ->check(CLI::IsMember({"freq", "time"}));

  auto* verify = app.add_subcommand("verify", "Check one bound, or run the battery when no signal is given");
  add_signal(verify, false);
  add_output(verify, false);
  add_matrix(verify);
  add_window(verify);
  verify->add_option("--matrix2", o.matrix2, "Second matrix for theorem 2");
  verify->add_option("--theorem", o.theorem, "stern, 1, 2 or 3")->check(CLI::IsMember({"stern", "1", "2", "3"}));
  verify->add_option("--t", o.t, "Time for theorem 3");
  verify->add_option("--u", o.u, "Frequency for theorem 3");
  verify->add_option("--config", o.config, "Battery config JSON");

  auto* battery = app.add_subcommand("battery", "Run a battery config (default battery when omitted)");
  add_output(battery, false);
  battery->add_option("--config", o.config, "Battery config JSON");
  battery->add_option("--theorem", o.theorem, "Restrict to one theorem")
      ->check(CLI::IsMember({"stern", "1", "2", "3"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(o);
    if (lct->parsed()) return cmd_lct(o);
    if (stlct->parsed()) return cmd_stlct(o);
    if (spec->parsed()) return cmd_spectrogram(o);
    if (moments->parsed()) return cmd_moments(o);
    if (verify->parsed()) return cmd_verify(o);
    return run_battery(o);
  } catch (const ctf::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ctf::is_numerical(e.kind()) ? kNumerical : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
