#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "canonical_tf/errors.hpp"
#include "canonical_tf/io.hpp"
#include "canonical_tf/lct.hpp"
#include "canonical_tf/moments.hpp"
#include "canonical_tf/param_matrix.hpp"
#include "canonical_tf/signal.hpp"
#include "canonical_tf/stlct.hpp"
#include "canonical_tf/uncertainty.hpp"

namespace py = pybind11;
namespace ctf = canonical_tf;

namespace {

using ComplexArray = py::array_t<ctf::complex, py::array::c_style | py::array::forcecast>;

ComplexArray to_array(std::span<const ctf::complex> v) {
  ComplexArray out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

ctf::SampledSignal make_signal(const ctf::Grid& grid, const ComplexArray& values) {
  if (values.ndim() != 1) throw ctf::Error(ctf::ErrorKind::Parse, "values must be one-dimensional");
  return ctf::SampledSignal(grid, std::vector<ctf::complex>(values.data(), values.data() + values.size()));
}

ComplexArray map_values(const ctf::TimeFreqMap& S) {
  ComplexArray out({static_cast<py::ssize_t>(S.t_grid.n), static_cast<py::ssize_t>(S.u_grid.n)});
  std::copy(S.values.begin(), S.values.end(), out.mutable_data());
  return out;
}

// Reports are small; JSON is the one schema shared with the CLI.
py::object as_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Linear canonical and short-time linear canonical transforms, moments and uncertainty checks.";

  static py::exception<ctf::Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ctf::Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error)(e.what());
      exc.attr("kind") = ctf::to_string(e.kind());
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<ctf::Grid>(m, "Grid")
      .def(py::init(&ctf::make_grid), py::arg("n"), py::arg("t0"), py::arg("dt"))
      .def_static("centered", &ctf::centered_grid, py::arg("n"), py::arg("dt"))
      .def_readonly("n", &ctf::Grid::n)
      .def_readonly("t0", &ctf::Grid::t0)
      .def_readonly("dt", &ctf::Grid::dt)
      .def("points", [](const ctf::Grid& g) { return to_array(g.points()); })
      .def("__eq__", [](const ctf::Grid& a, const ctf::Grid& b) { return a == b; })
      .def("__repr__", [](const ctf::Grid& g) {
        return "Grid(n=" + std::to_string(g.n) + ", t0=" + ctf::io::format_number(g.t0) +
               ", dt=" + ctf::io::format_number(g.dt) + ")";
      });

  py::class_<ctf::ParamMatrix>(m, "ParamMatrix")
      .def(py::init(&ctf::ParamMatrix::validate), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"))
      .def_static("parse", &ctf::parse_matrix, py::arg("text"))
      .def_static("fractional", &ctf::ParamMatrix::fractional, py::arg("alpha"))
      .def_static("fourier", &ctf::ParamMatrix::fourier)
      .def_static("identity", &ctf::ParamMatrix::identity)
      .def_property_readonly("a", &ctf::ParamMatrix::a)
      .def_property_readonly("b", &ctf::ParamMatrix::b)
      .def_property_readonly("c", &ctf::ParamMatrix::c)
      .def_property_readonly("d", &ctf::ParamMatrix::d)
      .def("inverse", &ctf::ParamMatrix::inverse)
      .def("window_matrix", &ctf::ParamMatrix::window_matrix, py::arg("d_prime") = 0.0)
      .def("__eq__", [](const ctf::ParamMatrix& a, const ctf::ParamMatrix& b) { return a == b; })
      .def("__repr__", [](const ctf::ParamMatrix& A) { return "ParamMatrix(" + A.to_string() + ")"; });

  py::class_<ctf::SampledSignal>(m, "Signal")
      .def(py::init(&make_signal), py::arg("grid"), py::arg("values"))
      .def_static("parse", [](const std::string& spec, const ctf::Grid& grid) {
        return ctf::parse_signal_spec(spec).generate(grid);
      }, py::arg("spec"), py::arg("grid"))
      .def_property_readonly("grid", &ctf::SampledSignal::grid)
      .def_property_readonly("values", [](const ctf::SampledSignal& s) { return to_array(s.values()); })
      .def("points", [](const ctf::SampledSignal& s) { return to_array(s.grid().points()); })
      .def("energy", py::overload_cast<const ctf::SampledSignal&>(&ctf::energy))
      .def("__len__", &ctf::SampledSignal::size);

  m.def("gaussian", &ctf::gaussian, py::arg("grid"), py::arg("center") = 0.0, py::arg("width") = 1.0,
        py::arg("chirp_rate") = 0.0, py::arg("carrier") = 0.0);
  m.def("rect", &ctf::rect, py::arg("grid"), py::arg("center"), py::arg("half_width"));
  m.def("zero_pad", &ctf::zero_pad, py::arg("signal"), py::arg("factor"));
  m.def("inner_product", &ctf::inner_product, py::arg("f"), py::arg("g"));

  m.def("kernel", &ctf::kernel, py::arg("matrix"), py::arg("t"), py::arg("u"));
  m.def("induced_grid", &ctf::induced_grid, py::arg("matrix"), py::arg("grid"));
  m.def(
      "lct",
      [](const ctf::ParamMatrix& A, const ctf::SampledSignal& f, const std::string& method) {
        if (method == "fast") return ctf::lct_fast(A, f);
        if (method == "direct") return ctf::lct_direct(A, f, ctf::induced_grid(A, f.grid()));
        if (method == "bzero") return ctf::lct_b_zero(A, f);
        throw ctf::Error(ctf::ErrorKind::Parse, "method must be fast, direct or bzero");
      },
      py::arg("matrix"), py::arg("signal"), py::arg("method") = "fast");
  m.def("ilct", &ctf::ilct, py::arg("matrix"), py::arg("spectrum"), py::arg("out_grid"));

  m.def(
      "stlct",
      [](const ctf::SampledSignal& f, const ctf::SampledSignal& g, const ctf::ParamMatrix& A,
         const std::string& route, double d_prime) {
        const ctf::Grid tg = ctf::centered_grid(f.grid().n, f.grid().dt);
        const ctf::Grid ug = ctf::induced_grid(A, f.grid());
        ctf::TimeFreqMap S = route == "time"       ? ctf::stlct(f, g, A, tg, ug)
                             : route == "spectral" ? ctf::stlct_spectral(f, g, A, d_prime, tg, ug)
                             : route == "sftt"     ? ctf::sftt(f, g, A, tg, ug, ug)
                                                   : throw ctf::Error(ctf::ErrorKind::Parse,
                                                                      "route must be time, spectral or sftt");
        return py::make_tuple(to_array(tg.points()), to_array(ug.points()), map_values(S));
      },
      py::arg("signal"), py::arg("window"), py::arg("matrix"), py::arg("route") = "time", py::arg("d_prime") = 0.0,
      "Returns (t, u, S) with S[i, j] at (t[i], u[j]) on the full induced lattice.");
  m.def("local_energy", &ctf::local_energy, py::arg("signal"), py::arg("window"), py::arg("t"));

  m.def("moments", [](const ctf::ParamMatrix& A, const ctf::SampledSignal& f) {
    return as_python(ctf::io::to_json(ctf::time_moments(f), ctf::freq_moments(A, f)));
  }, py::arg("matrix"), py::arg("signal"));
  m.def("additivity", [](const ctf::SampledSignal& f, const ctf::SampledSignal& g, const ctf::ParamMatrix& A,
                         double d_prime) { return as_python(ctf::io::to_json(ctf::lemma2_check(f, g, A, d_prime))); },
        py::arg("signal"), py::arg("window"), py::arg("matrix"), py::arg("d_prime") = 0.0);

  m.def("stern_check", [](const ctf::SampledSignal& f, const ctf::ParamMatrix& A) {
    return as_python(ctf::io::to_json(ctf::stern_check(f, A)));
  }, py::arg("signal"), py::arg("matrix"));
  m.def("theorem1_check", [](const ctf::SampledSignal& f, const ctf::SampledSignal& g, const ctf::ParamMatrix& A,
                             double d_prime) { return as_python(ctf::io::to_json(ctf::theorem1_check(f, g, A, d_prime))); },
        py::arg("signal"), py::arg("window"), py::arg("matrix"), py::arg("d_prime") = 0.0);
  m.def("theorem2_check",
        [](const ctf::SampledSignal& f, const ctf::SampledSignal& g, const ctf::ParamMatrix& A,
           const ctf::ParamMatrix& B, double d_prime) {
          return as_python(ctf::io::to_json(ctf::theorem2_check(f, g, A, B, d_prime)));
        },
        py::arg("signal"), py::arg("window"), py::arg("matrix"), py::arg("matrix2"), py::arg("d_prime") = 0.0);
  m.def("theorem3_check", [](const ctf::SampledSignal& f, const ctf::SampledSignal& g, const ctf::ParamMatrix& A,
                             double t, double u) { return as_python(ctf::io::to_json(ctf::theorem3_check(f, g, A, t, u))); },
        py::arg("signal"), py::arg("window"), py::arg("matrix"), py::arg("t"), py::arg("u"));

  m.def(
      "run_battery",
      [](py::object config) {
        ctf::BatteryConfig c = config.is_none()
                                   ? ctf::BatteryConfig::default_config()
                                   : ctf::io::parse_battery_config(nlohmann::json::parse(
                                         py::module_::import("json").attr("dumps")(config).cast<std::string>()));
        ctf::BatteryResult r;
        {
          py::gil_scoped_release release;
          r = ctf::run_battery(c);
        }
        return as_python(ctf::io::to_json(r, c));
      },
      py::arg("config") = py::none(), "Runs a battery given as a dict (the JSON config schema); None runs the default.");
}
