#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "sbiem/errors.hpp"
#include "sbiem/friction.hpp"
#include "sbiem/grid.hpp"
#include "sbiem/io.hpp"
#include "sbiem/kernels.hpp"
#include "sbiem/oracles.hpp"
#include "sbiem/simulator.hpp"
#include "sbiem/specfun.hpp"
#include "sbiem/verify.hpp"

namespace py = pybind11;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::dict snapshot_dict(const sbiem::Snapshot& s) {
  py::dict d;
  d["time"] = s.time;
  d["step"] = s.step;
  d["x"] = to_array(s.x);
  d["slip"] = to_array(s.slip);
  d["slip_rate"] = to_array(s.slip_rate);
  d["tau"] = to_array(s.tau);
  return d;
}

sbiem::SimConfig config_from(const std::string& json_text) {
  return sbiem::io::parse_config(nlohmann::json::parse(json_text.empty() ? "{}" : json_text));
}

py::dict run_simulation(const std::string& json_text) {
  const auto config = config_from(json_text);
  sbiem::RunResult result;
  {
    py::gil_scoped_release release;
    result = sbiem::run(config);
  }
  py::list snapshots;
  for (const auto& s : result.snapshots) snapshots.append(snapshot_dict(s));
  py::list probes;
  for (const auto& p : result.probes) {
    py::dict d;
    d["position"] = p.position;
    d["element"] = p.element;
    d["t"] = to_array(p.times);
    d["slip_rate"] = to_array(p.slip_rate);
    probes.append(d);
  }
  py::dict counters;
  counters["steps"] = result.counters.steps;
  counters["multiply_adds"] = result.counters.multiply_adds;
  counters["wall_seconds"] = result.counters.wall_seconds;
  counters["max_dgamma"] = result.counters.max_dgamma;

  py::dict out;
  out["snapshots"] = snapshots;
  out["probes"] = probes;
  out["counters"] = counters;
  out["warnings"] = result.warnings;
  out["config_hash"] = sbiem::io::config_hash(config);
  return out;
}

}  // namespace

PYBIND11_MODULE(_sbiem, m) {
  m.doc() = "Spectral boundary integral simulator for antiplane interface slip";

  // Translators run newest first, so the base class goes in before its subclasses.
  const auto base = py::register_exception<sbiem::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<sbiem::ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<sbiem::DomainError>(m, "DomainError", base.ptr());
  py::register_exception<sbiem::DivergenceError>(m, "DivergenceError", base.ptr());

  m.def("bessel_j0", &sbiem::specfun::bessel_j0, py::arg("x"));
  m.def("bessel_j1", &sbiem::specfun::bessel_j1, py::arg("x"));
  m.def("struve_h0", &sbiem::specfun::struve_h0, py::arg("x"));
  m.def("struve_h1", &sbiem::specfun::struve_h1, py::arg("x"));
  m.def(
      "laplace_transform_numeric",
      [](const std::function<double(double)>& f, double p, double upper) {
        return sbiem::specfun::laplace_transform_numeric(f, p, upper);
      },
      py::arg("f"), py::arg("p"), py::arg("upper"));

  py::class_<sbiem::Material>(m, "Material")
      .def_static("from_density_speed", &sbiem::Material::from_density_speed, py::arg("rho"), py::arg("cs"))
      .def_static("from_modulus_density", &sbiem::Material::from_modulus_density, py::arg("mu"), py::arg("rho"))
      .def_readonly("mu", &sbiem::Material::mu)
      .def_readonly("rho", &sbiem::Material::rho)
      .def_readonly("cs", &sbiem::Material::cs);

  py::class_<sbiem::MaterialPair>(m, "MaterialPair")
      .def_static("identical", &sbiem::MaterialPair::identical, py::arg("material"))
      .def_static("from_ratios", &sbiem::MaterialPair::from_ratios, py::arg("top"), py::arg("speed_ratio"),
                  py::arg("modulus_ratio"))
      .def_readonly("top", &sbiem::MaterialPair::top)
      .def_readonly("bottom", &sbiem::MaterialPair::bottom);

  m.def("kernel_identical", &sbiem::kernel_identical, py::arg("gamma"));
  m.def("kernel_bimaterial", &sbiem::kernel_bimaterial, py::arg("pair"), py::arg("k_abs"), py::arg("t"));
  m.def("eta", &sbiem::eta, py::arg("pair"));
  m.def("kernel_hat_identical", &sbiem::kernel_hat_identical, py::arg("k_abs"), py::arg("cs"), py::arg("p"));

  m.def(
      "forward",
      [](double length, const std::vector<double>& field) {
        const sbiem::Grid grid(length, field.size());
        return sbiem::SpectralTransform(grid).forward(field);
      },
      py::arg("length"), py::arg("field"), "Fourier-series coefficients of a real field in transform ordering");
  m.def(
      "inverse",
      [](double length, const std::vector<std::complex<double>>& amps) {
        const sbiem::Grid grid(length, amps.size());
        return sbiem::SpectralTransform(grid).inverse(amps);
      },
      py::arg("length"), py::arg("amps"));
  m.def(
      "k_values",
      [](double length, std::size_t n) { return sbiem::Grid(length, n).k_values(); }, py::arg("length"),
      py::arg("n"));

  m.def(
      "strength",
      [](double tau_s, double tau_r, double delta_c, double slip) {
        return sbiem::strength({tau_s, tau_r, delta_c}, slip);
      },
      py::arg("tau_s"), py::arg("tau_r"), py::arg("delta_c"), py::arg("slip"));
  m.def(
      "solve_interface",
      [](double f, double tau0, double tau_f, double radiation_coeff, double slip, double delta_c, double tau_r) {
        const auto s = sbiem::solve_interface(f, tau0, tau_f, radiation_coeff, slip, delta_c, tau_r);
        return py::make_tuple(s.slip_rate, s.tau);
      },
      py::arg("f"), py::arg("tau0"), py::arg("tau_f"), py::arg("radiation_coeff"), py::arg("slip"),
      py::arg("delta_c"), py::arg("tau_r"));

  m.def("modal_analytic", &sbiem::oracles::modal_analytic, py::arg("gamma"));
  m.def("modal_closed_form", &sbiem::oracles::modal_closed_form, py::arg("gamma"));
  m.def(
      "modal_volterra",
      [](double dgamma, double gamma_max, double delay_gamma) {
        const auto run = sbiem::oracles::modal_volterra(dgamma, gamma_max, delay_gamma);
        return py::make_tuple(to_array(run.gamma), to_array(run.r));
      },
      py::arg("dgamma"), py::arg("gamma_max"), py::arg("delay_gamma") = 0.0);
  m.def("impulse_analytic", &sbiem::oracles::impulse_analytic, py::arg("X"), py::arg("t"), py::arg("mu"),
        py::arg("cs"));

  m.def("default_config", [] { return sbiem::io::to_json(sbiem::SimConfig::table1()).dump(); },
        "Reference rupture configuration as JSON text");
  m.def(
      "validate_config", [](const std::string& text) { return sbiem::io::to_json(config_from(text)).dump(); },
      py::arg("config_json"), "Parse and validate a configuration; returns the completed JSON");
  m.def("run", &run_simulation, py::arg("config_json") = std::string("{}"),
        "Run a scenario; returns snapshots, probe series, counters and warnings");
  m.def("read_snapshot", [](const std::string& path) { return snapshot_dict(sbiem::io::read_snapshot(path)); },
        py::arg("path"));

  m.attr("__version__") = sbiem::io::kVersion;
}
