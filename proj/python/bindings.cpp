#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcal/caloric.hpp"
#include "qcal/discord.hpp"
#include "qcal/error.hpp"
#include "qcal/output.hpp"
#include "qcal/scenario.hpp"
#include "qcal/sweep.hpp"
#include "qcal/thermal.hpp"
#include "qcal/validate.hpp"

namespace py = pybind11;
using namespace qcal;

namespace {

py::object g_error_type;

double py_entropy(const ParamHamiltonian& m, double lambda, double t) {
  return thermo_point(thermal_state(m, lambda, t)).entropy;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "qcal native core";
  mod.attr("__version__") = "0.1.0";

  // QcalError(message) with .code (e.g. "DegenerateVariance") and .field.
  g_error_type = py::reinterpret_borrow<py::object>(
      PyErr_NewException("qcal.QcalError", PyExc_RuntimeError, nullptr));
  mod.attr("QcalError") = g_error_type;
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = g_error_type(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      exc.attr("field") = e.field();
      PyErr_SetObject(g_error_type.ptr(), exc.ptr());
    }
  });

  py::class_<ParamHamiltonian>(mod, "ParamHamiltonian")
      .def_property_readonly("dimension", &ParamHamiltonian::dimension)
      .def_property_readonly("parameter_name", &ParamHamiltonian::parameter_name)
      .def_property_readonly("frozen_params", &ParamHamiltonian::frozen_params)
      .def_property_readonly("nominal_lambda", &ParamHamiltonian::nominal_lambda)
      .def("energies", [](const ParamHamiltonian& m, double lambda) {
        return hermitian_eigen(m.evaluate(lambda)).values;
      });

  mod.def("build_dimer", &build_dimer, py::arg("J"), py::arg("b"), py::arg("parameter"));
  mod.def("build_single_spin_zeeman", &build_single_spin_zeeman, py::arg("b") = 0.0);
  mod.def(
      "build_tabulated",
      [](std::vector<double> grid, std::vector<std::vector<double>> energies) {
        return build_tabulated(SpectrumTable{std::move(grid), std::move(energies)});
      },
      py::arg("lambda_grid"), py::arg("energies"));

  py::class_<ThermodynamicPoint>(mod, "ThermodynamicPoint")
      .def_readonly("temperature", &ThermodynamicPoint::temperature)
      .def_readonly("lambda_", &ThermodynamicPoint::lambda)
      .def_readonly("internal_energy", &ThermodynamicPoint::internal_energy)
      .def_readonly("entropy", &ThermodynamicPoint::entropy)
      .def_readonly("free_energy", &ThermodynamicPoint::free_energy)
      .def_readonly("specific_heat", &ThermodynamicPoint::specific_heat)
      .def_readonly("energy_variance", &ThermodynamicPoint::energy_variance)
      .def_readonly("generalized_force", &ThermodynamicPoint::generalized_force);

  mod.def(
      "thermo_point",
      [](const ParamHamiltonian& m, double lambda, double t) { return thermo_point(thermal_state(m, lambda, t)); },
      py::arg("model"), py::arg("lambda_"), py::arg("T"));
  mod.def(
      "populations",
      [](const ParamHamiltonian& m, double lambda, double t) { return thermal_state(m, lambda, t).populations; },
      py::arg("model"), py::arg("lambda_"), py::arg("T"));
  mod.def("entropy", &py_entropy, py::arg("model"), py::arg("lambda_"), py::arg("T"));
  mod.def("generalized_force", &generalized_force, py::arg("model"), py::arg("lambda_"), py::arg("T"));
  mod.def("maxwell_residual", &maxwell_residual, py::arg("model"), py::arg("lambda_"), py::arg("T"));
  mod.def(
      "process_decompose",
      [](const ParamHamiltonian& m, const std::vector<std::pair<double, double>>& path) {
        std::vector<PathPoint> pts;
        for (const auto& [l, t] : path) pts.push_back({l, t});
        const auto d = process_decompose(m, pts);
        return py::dict(py::arg("work") = d.work, py::arg("heat") = d.heat,
                        py::arg("energy_change") = d.energy_change);
      },
      py::arg("model"), py::arg("path"));

  py::class_<CaloricResult>(mod, "CaloricResult")
      .def_readonly("value", &CaloricResult::value)
      .def_readonly("lambda_i", &CaloricResult::lambda_i)
      .def_readonly("lambda_f", &CaloricResult::lambda_f)
      .def_readonly("T_start", &CaloricResult::T_start)
      .def_readonly("error_estimate", &CaloricResult::error_estimate)
      .def_readonly("refinement_levels", &CaloricResult::refinement_levels)
      .def_property_readonly("kind", [](const CaloricResult& r) { return std::string(to_string(r.kind)); })
      .def_property_readonly("method", [](const CaloricResult& r) { return std::string(to_string(r.method)); })
      .def_property_readonly("trajectory", [](const CaloricResult& r) {
        std::vector<std::pair<double, double>> out;
        for (const auto& p : r.trajectory) out.emplace_back(p.lambda, p.temperature);
        return out;
      })
      .def("__repr__", [](const CaloricResult& r) {
        return "<CaloricResult " + std::string(to_string(r.kind)) + " " + std::to_string(r.value) + " (" +
               std::string(to_string(r.method)) + ")>";
      });

  mod.def("isothermal_entropy_change", &isothermal_entropy_change, py::arg("model"), py::arg("lambda_i"),
          py::arg("lambda_f"), py::arg("T"));
  mod.def("isothermal_entropy_change_direct", &isothermal_entropy_change_direct, py::arg("model"),
          py::arg("lambda_i"), py::arg("lambda_f"), py::arg("T"));
  mod.def("adiabatic_temperature_change", &adiabatic_temperature_change, py::arg("model"),
          py::arg("lambda_i"), py::arg("lambda_f"), py::arg("T_start"));
  mod.def("adiabatic_temperature_change_matching", &adiabatic_temperature_change_matching,
          py::arg("model"), py::arg("lambda_i"), py::arg("lambda_f"), py::arg("T_start"));
  mod.def(
      "classical_adiabatic_temperature_change",
      [](const ParamHamiltonian& m, double a0, double a1, double a3, double bi, double bf, double t) {
        return classical_adiabatic_temperature_change(m, LatticeHeatSpec{a0, a1, a3}, bi, bf, t);
      },
      py::arg("model"), py::arg("a0"), py::arg("a1"), py::arg("a3"), py::arg("b_i"), py::arg("b_f"),
      py::arg("T_start"));

  py::class_<CorrelationRecord>(mod, "CorrelationRecord")
      .def_readonly("J", &CorrelationRecord::J)
      .def_readonly("T", &CorrelationRecord::T)
      .def_readonly("c_x", &CorrelationRecord::c_x)
      .def_readonly("c_y", &CorrelationRecord::c_y)
      .def_readonly("c_z", &CorrelationRecord::c_z)
      .def_readonly("discord", &CorrelationRecord::discord);
  mod.def("pair_correlation", &pair_correlation, py::arg("J"), py::arg("T"));
  mod.def("discord_from_correlation", &discord_from_correlation, py::arg("record"));
  mod.def("discord_from_susceptibility", &discord_from_susceptibility, py::arg("chi"), py::arg("T"));
  mod.def(
      "zero_field_susceptibility",
      [](const ParamHamiltonian& m, double t) { return zero_field_susceptibility(m, t); }, py::arg("model"),
      py::arg("T"));
  mod.def("entropy_change_from_discord", &entropy_change_from_discord, py::arg("J_i"), py::arg("J_f"),
          py::arg("T"));

  // Scenarios: parsed and run from JSON text; curves come back as plain dicts.
  mod.def("normalize_scenario", [](const std::string& text) { return serialize_scenario(parse_scenario(text)); },
          py::arg("text"));
  mod.def(
      "run_scenario",
      [](const std::string& text, int threads) {
        const Scenario s = parse_scenario(text);
        CurveSet curves;
        {
          py::gil_scoped_release release;
          curves = run_sweep(s, default_sweep_grid(s), threads > 0 ? threads : configured_threads());
        }
        py::list out;
        for (const auto& c : curves.curves) {
          py::list pts;
          for (const auto& p : c.points) pts.append(py::make_tuple(p.abscissa, p.value, p.error_estimate));
          out.append(py::dict(py::arg("name") = c.name, py::arg("abscissa_unit") = c.abscissa_unit,
                              py::arg("value_unit") = c.value_unit, py::arg("points") = pts,
                              py::arg("csv") = format_csv(c)));
        }
        return out;
      },
      py::arg("text"), py::arg("threads") = 0);

  mod.def(
      "validate",
      [](bool quick) {
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (const auto& r : run_validation(quick)) out.emplace_back(r.name, r.passed, r.detail);
        return out;
      },
      py::arg("quick") = true);
}
