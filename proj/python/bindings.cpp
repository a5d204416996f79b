#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cwkb/errors.hpp"
#include "cwkb/oracle.hpp"
#include "cwkb/potentials.hpp"
#include "cwkb/report.hpp"
#include "cwkb/tables.hpp"
#include "cwkb/wkb.hpp"

namespace py = pybind11;
using namespace cwkb;

namespace {

Method parse_method(const std::string& name) {
  if (name == "perturbative") return Method::Perturbative;
  if (name == "langer") return Method::Langer;
  if (name == "exact") return Method::Exact;
  throw std::invalid_argument("unknown method '" + name + "'");
}

TableId parse_table(const std::string& name) {
  const auto id = parse_table_id(name);
  if (!id) throw std::invalid_argument("unknown table '" + name + "'");
  return *id;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown format '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "WKB energies of spherically confined quantum systems";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<RegimeError>(m, "RegimeError", PyExc_RuntimeError);
  py::register_exception<InconsistentBracketError>(m, "InconsistentBracketError", PyExc_RuntimeError);
  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_RuntimeError);
  py::register_exception<NoEigenvalueError>(m, "NoEigenvalueError", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);

  py::class_<UnitConvention>(m, "UnitConvention")
      .def(py::init<double, double, double>(), py::arg("hbar") = 1.0, py::arg("mass") = 1.0,
           py::arg("coulomb_strength") = 1.0)
      .def_static("atomic", &UnitConvention::atomic)
      .def_static("rydberg", &UnitConvention::rydberg)
      .def_readwrite("hbar", &UnitConvention::hbar)
      .def_readwrite("mass", &UnitConvention::mass)
      .def_readwrite("coulomb_strength", &UnitConvention::coulomb_strength);

  py::class_<PotentialModel>(m, "PotentialModel")
      .def_static("harmonic_oscillator", &PotentialModel::harmonic_oscillator,
                  py::arg("units") = UnitConvention::atomic())
      .def_static("hydrogen", &PotentialModel::hydrogen, py::arg("units") = UnitConvention::rydberg())
      .def_static("hulthen", &PotentialModel::hulthen, py::arg("delta"), py::arg("z") = 1.0,
                  py::arg("units") = UnitConvention::atomic())
      .def_property_readonly("kind", [](const PotentialModel& p) { return to_string(p.kind()); })
      .def_property_readonly("units", &PotentialModel::units)
      .def("value", &PotentialModel::value, py::arg("r"))
      .def("derivative", &PotentialModel::derivative, py::arg("r"));

  py::class_<ConfinedSystem>(m, "ConfinedSystem")
      .def(py::init([](const PotentialModel& p, int l, double r0, bool langer) {
             return ConfinedSystem(p, l, r0, langer ? CentrifugalForm::Langer : CentrifugalForm::Perturbative);
           }),
           py::arg("potential"), py::arg("l"), py::arg("r0"), py::arg("langer") = false)
      .def_property_readonly("l", &ConfinedSystem::l)
      .def_property_readonly("r0", &ConfinedSystem::r0)
      .def("v_eff", &ConfinedSystem::v_eff, py::arg("r"));

  py::class_<TurningPoints>(m, "TurningPoints")
      .def_readonly("r1", &TurningPoints::r1)
      .def_readonly("r2", &TurningPoints::r2)
      .def_property_readonly("regime", [](const TurningPoints& t) { return to_string(t.regime); });
  m.def("turning_points", &turning_points, py::arg("system"), py::arg("energy"));

  py::class_<EnergyResult>(m, "EnergyResult")
      .def_readonly("energy", &EnergyResult::energy)
      .def_readonly("residual", &EnergyResult::residual)
      .def_readonly("warnings", &EnergyResult::warnings)
      .def_property_readonly("method", [](const EnergyResult& r) { return to_string(r.method); })
      .def_property_readonly("regime", [](const EnergyResult& r) { return to_string(r.regime); })
      .def_property_readonly("lambda1", [](const EnergyResult& r) { return r.diagnostics.lambda1; })
      .def_property_readonly("lambda2", [](const EnergyResult& r) { return r.diagnostics.lambda2; })
      .def_property_readonly("theta", [](const EnergyResult& r) { return r.diagnostics.theta; })
      .def_property_readonly("sigma_r0", [](const EnergyResult& r) { return r.diagnostics.sigma_r0; });

  m.def(
      "solve",
      [](const ConfinedSystem& s, int n_r, const std::string& method, int grid_points) {
        const QuantumNumbers qn{n_r, s.l()};
        const Method mth = parse_method(method);
        if (mth == Method::Exact) {
          NumerovConfig cfg;
          cfg.grid_points = grid_points;
          return solve_exact(s, qn, cfg);
        }
        return solve_energy(s, qn, mth);
      },
      py::arg("system"), py::arg("n_r") = 0, py::arg("method") = "perturbative",
      py::arg("grid_points") = NumerovConfig{}.grid_points,
      "Eigenvalue with n_r radial nodes by the 'perturbative', 'langer' or 'exact' method.");

  m.def(
      "wavefunction",
      [](const ConfinedSystem& s, int n_r, double energy, int samples) {
        const auto trace = build_wavefunction(s, {n_r, s.l()}, energy, samples);
        py::list out;
        for (const auto& p : trace.samples) out.append(py::make_tuple(p.r, p.psi, to_string(p.region)));
        return out;
      },
      py::arg("system"), py::arg("n_r"), py::arg("energy"), py::arg("samples") = 400,
      "List of (r, psi, region) samples of the piecewise WKB wavefunction.");

  m.def(
      "table",
      [](const std::string& id, const std::string& format) {
        return render(run_table(parse_table(id)), parse_format(format));
      },
      py::arg("id"), py::arg("format") = "csv", "Reproduce a published table as CSV or JSON text.");

  m.def(
      "published",
      [](const std::string& id) {
        py::list rows;
        for (const auto& r : table_spec(parse_table(id)).rows) {
          py::dict d;
          d["r0"] = r.r0;
          d["n_r"] = r.qn.n_r;
          d["l"] = r.qn.l;
          d["state"] = r.state;
          d["E"] = r.published_e;
          d["E_WKB"] = r.published_e_wkb;
          d["E_exact"] = r.published_exact;
          d["starred"] = r.starred();
          rows.append(d);
        }
        return rows;
      },
      py::arg("id"), "Published values of a table's computed columns.");
}
