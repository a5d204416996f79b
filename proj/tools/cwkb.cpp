#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cwkb/report.hpp"
#include "cwkb/tables.hpp"

namespace {

using namespace cwkb;

struct SystemFlags {
  std::string potential = "ho";
  std::optional<double> delta;
  double z = 1.0;
  std::optional<std::string> units;
  int l = 1;
  int n_r = 0;
};

struct CommonFlags {
  std::string format = "csv";
  std::string out;
  int grid_points = NumerovConfig{}.grid_points;
  std::optional<double> tol;
};

const std::map<std::string, Method> kMethodNames = {
    {"perturbative", Method::Perturbative}, {"langer", Method::Langer}, {"exact", Method::Exact}};

void add_system_flags(CLI::App* cmd, SystemFlags& f) {
  cmd->add_option("--potential", f.potential, "Potential family")
      ->check(CLI::IsMember({"ho", "hydrogen", "hulthen"}))
      ->capture_default_str();
  cmd->add_option("--delta", f.delta, "Hulthen screening parameter")->check(CLI::PositiveNumber);
  cmd->add_option("--z", f.z, "Nuclear charge (hydrogen, Hulthen)")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--units", f.units, "Unit convention (default: rydberg for hydrogen, atomic otherwise)")
      ->check(CLI::IsMember({"atomic", "rydberg"}));
  cmd->add_option("--l", f.l, "Angular momentum quantum number")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--nr", f.n_r, "Radial quantum number")->check(CLI::NonNegativeNumber)->capture_default_str();
}

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  cmd->add_option("--out", f.out, "Output file (default: standard output)");
  cmd->add_option("--grid-points", f.grid_points, "Numerov grid points for the exact oracle")
      ->check(CLI::Range(2000, 100000000))
      ->capture_default_str();
  cmd->add_option("--tol", f.tol, "Relative quadrature tolerance")->check(CLI::PositiveNumber);
}

CLI::Option* add_method_flag(CLI::App* cmd, std::vector<Method>& methods, const char* help) {
  return cmd->add_option("--method", methods, help)->transform(CLI::CheckedTransformer(kMethodNames, CLI::ignore_case));
}

PotentialModel make_potential(const SystemFlags& f) {
  const std::string units_name = f.units.value_or(f.potential == "hydrogen" ? "rydberg" : "atomic");
  UnitConvention units = units_name == "rydberg" ? UnitConvention::rydberg() : UnitConvention::atomic();
  if (f.potential == "ho") {
    if (f.delta) throw CLI::ValidationError("--delta", "only applies to --potential hulthen");
    return PotentialModel::harmonic_oscillator(units);
  }
  if (f.potential == "hydrogen") {
    if (f.delta) throw CLI::ValidationError("--delta", "only applies to --potential hulthen");
    units.coulomb_strength *= f.z;
    return PotentialModel::hydrogen(units);
  }
  if (!f.delta) throw CLI::ValidationError("--delta", "is required for --potential hulthen");
  return PotentialModel::hulthen(*f.delta, f.z, units);
}

RunSettings make_settings(const CommonFlags& f) {
  RunSettings s;
  s.numerov.grid_points = f.grid_points;
  if (f.tol) s.solve.quadrature.rel_tol = *f.tol;
  return s;
}

void emit(const Report& report, const CommonFlags& f) {
  const std::string text = render(report, f.format == "json" ? OutputFormat::Json : OutputFormat::Csv);
  if (f.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(f.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + f.out + " for writing");
    file << text;
  }
}

void print_counts(const Report& report) {
  for (const auto& [name, n] : report.counts) std::cerr << name << ": " << n << '\n';
}

std::vector<TableId> parse_ids(const std::vector<std::string>& names) {
  std::vector<TableId> ids;
  for (const auto& n : names) {
    const auto id = parse_table_id(n);
    if (!id) throw CLI::ValidationError("--id", "unknown table '" + n + "' (expected I, II, III, IV or V)");
    ids.push_back(*id);
  }
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energies of spherically confined quantum systems from WKB quantization"};
  app.require_subcommand(1);

  SystemFlags sys;
  CommonFlags common;
  std::vector<double> r0s;
  std::vector<Method> methods;
  std::vector<std::string> table_ids;
  int samples = WavefunctionRequest{}.samples;

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues for a list of wall radii and methods");
  add_system_flags(spectrum, sys);
  add_common_flags(spectrum, common);
  spectrum->add_option("--r0", r0s, "Wall radii")->required()->expected(1, -1)->check(CLI::PositiveNumber);
  add_method_flag(spectrum, methods, "perturbative, langer or exact (repeatable)")->expected(1, -1);

  auto* table = app.add_subcommand("table", "Reproduce one of the published tables I-V");
  add_common_flags(table, common);
  table->add_option("--id", table_ids, "Table id (I, II, III, IV or V)")->required()->expected(1);

  auto* wave = app.add_subcommand("wavefunction", "Piecewise WKB wavefunction at the converged energy");
  add_system_flags(wave, sys);
  add_common_flags(wave, common);
  double wave_r0 = 0.0;
  wave->add_option("--r0", wave_r0, "Wall radius")->required()->check(CLI::PositiveNumber);
  add_method_flag(wave, methods, "perturbative or langer")->expected(1);
  wave->add_option("--samples", samples, "Number of radial samples")->check(CLI::Range(2, 100000000))->capture_default_str();

  auto* compare = app.add_subcommand("compare", "WKB methods against the exact oracle");
  add_system_flags(compare, sys);
  add_common_flags(compare, common);
  compare->add_option("--r0", r0s, "Wall radii")->expected(1, -1)->check(CLI::PositiveNumber);
  compare->add_option("--id", table_ids, "Compare over the rows of published tables (repeatable)")->expected(1, -1);
  add_method_flag(compare, methods, "WKB methods to compare (default: perturbative langer)")->expected(1, -1);

  try {
    app.parse(argc, argv);
    const RunSettings settings = make_settings(common);

    Report report;
    if (*spectrum) {
      SpectrumRequest req{make_potential(sys), {sys.n_r, sys.l}, r0s, methods};
      if (req.methods.empty()) req.methods = {Method::Perturbative};
      report = run_spectrum(req, settings);
    } else if (*table) {
      report = run_table(parse_ids(table_ids).front(), settings);
    } else if (*wave) {
      WavefunctionRequest req{make_potential(sys), {sys.n_r, sys.l}, wave_r0,
                              methods.empty() ? Method::Perturbative : methods.front(), samples};
      if (req.method == Method::Exact)
        throw CLI::ValidationError("--method", "wavefunction traces need perturbative or langer");
      try {
        report = run_wavefunction(req, settings);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
      }
    } else {
      if (methods.empty()) methods = {Method::Perturbative, Method::Langer};
      for (Method m : methods)
        if (m == Method::Exact) throw CLI::ValidationError("--method", "exact is the reference, not a compared method");
      if (!table_ids.empty() && !r0s.empty())
        throw CLI::ValidationError("--id", "give either --id or --r0, not both");
      if (!table_ids.empty()) {
        report = run_compare_tables(parse_ids(table_ids), methods, settings);
      } else {
        if (r0s.empty()) throw CLI::ValidationError("--r0", "at least one wall radius (or --id) is required");
        report = run_compare({make_potential(sys), {sys.n_r, sys.l}, r0s, methods}, settings);
      }
      print_counts(report);
    }
    emit(report, common);
    if (!report.all_converged) {
      std::cerr << "error: at least one requested solve did not converge\n";
      return 1;
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
