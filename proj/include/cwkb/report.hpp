#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cwkb/oracle.hpp"
#include "cwkb/potentials.hpp"
#include "cwkb/tables.hpp"
#include "cwkb/wkb.hpp"

namespace cwkb {

/// How a column is written as CSV. JSON always carries full precision.
struct Column {
  enum class Kind { Fixed, Scientific, Shortest, Integer, Text };
  std::string name;
  Kind kind = Kind::Text;
  int precision = 0;  ///< decimals for Fixed, significant digits for Scientific
};

using Cell = std::variant<std::monostate, double, long long, std::string>;

/// A rectangular result with optional comment lines. Comments and the summary
/// only appear in CSV output, as lines starting with '#'.
struct Report {
  std::vector<std::string> comments;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  /// Named tallies (e.g. method win counts) printed after the rows.
  std::map<std::string, long long> counts;
  /// False as soon as one requested solve failed.
  bool all_converged = true;
};

enum class OutputFormat { Csv, Json };

std::string to_csv(const Report& report);
std::string to_json(const Report& report);
std::string render(const Report& report, OutputFormat format);

/// Numerical settings shared by every command.
struct RunSettings {
  SolveOptions solve;
  NumerovConfig numerov;
  /// Solve independent rows on separate threads; output order is unaffected.
  bool parallel = true;
};

struct SpectrumRequest {
  PotentialModel potential = PotentialModel::harmonic_oscillator();
  QuantumNumbers qn;
  std::vector<double> r0;
  std::vector<Method> methods{Method::Perturbative};
};

/// One row per (r0, method), ordered by r0 and then by the requested method order.
/// Columns: r0, method, n_r, l, E, regime, residual, warnings, error.
Report run_spectrum(const SpectrumRequest& request, const RunSettings& settings = {});

/// The computable columns of a published table (E from the perturbative solver,
/// E_WKB from the Langer solver, E_exact from the oracle) next to the
/// literature constants. Starred rows carry the "near-turning-point" flag.
Report run_table(TableId id, const RunSettings& settings = {});

/// Signed errors E_method - E_exact for each requested WKB method and the name
/// of the closer method ("tie" when equal). `counts` holds the win tally.
Report run_compare(const SpectrumRequest& request, const RunSettings& settings = {});

/// The same comparison over the rows of published tables. Starred rows are
/// listed but left out of the win tally.
Report run_compare_tables(const std::vector<TableId>& ids,
                          const std::vector<Method>& methods = {Method::Perturbative, Method::Langer},
                          const RunSettings& settings = {});

struct WavefunctionRequest {
  PotentialModel potential = PotentialModel::harmonic_oscillator();
  QuantumNumbers qn;
  double r0 = 1.0;
  Method method = Method::Perturbative;
  int samples = 400;
};

/// Columns r, psi, region. The energy, turning points and the excluded bands
/// around them are reported as comments.
Report run_wavefunction(const WavefunctionRequest& request, const RunSettings& settings = {});

}  // namespace cwkb
