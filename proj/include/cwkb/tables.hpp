#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cwkb/potentials.hpp"
#include "cwkb/wkb.hpp"

namespace cwkb {

/// The five published comparison tables: confined oscillator (I), confined
/// hydrogen 2p and 3d (II, III) and confined Hulthen with delta = 0.1, 0.2 (IV, V).
enum class TableId { I, II, III, IV, V };

std::string to_string(TableId id);
/// Accepts the roman numerals I..V (case-insensitive); empty for anything else.
std::optional<TableId> parse_table_id(std::string_view text);
std::vector<TableId> all_tables();

/// A reference value quoted from the literature and echoed, never computed.
struct LiteratureValue {
  std::string column;          ///< output column name, e.g. "E_var"
  std::optional<double> value; ///< empty where the source leaves the cell blank
};

struct TableRow {
  double r0 = 0.0;
  QuantumNumbers qn;
  std::string state;  ///< spectroscopic label, e.g. "2p"

  /// Published values of the columns this library computes. E_WKB is missing
  /// for the Hulthen tables, which only quote E, E(exact) and E(1/N).
  double published_e = 0.0;
  std::optional<double> published_e_wkb;
  double published_exact = 0.0;

  /// Rows the source marks as having the wall close to a turning point.
  bool starred_e = false;
  bool starred_e_wkb = false;

  std::vector<LiteratureValue> literature;
  /// Free-text remark on a published value (e.g. an obvious misprint that was corrected).
  std::string note;

  bool starred() const { return starred_e || starred_e_wkb; }
};

struct TableSpec {
  TableId id;
  std::string title;
  PotentialModel potential;
  /// Decimal places used for energies when the table is written as CSV.
  int decimals = 4;
  /// Tables IV and V list several states per wall radius.
  bool lists_states = false;
  /// Whether the source quotes a Langer-corrected WKB column.
  bool has_published_wkb = true;
  /// Literature columns, in output order. For the Hulthen tables this includes
  /// the published exact energies as "E_exact_lit" next to the computed E_exact.
  std::vector<std::string> literature_columns;
  std::vector<TableRow> rows;
};

const TableSpec& table_spec(TableId id);

}  // namespace cwkb
