#include "cwkb/tables.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <utility>

namespace cwkb {

namespace {

constexpr double kBlank = std::numeric_limits<double>::quiet_NaN();

std::optional<double> cell(double v) {
  if (std::isnan(v)) return std::nullopt;
  return v;
}

// One ground-state row of Tables I-III: r0, E, E(WKB), literature..., E(exact).
struct PlainRow {
  double r0;
  double e;
  double e_wkb;
  std::vector<double> literature;
  double exact;
  bool star_e = false;
  bool star_wkb = false;
};

TableRow make_plain(const PlainRow& p, int l, const std::string& state,
                    const std::vector<std::string>& columns) {
  TableRow row;
  row.r0 = p.r0;
  row.qn = {0, l};
  row.state = state;
  row.published_e = p.e;
  row.published_e_wkb = p.e_wkb;
  row.published_exact = p.exact;
  row.starred_e = p.star_e;
  row.starred_e_wkb = p.star_wkb;
  for (std::size_t i = 0; i < columns.size(); ++i) row.literature.push_back({columns[i], cell(p.literature[i])});
  return row;
}

// One row of Tables IV-V: r0, state, n_r, l, E, E(exact), E(1/N).
struct HulthenRow {
  double r0;
  const char* state;
  int n_r;
  int l;
  double e;
  double exact;
  double one_over_n;
};

TableRow make_hulthen(const HulthenRow& h) {
  TableRow row;
  row.r0 = h.r0;
  row.qn = {h.n_r, h.l};
  row.state = h.state;
  row.published_e = h.e;
  row.published_exact = h.exact;
  row.literature = {{"E_exact_lit", h.exact}, {"E_1N", h.one_over_n}};
  return row;
}

TableSpec make_spec(TableId id, std::string title, PotentialModel potential) {
  return TableSpec{id, std::move(title), potential, 4, false, true, {}, {}};
}

TableSpec build_table_i() {
  TableSpec t = make_spec(TableId::I, "Enclosed 3D harmonic oscillator, n_r = 0, l = 1", PotentialModel::harmonic_oscillator());
  t.literature_columns = {"E_var"};
  const std::vector<PlainRow> rows = {
      {1.0, 10.2876, 10.2643, {10.3188}, 10.2822},
      {1.5, 4.9068, 4.9084, {4.9169}, 4.9036},
      {2.0, 3.3081, 3.2490, {3.2514}, 3.2469, true, false},
      {2.5, 2.6835, 2.7079, {2.6901}, 2.6881, false, true},
      {3.0, 2.5313, 2.5310, {2.5337}, 2.5313},
      {4.0, 2.5001, 2.5001, {2.5015}, 2.5001},
      {5.0, 2.5000, 2.5000, {2.5012}, 2.5000},
  };
  for (const auto& r : rows) t.rows.push_back(make_plain(r, 1, "1p", t.literature_columns));
  return t;
}

TableSpec build_table_ii() {
  TableSpec t = make_spec(TableId::II, "Enclosed hydrogen atom, 2p (n_r = 0, l = 1), Rydberg units", PotentialModel::hydrogen());
  t.literature_columns = {"E_var", "E_Varshni"};
  const std::vector<PlainRow> rows = {
      {0.6, 49.8448, 49.3997, {50.401, 49.935}, 49.874},
      {0.8, 26.9179, 26.5586, {27.155, 26.910}, 26.879},
      {1.0, 16.5063, 16.2590, {16.611, 16.464}, 16.446},
      {1.2, 10.8828, 10.7653, {10.999, 10.905}, 10.893},
      {1.4, 7.6209, 7.4379, {7.6857, 7.6214}, 7.6138},
      {1.6, 5.5112, 5.3928, {5.5801, 5.5347}, 5.5295},
      {1.8, 4.1512, 4.0693, {4.1675, 4.1345}, 4.1308, true, false},
      {2.0, 3.1513, 3.1010, {3.1791, 3.1547}, 3.1520},
      {2.2, 2.4469, 2.4013, {2.4641, 2.4458}, 2.4438},
      {2.4, 1.9224, 1.8815, {1.9326, 1.9187}, 1.9173},
      {2.8, 1.2129, 1.1807, {1.2157, 1.2075}, 1.2068},
      {3.0, 0.9684, 0.9420, {0.9694, 0.9631}, 0.9625},
      {3.5, 0.5466, 0.5371, {0.5459, 0.5427}, 0.5424},
      {4.0, 0.2894, 0.2771, {0.2888, 0.2872}, 0.2871},
      {5.0, 0.0154, 0.0135, {0.0155, 0.0152}, 0.0152},
      {7.0, -0.1687, -0.1666, {-0.1748, -0.1748}, -0.1749, true, false},
      {10.0, -0.2269, -0.2256, {-0.2369, kBlank}, -0.2377},
      {14.0, -0.2487, -0.2484, {-0.2484, kBlank}, -0.2491},
  };
  for (const auto& r : rows) t.rows.push_back(make_plain(r, 1, "2p", t.literature_columns));
  return t;
}

TableSpec build_table_iii() {
  TableSpec t = make_spec(TableId::III, "Enclosed hydrogen atom, 3d (n_r = 0, l = 2), Rydberg units", PotentialModel::hydrogen());
  t.literature_columns = {"E_var", "E_Varshni"};
  const std::vector<PlainRow> rows = {
      {1.0, 29.8203, 29.7306, {30.234, 29.979}, 29.935},
      {1.5, 12.5321, 12.4895, {12.692, 12.587}, 12.570},
      {2.0, 6.6415, 6.6064, {6.7182, 6.6640}, 6.6550},
      {2.5, 3.9882, 3.9658, {4.0288, 3.9970}, 3.9920},
      {3.0, 2.5863, 2.5593, {2.6088, 2.5887}, 2.5856},
      {4.0, 1.2467, 1.2379, {1.2532, 1.2440}, 1.2427},
      {5.0, 0.6581, 0.6489, {0.6634, 0.6588}, 0.6582},
      {6.0, 0.3617, 0.3550, {0.3634, 0.3609}, 0.3607},
      {7.0, 0.1926, 0.1890, {0.1945, 0.1933}, 0.1932},
      {8.0, 0.0919, 0.0897, {0.0928, 0.0922}, 0.0921},
      {10.0, -0.0140, -0.0156, {-0.0141, -0.0142}, -0.0142},
      {12.0, -0.0625, -0.0626, {-0.0625, -0.0625}, -0.0625},
      {14.0, -0.0862, -0.0860, {-0.0862, kBlank}, -0.0862},
      {16.0, -0.0939, -0.0928, {-0.0982, kBlank}, -0.0984, true, false},
      {20.0, -0.1079, -0.1077, {-0.1076, kBlank}, -0.1079},
  };
  for (const auto& r : rows) t.rows.push_back(make_plain(r, 2, "3d", t.literature_columns));
  t.rows.back().note = "exact value printed as -1.1079 in the source; the column trend and the oracle give -0.1079";
  return t;
}

TableSpec build_hulthen(TableId id, double delta, const std::vector<HulthenRow>& rows) {
  TableSpec t = make_spec(id, "Confined Hulthen potential, delta = " + std::string(delta == 0.1 ? "0.1" : "0.2") +
                      ", Z = 1, atomic units", PotentialModel::hulthen(delta));
  t.decimals = 5;
  t.lists_states = true;
  t.has_published_wkb = false;
  t.literature_columns = {"E_exact_lit", "E_1N"};
  for (const auto& r : rows) t.rows.push_back(make_hulthen(r));
  return t;
}

TableSpec build_table_iv() {
  return build_hulthen(TableId::IV, 0.1,
                       {
                           {6, "2p", 0, 1, -0.00782, -0.00865, -0.00294},
                           {7, "2p", 0, 1, -0.03976, -0.04069, -0.03324},
                           {8, "2p", 0, 1, -0.05510, -0.05783, -0.05293},
                           {9, "2p", 0, 1, -0.06612, -0.06728, -0.06389},
                           {10, "2p", 0, 1, -0.07196, -0.07257, -0.07008},
                           {25, "2p", 0, 1, -0.07921, -0.07918, -0.07920},
                           {25, "3p", 1, 1, -0.01384, -0.01475, -0.01295},
                           {25, "3d", 0, 2, -0.01381, -0.01390, -0.01332},
                           {50, "2p", 0, 1, -0.07920, -0.07918, -0.07920},
                           {50, "3p", 1, 1, -0.01598, -0.01605, -0.01578},
                           {50, "3d", 0, 2, -0.01450, -0.01448, -0.01450},
                       });
}

TableSpec build_table_v() {
  return build_hulthen(TableId::V, 0.2,
                       {
                           {8, "2p", 0, 1, -0.01607, -0.01731, -0.01242},
                           {9, "2p", 0, 1, -0.02612, -0.02749, -0.02428},
                           {10, "2p", 0, 1, -0.03389, -0.03339, -0.03118},
                           {25, "2p", 0, 1, -0.04192, -0.04188, -0.04199},
                           {50, "2p", 0, 1, -0.04191, -0.04189, -0.04196},
                       });
}

}  // namespace

std::string to_string(TableId id) {
  switch (id) {
    case TableId::I: return "I";
    case TableId::II: return "II";
    case TableId::III: return "III";
    case TableId::IV: return "IV";
    case TableId::V: return "V";
  }
  return "?";
}

std::optional<TableId> parse_table_id(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (TableId id : all_tables())
    if (to_string(id) == upper) return id;
  return std::nullopt;
}

std::vector<TableId> all_tables() { return {TableId::I, TableId::II, TableId::III, TableId::IV, TableId::V}; }

const TableSpec& table_spec(TableId id) {
  static const std::vector<TableSpec> tables = {build_table_i(), build_table_ii(), build_table_iii(),
                                                build_table_iv(), build_table_v()};
  return tables.at(static_cast<std::size_t>(id));
}

}  // namespace cwkb
