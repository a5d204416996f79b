// Acceptance run: one PASS/FAIL line per criterion, with the worst offending
// row spelled out underneath. Exits nonzero when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "cwkb/errors.hpp"
#include "cwkb/oracle.hpp"
#include "cwkb/quadrature.hpp"
#include "cwkb/tables.hpp"
#include "cwkb/wkb.hpp"
#include "json.hpp"

using namespace cwkb;

namespace {

constexpr double kPi = std::numbers::pi;

constexpr double kTableOneTol = 1e-3;
constexpr double kHydrogenTol = 2e-3;
constexpr double kHulthenTol = 2e-3;
constexpr double kOracleTolCoulomb = 2e-3;
constexpr double kOracleTolHulthen = 5e-3;
constexpr double kGridDoublingTol = 1e-6;
constexpr double kRowSeconds = 1.0;
constexpr double kTurningResidual = 1e-9;
constexpr double kIdentityTol = 1e-10;
constexpr double kQuantizationResidual = 1e-9;
constexpr double kClosedFormTol = 1e-8;

// Solved columns of one table row.
struct Solved {
  const TableRow* row;
  std::optional<EnergyResult> pert;
  std::optional<EnergyResult> langer;
  std::optional<EnergyResult> exact;
  std::string error;
  double wkb_seconds = 0.0;
};

std::map<TableId, std::vector<Solved>> solve_all() {
  std::map<TableId, std::vector<Solved>> out;
  for (TableId id : all_tables()) {
    const TableSpec& spec = table_spec(id);
    for (const auto& row : spec.rows) {
      Solved s{&row, {}, {}, {}, {}, 0.0};
      const ConfinedSystem sys(spec.potential, row.qn.l, row.r0);
      try {
        const auto t0 = std::chrono::steady_clock::now();
        s.pert = solve_energy(sys, row.qn, Method::Perturbative);
        s.langer = solve_energy_langer(sys, row.qn);
        s.wkb_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / 2.0;
        s.exact = solve_exact(sys, row.qn);
      } catch (const std::exception& e) {
        s.error = e.what();
      }
      out[id].push_back(std::move(s));
    }
  }
  return out;
}

// Largest |computed - published| over selected rows, with the row where it occurs.
struct Worst {
  double delta = 0.0;
  std::string where;
  int rows = 0;
  int missing = 0;

  void add(const std::string& label, const std::optional<EnergyResult>& got, double published) {
    ++rows;
    if (!got) {
      ++missing;
      delta = INFINITY;
      where = label + " (no solution)";
      return;
    }
    const double d = std::abs(got->energy - published);
    if (d > delta || where.empty()) {
      delta = d;
      where = label + ": computed " + std::to_string(got->energy) + ", published " + std::to_string(published);
    }
  }
};

std::string label(TableId id, const TableRow& row) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "Table %s r0=%g %s", to_string(id).c_str(), row.r0, row.state.c_str());
  return buf;
}

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s -- %s\n", pass ? "PASS" : "FAIL", number, name.c_str(), detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

// Largest per-row WKB solve time over the given tables.
double slowest_row(const std::map<TableId, std::vector<Solved>>& solved, std::initializer_list<TableId> ids) {
  double t = 0.0;
  for (TableId id : ids)
    for (const auto& s : solved.at(id)) t = std::max(t, s.wkb_seconds);
  return t;
}

void criterion_table_one(const std::map<TableId, std::vector<Solved>>& solved) {
  Worst e;
  Worst wkb;
  for (const auto& s : solved.at(TableId::I)) {
    // E is checked on rows without a star in either column, E_WKB on rows without its own star.
    if (!s.row->starred()) e.add(label(TableId::I, *s.row), s.pert, s.row->published_e);
    if (!s.row->starred_e_wkb) wkb.add(label(TableId::I, *s.row), s.langer, *s.row->published_e_wkb);
  }
  const double t = slowest_row(solved, {TableId::I});
  const bool pass = e.delta <= kTableOneTol && wkb.delta <= kTableOneTol && t < kRowSeconds;
  report(1, "Table I reproduction", pass,
         fmt("max |dE| = %.4g over %g rows", e.delta, e.rows) + fmt(", max |dE_WKB| = %.4g over %g rows", wkb.delta, wkb.rows) +
             fmt(", slowest row %.3f s (tol %.0e", t, kTableOneTol) + ")");
  std::printf("    worst E: %s\n    worst E_WKB: %s\n", e.where.c_str(), wkb.where.c_str());
}

void criterion_hydrogen(const std::map<TableId, std::vector<Solved>>& solved) {
  Worst e;
  Worst wkb;
  for (TableId id : {TableId::II, TableId::III}) {
    for (const auto& s : solved.at(id)) {
      if (s.row->starred()) continue;
      e.add(label(id, *s.row), s.pert, s.row->published_e);
      wkb.add(label(id, *s.row), s.langer, *s.row->published_e_wkb);
    }
  }
  const double t = slowest_row(solved, {TableId::II, TableId::III});
  const bool pass = e.delta <= kHydrogenTol && wkb.delta <= kHydrogenTol && t < kRowSeconds;
  report(2, "Tables II-III reproduction (Rydberg)", pass,
         fmt("max |dE| = %.4g over %g rows", e.delta, e.rows) + fmt(", max |dE_WKB| = %.4g over %g rows", wkb.delta, wkb.rows) +
             fmt(", slowest row %.3f s (tol %.0e", t, kHydrogenTol) + ")");
  std::printf("    worst E: %s\n    worst E_WKB: %s\n", e.where.c_str(), wkb.where.c_str());
}

void criterion_hulthen(const std::map<TableId, std::vector<Solved>>& solved) {
  Worst e;
  bool echoed = true;
  for (TableId id : {TableId::IV, TableId::V}) {
    for (const auto& s : solved.at(id)) {
      e.add(label(id, *s.row), s.pert, s.row->published_e);
      bool has_exact = false;
      bool has_1n = false;
      for (const auto& lit : s.row->literature) {
        has_exact |= lit.column == "E_exact_lit" && lit.value == s.row->published_exact;
        has_1n |= lit.column == "E_1N" && lit.value.has_value();
      }
      echoed &= has_exact && has_1n;
    }
  }
  const double t = slowest_row(solved, {TableId::IV, TableId::V});
  const bool pass = e.delta <= kHulthenTol && echoed && t < kRowSeconds;
  report(3, "Tables IV-V reproduction (atomic units)", pass,
         fmt("max |dE| = %.4g over %g rows", e.delta, e.rows) + std::string(", literature columns ") +
             (echoed ? "echoed" : "MISSING") + fmt(", slowest row %.3f s (tol %.0e)", t, kHulthenTol));
  std::printf("    worst E: %s\n", e.where.c_str());
}

void criterion_oracle(const std::map<TableId, std::vector<Solved>>& solved) {
  Worst coulomb;
  Worst hulthen;
  for (TableId id : all_tables()) {
    const bool is_hulthen = id == TableId::IV || id == TableId::V;
    for (const auto& s : solved.at(id)) (is_hulthen ? hulthen : coulomb).add(label(id, *s.row), s.exact, s.row->published_exact);
  }
  // Grid doubling on every table row.
  double worst_doubling = 0.0;
  std::string doubling_where;
  NumerovConfig fine;
  fine.grid_points *= 2;
  for (TableId id : all_tables()) {
    const TableSpec& spec = table_spec(id);
    for (const auto& s : solved.at(id)) {
      if (!s.exact) continue;
      const ConfinedSystem sys(spec.potential, s.row->qn.l, s.row->r0);
      const double d = std::abs(solve_exact(sys, s.row->qn, fine).energy - s.exact->energy);
      if (d > worst_doubling) {
        worst_doubling = d;
        doubling_where = label(id, *s.row);
      }
    }
  }
  const bool pass = coulomb.delta <= kOracleTolCoulomb && hulthen.delta <= kOracleTolHulthen &&
                    worst_doubling < kGridDoublingTol;
  report(4, "oracle fidelity", pass,
         fmt("max |dE| Tables I-III = %.4g (tol %.0e)", coulomb.delta, kOracleTolCoulomb) +
             fmt(", Tables IV-V = %.4g (tol %.0e)", hulthen.delta, kOracleTolHulthen) +
             fmt(", grid doubling max %.3g (tol %.0e)", worst_doubling, kGridDoublingTol));
  std::printf("    worst I-III: %s\n    worst IV-V: %s\n    worst doubling: %s\n", coulomb.where.c_str(),
              hulthen.where.c_str(), doubling_where.c_str());
}

void criterion_comparison(const std::map<TableId, std::vector<Solved>>& solved) {
  int rows = 0;
  int perturbative = 0;
  for (TableId id : {TableId::I, TableId::II, TableId::III}) {
    for (const auto& s : solved.at(id)) {
      if (s.row->starred() || !s.pert || !s.langer || !s.exact) continue;
      ++rows;
      if (std::abs(s.pert->energy - s.exact->energy) <= std::abs(s.langer->energy - s.exact->energy)) ++perturbative;
    }
  }
  report(5, "perturbative closer than Langer in a strict majority", 2 * perturbative > rows,
         fmt("perturbative %g of %g non-starred rows of Tables I-III", perturbative, rows));
}

// Energies spanning the classically allowed window of a system.
std::vector<double> energy_grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 1; i <= n; ++i) out.push_back(lo + (hi - lo) * i / (n + 1));
  return out;
}

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
};

void criterion_properties(const std::map<TableId, std::vector<Solved>>& solved) {
  std::vector<Check> checks;

  {  // Turning points solve E = V_eff for every family.
    Check c{"turning-point residuals", true, {}};
    double worst = 0.0;
    std::vector<ConfinedSystem> systems = {
        ConfinedSystem(PotentialModel::harmonic_oscillator(), 1, 100.0),
        ConfinedSystem(PotentialModel::hydrogen(), 2, 1000.0),
        ConfinedSystem(PotentialModel::hulthen(0.1), 1, 1000.0),
        ConfinedSystem(PotentialModel::hulthen(0.2), 2, 1000.0)};
    for (const auto& s : systems) {
      const double bottom = well_bottom(s).v;
      const double top = s.potential().kind() == PotentialKind::HarmonicOscillator ? 40.0 : -1e-4;
      for (double e : energy_grid(bottom, top, 60)) {
        const auto tp = turning_points(s, e);
        if (tp.regime == TurningRegime::NoClassicalRegion) continue;
        const double scale = std::max(1.0, std::abs(e));
        worst = std::max(worst, std::abs(s.v_eff(tp.r1) - e) / scale);
        if (tp.r2) worst = std::max(worst, std::abs(s.v_eff(*tp.r2) - e) / scale);
      }
    }
    c.pass = worst <= kTurningResidual;
    c.detail = fmt("max %.3g", worst);
    checks.push_back(c);
  }

  {  // Oscillator identities r1^2 + r2^2 = 2E and r1 r2 = l.
    Check c{"oscillator turning-point identities", true, {}};
    double worst = 0.0;
    for (int l : {1, 2, 3}) {
      const ConfinedSystem s(PotentialModel::harmonic_oscillator(), l, 100.0);
      for (double e : energy_grid(l + 1e-3, 30.0, 40)) {
        const auto tp = turning_points(s, e);
        worst = std::max({worst, std::abs(tp.r1 * tp.r1 + *tp.r2 * *tp.r2 - 2.0 * e) / e,
                          std::abs(tp.r1 * *tp.r2 - l) / l});
      }
    }
    c.pass = worst <= kIdentityTol;
    c.detail = fmt("max relative %.3g", worst);
    checks.push_back(c);
  }

  {  // Hydrogen identities in atomic units, e = -E.
    Check c{"hydrogen turning-point identities (atomic)", true, {}};
    double worst = 0.0;
    for (int l : {1, 2}) {
      const ConfinedSystem s(PotentialModel::hydrogen(UnitConvention::atomic()), l, 1e4);
      const double ground = -1.0 / (2.0 * l * l);
      for (double e_pos : energy_grid(1e-3, -ground, 40)) {
        const auto tp = turning_points(s, -e_pos);
        worst = std::max({worst, std::abs((tp.r1 + *tp.r2) * e_pos - 1.0),
                          std::abs(tp.r1 * *tp.r2 * 2.0 * e_pos / (l * l) - 1.0)});
      }
    }
    c.pass = worst <= kIdentityTol;
    c.detail = fmt("max relative %.3g", worst);
    checks.push_back(c);
  }

  {  // No correction integral without angular momentum.
    Check c{"lambda2 vanishes at l = 0", true, {}};
    const ConfinedSystem ho(PotentialModel::harmonic_oscillator(), 0, 5.0);
    const ConfinedSystem h(PotentialModel::hydrogen(), 0, 5.0);
    double worst = 0.0;
    for (double e : {0.5, 2.0, 6.0}) worst = std::max(worst, std::abs(lambda2(ho, e, 1e-6, std::sqrt(2.0 * e) * 0.9)));
    for (double e : {-0.5, 1.0}) worst = std::max(worst, std::abs(lambda2(h, e, 1e-6, 0.9)));
    c.pass = worst == 0.0;
    c.detail = fmt("max |lambda2| %.3g", worst);
    checks.push_back(c);
  }

  {  // Every computed column decreases with the wall radius, per state.
    Check c{"energies decrease with r0 in every table column", true, {}};
    std::string where;
    for (TableId id : all_tables()) {
      std::map<std::string, std::vector<const Solved*>> by_state;
      for (const auto& s : solved.at(id)) by_state[s.row->state].push_back(&s);
      for (const auto& [state, rows] : by_state) {
        for (std::size_t i = 1; i < rows.size(); ++i) {
          const Solved& a = *rows[i - 1];
          const Solved& b = *rows[i];
          if (!a.pert || !b.pert || !a.langer || !b.langer || !a.exact || !b.exact) {
            c.pass = false;
            where = label(id, *b.row) + " unsolved";
            continue;
          }
          const bool ok = b.pert->energy < a.pert->energy && b.langer->energy < a.langer->energy &&
                          b.exact->energy < a.exact->energy;
          if (!ok) {
            c.pass = false;
            where = label(id, *b.row);
          }
        }
      }
    }
    c.detail = c.pass ? "all columns" : "violated at " + where;
    checks.push_back(c);
  }

  {  // Node count of the region-II trace and residual at every converged root.
    Check nodes{"region-II node count equals n_r", true, {}};
    Check residual{"quantization residual at the root", true, {}};
    double worst = 0.0;
    int traced = 0;
    for (TableId id : all_tables()) {
      const TableSpec& spec = table_spec(id);
      for (const auto& s : solved.at(id)) {
        const ConfinedSystem sys(spec.potential, s.row->qn.l, s.row->r0);
        for (const auto* r : {&s.pert, &s.langer}) {
          if (!*r) continue;
          worst = std::max(worst, std::abs((*r)->residual));
          const ConfinedSystem& traced_sys = (*r)->method == Method::Langer ? sys.with_langer() : sys;
          try {
            const auto trace = build_wavefunction(traced_sys, s.row->qn, (*r)->energy, 2000);
            ++traced;
            if (trace.region_two_nodes() != s.row->qn.n_r) {
              nodes.pass = false;
              nodes.detail = label(id, *s.row) + " " + to_string((*r)->method);
            }
          } catch (const std::exception& e) {
            nodes.pass = false;
            nodes.detail = label(id, *s.row) + ": " + e.what();
          }
        }
      }
    }
    if (nodes.pass) nodes.detail = fmt("%g roots traced", traced);
    residual.pass = worst < kQuantizationResidual;
    residual.detail = fmt("max |f(E*)| %.3g", worst);
    checks.push_back(nodes);
    checks.push_back(residual);
  }

  bool pass = true;
  std::string failed;
  for (const auto& c : checks) {
    pass &= c.pass;
    if (!c.pass) failed += (failed.empty() ? "" : ", ") + c.name;
  }
  report(6, "property suites", pass, pass ? fmt("%g checks", checks.size()) : "failed: " + failed);
  for (const auto& c : checks) std::printf("    [%s] %s: %s\n", c.pass ? "ok" : "xx", c.name.c_str(), c.detail.c_str());
}

void criterion_closed_form() {
  double worst1 = 0.0;
  double worst2 = 0.0;
  for (int l : {1, 2, 3}) {
    const ConfinedSystem s(PotentialModel::harmonic_oscillator(), l, 100.0);
    for (double e : energy_grid(l + 0.05, 20.0, 12)) {
      const auto tp = turning_points(s, e);
      worst1 = std::max(worst1, std::abs(lambda1(s, e, tp.r1, *tp.r2) - kPi * (e - l) / 2.0));
      if (l == 1) worst2 = std::max(worst2, std::abs(lambda2(s, e, tp.r1, *tp.r2) - kPi / 4.0));
    }
  }
  report(7, "oscillator closed forms for the full-well integrals", worst1 <= kClosedFormTol && worst2 <= kClosedFormTol,
         fmt("max |lambda1 - pi(E-l)/2| = %.3g, max |lambda2 - pi/4| = %.3g", worst1, worst2) +
             fmt(" (tol %.0e)", kClosedFormTol));
}

void criterion_higher_order() {
  const ConfinedSystem s(PotentialModel::harmonic_oscillator(), 1, 3.0);
  const auto root = solve_energy(s, {0, 1}, Method::Perturbative);
  std::vector<double> shifts;
  for (double eps : {1e-2, 1e-3, 1e-4, 1e-5}) shifts.push_back(std::abs(higher_order_shift(s, {0, 1}, root.energy, eps).phase_shift));
  bool grows = true;
  for (std::size_t i = 1; i < shifts.size(); ++i) grows &= shifts[i] > shifts[i - 1];
  const auto at_default = higher_order_shift(s, {0, 1}, root.energy);
  const bool pass = at_default.phase_shift != 0.0 && at_default.diagnostic_only && grows;
  report(8, "higher-order diagnostic", pass,
         fmt("default-epsilon phase shift %.4g, energy shift %.4g", at_default.phase_shift, at_default.energy_shift) +
             fmt("; |shift| at eps 1e-2 -> 1e-5: %.3g -> %.3g", shifts.front(), shifts.back()));
}

// Oracle energies of Tables II-III under both unit conventions, side by side with
// the published exact column, written as JSON to `path`.
void write_adjudication(const std::string& path) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  double worst_rydberg = 0.0;
  double worst_atomic = 0.0;
  for (TableId id : {TableId::II, TableId::III}) {
    for (const auto& row : table_spec(id).rows) {
      const double ry = solve_exact(ConfinedSystem(PotentialModel::hydrogen(UnitConvention::rydberg()), row.qn.l, row.r0), row.qn).energy;
      const double au = solve_exact(ConfinedSystem(PotentialModel::hydrogen(UnitConvention::atomic()), row.qn.l, row.r0), row.qn).energy;
      worst_rydberg = std::max(worst_rydberg, std::abs(ry - row.published_exact));
      worst_atomic = std::max(worst_atomic, std::abs(au - row.published_exact));
      rows.push_back({{"table", to_string(id)},
                      {"r0", row.r0},
                      {"state", row.state},
                      {"published_exact", row.published_exact},
                      {"oracle_rydberg", ry},
                      {"oracle_atomic", au},
                      {"delta_rydberg", ry - row.published_exact},
                      {"delta_atomic", au - row.published_exact}});
    }
  }
  nlohmann::ordered_json doc = {{"max_abs_delta_rydberg", worst_rydberg},
                                {"max_abs_delta_atomic", worst_atomic},
                                {"selected", worst_rydberg < worst_atomic ? "rydberg" : "atomic"},
                                {"rows", rows}};
  std::ofstream(path) << doc.dump(2) << '\n';
  std::printf("unit-convention adjudication: max |oracle - E_exact| rydberg %.3g, atomic %.3g -> %s (written to %s)\n",
              worst_rydberg, worst_atomic, worst_rydberg < worst_atomic ? "rydberg" : "atomic", path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  const std::string artifact = argc > 1 ? argv[1] : "unit_convention_adjudication.json";
  const auto solved = solve_all();
  for (const auto& [id, rows] : solved)
    for (const auto& s : rows)
      if (!s.error.empty()) std::printf("solve failure: %s: %s\n", label(id, *s.row).c_str(), s.error.c_str());

  criterion_table_one(solved);
  criterion_hydrogen(solved);
  criterion_hulthen(solved);
  criterion_oracle(solved);
  criterion_comparison(solved);
  criterion_properties(solved);
  criterion_closed_form();
  criterion_higher_order();
  write_adjudication(artifact);

  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
