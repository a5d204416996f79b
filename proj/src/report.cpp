#include "cwkb/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cwkb {

namespace {

constexpr int kSpectrumDecimals = 10;
constexpr int kResidualDigits = 3;
constexpr int kWaveDecimals = 10;
// |dE| differences below this count as a tie between methods.
constexpr double kTieTolerance = 1e-12;

// Result of one solve; `error` is set instead of `result` when the solver threw.
struct Outcome {
  std::optional<EnergyResult> result;
  std::string error;

  bool ok() const { return result.has_value(); }
};

Outcome attempt(const ConfinedSystem& system, const QuantumNumbers& qn, Method method,
                const RunSettings& settings) {
  try {
    if (method == Method::Exact) return {solve_exact(system, qn, settings.numerov), {}};
    return {solve_energy(system, qn, method, std::nullopt, settings.solve), {}};
  } catch (const std::exception& e) {
    return {std::nullopt, e.what()};
  }
}

// Evaluates job(i) for i in [0, n), concurrently when allowed, in index order.
template <class T>
std::vector<T> map_jobs(std::size_t n, const std::function<T(std::size_t)>& job, bool parallel) {
  std::vector<T> out;
  out.reserve(n);
  if (!parallel) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(job(i));
    return out;
  }
  std::vector<std::future<T>> pending;
  pending.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pending.push_back(std::async(std::launch::async, job, i));
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_double(double v, const Column& c) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  switch (c.kind) {
    case Column::Kind::Fixed:
      std::snprintf(buf, sizeof buf, "%.*f", c.precision, v);
      return buf;
    case Column::Kind::Scientific:
      std::snprintf(buf, sizeof buf, "%.*e", c.precision, v);
      return buf;
    default:
      return shortest(v);
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string format_cell(const Cell& cell, const Column& c) {
  if (std::holds_alternative<std::monostate>(cell)) return "";
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d, c);
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  return csv_escape(std::get<std::string>(cell));
}

Cell energy_cell(const Outcome& o) {
  if (!o.ok()) return std::monostate{};
  return o.result->energy;
}

Column fixed(std::string name, int decimals) { return {std::move(name), Column::Kind::Fixed, decimals}; }
Column text(std::string name) { return {std::move(name), Column::Kind::Text, 0}; }
Column integer(std::string name) { return {std::move(name), Column::Kind::Integer, 0}; }
Column general(std::string name) { return {std::move(name), Column::Kind::Shortest, 0}; }

void check_request(const SpectrumRequest& request) {
  if (request.r0.empty()) throw std::invalid_argument("at least one r0 value is required");
  for (double r0 : request.r0)
    if (!(r0 > 0.0)) throw std::invalid_argument("r0 values must be positive");
  if (request.methods.empty()) throw std::invalid_argument("at least one method is required");
}

ConfinedSystem make_system(const PotentialModel& potential, const QuantumNumbers& qn, double r0) {
  return ConfinedSystem(potential, qn.l, r0);
}

// Column names for the compared methods; repeats get a numeric suffix.
std::vector<std::string> method_labels(const std::vector<Method>& methods) {
  std::vector<std::string> labels;
  std::map<std::string, int> seen;
  for (Method m : methods) {
    const std::string base = to_string(m);
    const int k = ++seen[base];
    labels.push_back(k == 1 ? base : base + "_" + std::to_string(k));
  }
  return labels;
}

struct CompareLine {
  Outcome exact;
  std::vector<Outcome> wkb;
};

// Appends the E/dE cells of one compared row and returns the closer label, or
// empty when some solve failed.
std::string fill_compare(const CompareLine& line, const std::vector<std::string>& labels, std::vector<Cell>& row) {
  row.push_back(energy_cell(line.exact));
  std::vector<std::optional<double>> deltas;
  for (const auto& o : line.wkb) {
    row.push_back(energy_cell(o));
    if (o.ok() && line.exact.ok()) {
      deltas.push_back(o.result->energy - line.exact.result->energy);
      row.push_back(*deltas.back());
    } else {
      deltas.emplace_back();
      row.push_back(std::monostate{});
    }
  }
  std::string closer;
  double best = 0.0;
  bool tie = false;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!deltas[i]) return {};
    const double a = std::abs(*deltas[i]);
    if (closer.empty() || a < best - kTieTolerance) {
      closer = labels[i];
      best = a;
      tie = false;
    } else if (std::abs(a - best) <= kTieTolerance) {
      tie = true;
    }
  }
  return tie ? "tie" : closer;
}

std::vector<Column> compare_columns(const std::vector<std::string>& labels, int decimals) {
  std::vector<Column> cols = {fixed("E_exact", decimals)};
  for (const auto& l : labels) {
    cols.push_back(fixed("E_" + l, decimals));
    cols.push_back(fixed("dE_" + l, decimals));
  }
  cols.push_back(text("closer"));
  return cols;
}

void check_compare_methods(const std::vector<Method>& methods) {
  if (methods.empty()) throw std::invalid_argument("at least one method is required");
  for (Method m : methods)
    if (m == Method::Exact) throw std::invalid_argument("compare measures WKB methods against the exact oracle");
}

std::vector<std::string> errors_of(const CompareLine& line, const std::vector<std::string>& labels) {
  std::vector<std::string> errs;
  if (!line.exact.ok()) errs.push_back("exact: " + line.exact.error);
  for (std::size_t i = 0; i < line.wkb.size(); ++i)
    if (!line.wkb[i].ok()) errs.push_back(labels[i] + ": " + line.wkb[i].error);
  return errs;
}

}  // namespace

std::string to_csv(const Report& report) {
  std::ostringstream out;
  for (const auto& c : report.comments) out << "# " << c << '\n';
  for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i ? "," : "") << report.columns[i].name;
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
      if (i) out << ',';
      if (i < row.size()) out << format_cell(row[i], report.columns[i]);
    }
    out << '\n';
  }
  for (const auto& [name, n] : report.counts) out << "# " << name << ": " << n << '\n';
  return out.str();
}

std::string to_json(const Report& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
      const std::string& key = report.columns[i].name;
      if (i >= row.size() || std::holds_alternative<std::monostate>(row[i])) {
        obj[key] = nullptr;
      } else if (const auto* d = std::get_if<double>(&row[i])) {
        obj[key] = *d;
      } else if (const auto* n = std::get_if<long long>(&row[i])) {
        obj[key] = *n;
      } else {
        obj[key] = std::get<std::string>(row[i]);
      }
    }
    rows.push_back(std::move(obj));
  }
  return rows.dump(2) + "\n";
}

std::string render(const Report& report, OutputFormat format) {
  return format == OutputFormat::Csv ? to_csv(report) : to_json(report);
}

Report run_spectrum(const SpectrumRequest& request, const RunSettings& settings) {
  check_request(request);
  std::vector<double> radii = request.r0;
  std::stable_sort(radii.begin(), radii.end());
  const std::size_t nm = request.methods.size();
  const auto outcomes = map_jobs<Outcome>(
      radii.size() * nm,
      [&](std::size_t k) {
        return attempt(make_system(request.potential, request.qn, radii[k / nm]), request.qn,
                       request.methods[k % nm], settings);
      },
      settings.parallel);

  Report report;
  report.columns = {general("r0"),
                    text("method"),
                    integer("n_r"),
                    integer("l"),
                    fixed("E", kSpectrumDecimals),
                    text("regime"),
                    {"residual", Column::Kind::Scientific, kResidualDigits},
                    text("warnings"),
                    text("error")};
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const Outcome& o = outcomes[k];
    std::vector<Cell> row = {radii[k / nm], to_string(request.methods[k % nm]),
                             static_cast<long long>(request.qn.n_r), static_cast<long long>(request.qn.l)};
    if (o.ok()) {
      row.insert(row.end(), {o.result->energy, to_string(o.result->regime), o.result->residual,
                             join(o.result->warnings, "; "), std::string()});
    } else {
      report.all_converged = false;
      row.insert(row.end(), {std::monostate{}, std::monostate{}, std::monostate{}, std::string(), o.error});
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

Report run_table(TableId id, const RunSettings& settings) {
  const TableSpec& spec = table_spec(id);
  static const Method kMethods[] = {Method::Perturbative, Method::Langer, Method::Exact};
  const auto outcomes = map_jobs<Outcome>(
      spec.rows.size() * 3,
      [&](std::size_t k) {
        const TableRow& row = spec.rows[k / 3];
        return attempt(make_system(spec.potential, row.qn, row.r0), row.qn, kMethods[k % 3], settings);
      },
      settings.parallel);

  Report report;
  report.comments.push_back("Table " + to_string(id) + ": " + spec.title);
  report.comments.push_back("E: perturbative WKB; E_WKB: Langer-corrected WKB; E_exact: Numerov oracle");
  report.comments.push_back("literature (echoed, not computed): " + join(spec.literature_columns, ", "));
  for (const auto& row : spec.rows)
    if (!row.note.empty()) report.comments.push_back("r0=" + shortest(row.r0) + ": " + row.note);

  const int dp = spec.decimals;
  report.columns.push_back(general("r0"));
  if (spec.lists_states) {
    report.columns.push_back(text("state"));
    report.columns.push_back(integer("n_r"));
    report.columns.push_back(integer("l"));
  }
  report.columns.push_back(fixed("E", dp));
  report.columns.push_back(fixed("E_WKB", dp));
  std::vector<std::string> lit_before_exact;
  std::vector<std::string> lit_after_exact;
  for (const auto& c : spec.literature_columns)
    (c == "E_exact_lit" || c == "E_1N" ? lit_after_exact : lit_before_exact).push_back(c);
  for (const auto& c : lit_before_exact) report.columns.push_back(fixed(c, dp));
  report.columns.push_back(fixed("E_exact", dp));
  for (const auto& c : lit_after_exact) report.columns.push_back(fixed(c, dp));
  report.columns.push_back(text("flags"));

  auto literature = [](const TableRow& row, const std::string& name) -> Cell {
    for (const auto& v : row.literature)
      if (v.column == name && v.value) return *v.value;
    return std::monostate{};
  };

  for (std::size_t i = 0; i < spec.rows.size(); ++i) {
    const TableRow& row = spec.rows[i];
    std::vector<Cell> cells = {row.r0};
    if (spec.lists_states) {
      cells.push_back(row.state);
      cells.push_back(static_cast<long long>(row.qn.n_r));
      cells.push_back(static_cast<long long>(row.qn.l));
    }
    const Outcome& pert = outcomes[3 * i];
    const Outcome& langer = outcomes[3 * i + 1];
    const Outcome& exact = outcomes[3 * i + 2];
    cells.push_back(energy_cell(pert));
    cells.push_back(energy_cell(langer));
    for (const auto& c : lit_before_exact) cells.push_back(literature(row, c));
    cells.push_back(energy_cell(exact));
    for (const auto& c : lit_after_exact) cells.push_back(literature(row, c));

    std::vector<std::string> flags;
    if (row.starred()) flags.push_back("near-turning-point");
    const char* names[] = {"E", "E_WKB", "E_exact"};
    for (int m = 0; m < 3; ++m) {
      const Outcome& o = outcomes[3 * i + static_cast<std::size_t>(m)];
      if (!o.ok()) {
        report.all_converged = false;
        flags.push_back(std::string("error(") + names[m] + "): " + o.error);
      }
    }
    cells.push_back(join(flags, "; "));
    report.rows.push_back(std::move(cells));
  }
  return report;
}

Report run_compare(const SpectrumRequest& request, const RunSettings& settings) {
  check_request(request);
  check_compare_methods(request.methods);
  std::vector<double> radii = request.r0;
  std::stable_sort(radii.begin(), radii.end());
  const auto labels = method_labels(request.methods);
  const std::size_t per_row = request.methods.size() + 1;
  const auto outcomes = map_jobs<Outcome>(
      radii.size() * per_row,
      [&](std::size_t k) {
        const std::size_t j = k % per_row;
        const Method m = j == 0 ? Method::Exact : request.methods[j - 1];
        return attempt(make_system(request.potential, request.qn, radii[k / per_row]), request.qn, m, settings);
      },
      settings.parallel);

  Report report;
  report.columns = {general("r0"), integer("n_r"), integer("l")};
  for (auto& c : compare_columns(labels, kSpectrumDecimals)) report.columns.push_back(c);
  report.columns.push_back(text("error"));
  for (const auto& l : labels) report.counts["wins_" + l] = 0;
  report.counts["ties"] = 0;

  for (std::size_t i = 0; i < radii.size(); ++i) {
    CompareLine line{outcomes[i * per_row], {}};
    for (std::size_t j = 1; j < per_row; ++j) line.wkb.push_back(outcomes[i * per_row + j]);
    std::vector<Cell> row = {radii[i], static_cast<long long>(request.qn.n_r),
                             static_cast<long long>(request.qn.l)};
    const std::string closer = fill_compare(line, labels, row);
    row.push_back(closer);
    const auto errs = errors_of(line, labels);
    row.push_back(join(errs, "; "));
    if (!errs.empty()) report.all_converged = false;
    if (!closer.empty()) ++report.counts[closer == "tie" ? "ties" : "wins_" + closer];
    report.rows.push_back(std::move(row));
  }
  return report;
}

Report run_compare_tables(const std::vector<TableId>& ids, const std::vector<Method>& methods,
                          const RunSettings& settings) {
  if (ids.empty()) throw std::invalid_argument("at least one table is required");
  check_compare_methods(methods);
  struct Job {
    const TableSpec* spec;
    const TableRow* row;
  };
  std::vector<Job> jobs;
  for (TableId id : ids)
    for (const auto& row : table_spec(id).rows) jobs.push_back({&table_spec(id), &row});

  const auto labels = method_labels(methods);
  const std::size_t per_row = methods.size() + 1;
  const auto outcomes = map_jobs<Outcome>(
      jobs.size() * per_row,
      [&](std::size_t k) {
        const Job& job = jobs[k / per_row];
        const std::size_t j = k % per_row;
        const Method m = j == 0 ? Method::Exact : methods[j - 1];
        return attempt(make_system(job.spec->potential, job.row->qn, job.row->r0), job.row->qn, m, settings);
      },
      settings.parallel);

  Report report;
  report.comments.push_back("win tally covers rows without a near-turning-point flag");
  report.columns = {text("table"), general("r0"), integer("n_r"), integer("l")};
  for (auto& c : compare_columns(labels, kSpectrumDecimals)) report.columns.push_back(c);
  report.columns.push_back(text("flags"));
  for (const auto& l : labels) report.counts["wins_" + l] = 0;
  report.counts["ties"] = 0;

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& job = jobs[i];
    CompareLine line{outcomes[i * per_row], {}};
    for (std::size_t j = 1; j < per_row; ++j) line.wkb.push_back(outcomes[i * per_row + j]);
    std::vector<Cell> row = {to_string(job.spec->id), job.row->r0, static_cast<long long>(job.row->qn.n_r),
                             static_cast<long long>(job.row->qn.l)};
    const std::string closer = fill_compare(line, labels, row);
    row.push_back(closer);
    std::vector<std::string> flags = errors_of(line, labels);
    if (!flags.empty()) report.all_converged = false;
    if (job.row->starred())
      flags.insert(flags.begin(), "near-turning-point");
    else if (!closer.empty())
      ++report.counts[closer == "tie" ? "ties" : "wins_" + closer];
    row.push_back(join(flags, "; "));
    report.rows.push_back(std::move(row));
  }
  return report;
}

Report run_wavefunction(const WavefunctionRequest& request, const RunSettings& settings) {
  if (request.samples < 2) throw std::invalid_argument("sample count must be at least 2");
  if (!(request.r0 > 0.0)) throw std::invalid_argument("r0 must be positive");
  if (request.method == Method::Exact)
    throw std::invalid_argument("wavefunction traces are built from the WKB solutions");
  const ConfinedSystem base(request.potential, request.qn.l, request.r0);
  const EnergyResult e = solve_energy(base, request.qn, request.method, std::nullopt, settings.solve);
  const ConfinedSystem system = request.method == Method::Langer ? base.with_langer() : base;
  const WavefunctionTrace trace =
      build_wavefunction(system, request.qn, e.energy, request.samples, settings.solve.quadrature);

  Report report;
  report.comments.push_back("method=" + to_string(request.method) + " E=" + shortest(e.energy) +
                            " regime=" + to_string(e.regime));
  report.comments.push_back("r1=" + shortest(trace.r1) +
                            (trace.r2 ? " r2=" + shortest(*trace.r2) : std::string(" r2=none")));
  std::string bands = "excluded bands: [" + shortest(trace.r1 - trace.band) + ", " +
                      shortest(trace.r1 + trace.band) + "]";
  if (trace.r2 && *trace.r2 < request.r0)
    bands += ", [" + shortest(*trace.r2 - trace.band) + ", " + shortest(*trace.r2 + trace.band) + "]";
  report.comments.push_back(bands);
  for (const auto& w : e.warnings) report.comments.push_back("warning: " + w);

  report.columns = {general("r"), fixed("psi", kWaveDecimals), text("region")};
  for (const auto& s : trace.samples) report.rows.push_back({s.r, s.psi, to_string(s.region)});
  return report;
}

}  // namespace cwkb
