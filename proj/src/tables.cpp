#include "dimtrunc/tables.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace dimtrunc {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

std::string join_assumptions(const std::vector<std::string>& assumptions) {
  std::string joined;
  for (std::size_t i = 0; i < assumptions.size(); ++i) {
    if (i > 0) joined += "; ";
    joined += assumptions[i];
  }
  return joined;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string grid_string(const std::vector<long long>& grid) {
  std::string s;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0) s += ' ';
    s += std::to_string(grid[i]);
  }
  return s;
}

void append_metadata(std::ostringstream& out, const ExperimentSpec& spec) {
  out << "# dimtrunc " << kVersion << "\n";
  out << "# measure=" << spec.measure.name() << "\n";
  out << "# sequence=" << spec.sequence.name() << "\n";
  out << "# target=" << spec.target.name() << "\n";
  if (spec.target.type == SweepTarget::Type::Kernel &&
      (spec.target.kernel.kind == Kernel::Korobov ||
       spec.target.kernel.kind == Kernel::Hermite)) {
    out << "# series_cap=" << spec.target.kernel.series_cap
        << " tail_tol=" << format_double(spec.target.kernel.tail_tol) << "\n";
  }
  out << "# seed=" << spec.mc.seed << " samples=" << spec.mc.samples
      << " ref_level=" << spec.mc.ref_level << "\n";
  out << "# k_grid=" << grid_string(spec.mc.k_grid) << "\n";
}

struct ConstantsRow {
  std::string quantity;
  int order;
  BoundValue value;
};

std::vector<ConstantsRow> constants_rows(const MeasureSpec& measure, int m_max,
                                         int r_max) {
  std::vector<ConstantsRow> rows;
  rows.push_back({"mean", 0, {BoundKind::Exact, mean(measure), 0, 0}});
  rows.push_back({"variance", 0, {BoundKind::Exact, variance(measure), 0, 0}});
  for (int r = 1; r <= r_max; ++r) {
    rows.push_back(
        {"moment_abs", r, {BoundKind::Exact, moment_abs(measure, r), 0, 0}});
  }
  for (int M = 1; M <= m_max; ++M) {
    rows.push_back(
        {"C_enum", M, {BoundKind::Exact, c_constant_enum(measure, M), 0, 0}});
    rows.push_back({"C_closed", M, c_constant_closed(measure, M)});
  }
  return rows;
}

const char* kind_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::Exact: return "Exact";
    case BoundKind::Interval: return "Interval";
    case BoundKind::UpperBound: return "UpperBound";
  }
  return "?";
}

}  // namespace

std::string constants_table_csv(const MeasureSpec& measure, int m_max,
                                int r_max) {
  std::ostringstream out;
  out << "# dimtrunc " << kVersion << "\n";
  out << "measure,quantity,order,value,lo,hi,kind\n";
  for (const ConstantsRow& row : constants_rows(measure, m_max, r_max)) {
    out << csv_quote(measure.name()) << ',' << row.quantity << ','
        << row.order << ',';
    if (row.value.kind == BoundKind::Interval) {
      out << ',' << format_double(row.value.lo) << ','
          << format_double(row.value.hi);
    } else {
      out << format_double(row.value.value) << ",,";
    }
    out << ',' << kind_name(row.value.kind) << "\n";
  }
  return out.str();
}

std::string constants_table_json(const MeasureSpec& measure, int m_max,
                                 int r_max) {
  nlohmann::ordered_json doc;
  doc["version"] = kVersion;
  doc["measure"] = measure.name();
  auto& rows = doc["rows"];
  rows = nlohmann::ordered_json::array();
  for (const ConstantsRow& row : constants_rows(measure, m_max, r_max)) {
    nlohmann::ordered_json r;
    r["quantity"] = row.quantity;
    r["order"] = row.order;
    r["kind"] = kind_name(row.value.kind);
    if (row.value.kind == BoundKind::Interval) {
      r["lo"] = row.value.lo;
      r["hi"] = row.value.hi;
    } else {
      r["value"] = row.value.value;
    }
    rows.push_back(std::move(r));
  }
  return doc.dump(2) + "\n";
}

std::string bounds_table_csv(const ExperimentSpec& spec) {
  std::ostringstream out;
  append_metadata(out, spec);
  out << "k,formula_id,value,assumptions\n";
  for (long long k : spec.mc.k_grid) {
    const BoundReport report =
        target_bound(spec.target, spec.measure, spec.sequence, k);
    out << k << ',' << to_string(report.formula) << ','
        << format_double(report.value) << ','
        << csv_quote(join_assumptions(report.assumptions)) << "\n";
  }
  return out.str();
}

std::string bounds_table_json(const ExperimentSpec& spec) {
  nlohmann::ordered_json doc;
  doc["version"] = kVersion;
  doc["measure"] = spec.measure.name();
  doc["sequence"] = spec.sequence.name();
  doc["target"] = spec.target.name();
  auto& rows = doc["rows"];
  rows = nlohmann::ordered_json::array();
  for (long long k : spec.mc.k_grid) {
    const BoundReport report =
        target_bound(spec.target, spec.measure, spec.sequence, k);
    nlohmann::ordered_json r;
    r["k"] = k;
    r["formula_id"] = to_string(report.formula);
    r["value"] = report.value;
    r["assumptions"] = report.assumptions;
    rows.push_back(std::move(r));
  }
  return doc.dump(2) + "\n";
}

std::string sweep_table_csv(const ExperimentSpec& spec,
                            const std::vector<SweepRow>& rows,
                            const std::optional<DecayFit>& fit) {
  std::ostringstream out;
  append_metadata(out, spec);
  out << "k,estimate,std_error,bias_bound,bound,formula_id,ratio,clamped_flag\n";
  for (const SweepRow& row : rows) {
    out << row.k << ',' << format_double(row.estimate.value) << ','
        << format_double(row.estimate.std_error) << ','
        << format_double(row.estimate.bias_bound) << ','
        << format_double(row.bound.value) << ','
        << to_string(row.bound.formula) << ',' << format_double(row.ratio)
        << ',' << (row.estimate.clamped ? 1 : 0) << "\n";
  }
  if (fit.has_value()) {
    out << "# fit slope=" << format_double(fit->slope)
        << " intercept=" << format_double(fit->intercept)
        << " residual=" << format_double(fit->residual) << "\n";
  }
  return out.str();
}

std::string sweep_table_json(const ExperimentSpec& spec,
                             const std::vector<SweepRow>& rows,
                             const std::optional<DecayFit>& fit) {
  nlohmann::ordered_json doc;
  doc["version"] = kVersion;
  doc["measure"] = spec.measure.name();
  doc["sequence"] = spec.sequence.name();
  doc["target"] = spec.target.name();
  doc["seed"] = spec.mc.seed;
  doc["samples"] = spec.mc.samples;
  doc["ref_level"] = spec.mc.ref_level;
  if (spec.target.type == SweepTarget::Type::Kernel &&
      (spec.target.kernel.kind == Kernel::Korobov ||
       spec.target.kernel.kind == Kernel::Hermite)) {
    doc["series_cap"] = spec.target.kernel.series_cap;
  }
  auto& out_rows = doc["rows"];
  out_rows = nlohmann::ordered_json::array();
  for (const SweepRow& row : rows) {
    nlohmann::ordered_json r;
    r["k"] = row.k;
    r["estimate"] = row.estimate.value;
    r["std_error"] = row.estimate.std_error;
    if (row.estimate.bias_certified) {
      r["bias_bound"] = row.estimate.bias_bound;
    } else {
      r["bias_bound"] = nullptr;
    }
    r["bound"] = row.bound.value;
    r["formula_id"] = to_string(row.bound.formula);
    r["ratio"] = std::isfinite(row.ratio) ? nlohmann::ordered_json(row.ratio)
                                          : nlohmann::ordered_json("inf");
    r["clamped"] = row.estimate.clamped;
    r["assumptions"] = row.bound.assumptions;
    out_rows.push_back(std::move(r));
  }
  if (fit.has_value()) {
    doc["fit"] = {{"slope", fit->slope},
                  {"intercept", fit->intercept},
                  {"residual", fit->residual}};
  }
  return doc.dump(2) + "\n";
}

std::string sweep_plotdata_estimate(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  for (const SweepRow& row : rows) {
    out << row.k << ' ' << format_double(row.estimate.value) << ' '
        << format_double(row.estimate.std_error) << "\n";
  }
  return out.str();
}

std::string sweep_plotdata_bound(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  for (const SweepRow& row : rows) {
    out << row.k << ' ' << format_double(row.bound.value) << ' '
        << format_double(0.0) << "\n";
  }
  return out.str();
}

}  // namespace dimtrunc
