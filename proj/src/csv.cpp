// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lemtrap/csv.hpp"

#include "lemtrap/error.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace lemtrap {

namespace {

constexpr const char* kConfigPrefix = "config: ";
constexpr const char* kResultPrefix = "result: ";

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_cell(const CsvCell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(const std::string& v) const { return quote(v); }
  };
  return std::visit(Visitor{}, cell);
}

CsvCell optional_real(const std::optional<double>& value) {
  if (!value) return std::monostate{};
  return *value;
}

CsvCell integer(std::int64_t value) { return value; }

std::string_view status_name(FitStatus status) {
  switch (status) {
    case FitStatus::kFitted: return "fitted";
    case FitStatus::kUpperLimit: return "upper_limit";
    case FitStatus::kNoiseless: return "noiseless";
  }
  return "fitted";
}

std::string_view verdict_name(Consistency verdict) {
  switch (verdict) {
    case Consistency::kConsistent: return "consistent";
    case Consistency::kInconsistent: return "inconsistent";
    case Consistency::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

}  // namespace

void CsvTable::add_summary(std::string key, double value) {
  summary.emplace_back(std::move(key), format_real(value));
}

void CsvTable::add_summary(std::string key, std::string value) {
  summary.emplace_back(std::move(key), std::move(value));
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.16e", value);
  return buffer;
}

double parse_real(std::string_view cell) {
  const std::string text(cell);
  if (text.empty()) throw Error(ErrorKind::kValidation, "cli_io.parse_real", "empty cell");
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) {
    throw Error(ErrorKind::kValidation, "cli_io.parse_real", "not a number: '" + text + "'");
  }
  return value;
}

std::string to_csv(const CsvTable& table) {
  std::string out;
  out += "# lemtrap ";
  out += kVersion;
  out += "\n# seed: " + std::to_string(table.seed) + "\n";
  std::istringstream echo(table.config_echo);
  for (std::string line; std::getline(echo, line);) {
    out += "# ";
    out += kConfigPrefix;
    out += line;
    out += '\n';
  }
  for (const auto& [key, value] : table.summary) {
    out += "# ";
    out += kResultPrefix;
    out += key + " = " + value + "\n";
  }
  for (std::size_t k = 0; k < table.header.size(); ++k) {
    if (k) out += ',';
    out += quote(table.header[k]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += format_cell(row[k]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const CsvTable& table, std::ostream& out) {
  out << to_csv(table);
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "cli_io.emit_csv", "failed to write output stream");
}

void write_csv(const CsvTable& table, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorKind::kIo, "cli_io.emit_csv", "cannot open '" + path.string() + "' for writing");
  file << to_csv(table);
  file.close();
  if (!file) throw Error(ErrorKind::kIo, "cli_io.emit_csv", "failed writing '" + path.string() + "'");
}

ParsedCsv parse_csv(std::string_view text) {
  ParsedCsv parsed;
  std::size_t pos = 0;
  auto fail = [](const std::string& what) -> void {
    throw Error(ErrorKind::kValidation, "cli_io.parse_csv", what);
  };

  while (pos < text.size() && text[pos] == '#') {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos + 1, end - pos - 1);
    if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    parsed.comments.emplace_back(line);
    pos = end + 1;
  }

  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (quoted) {
      if (c == '"') {
        if (pos + 1 < text.size() && text[pos + 1] == '"') {
          field += '"';
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      if (field_started) fail("quote inside an unquoted field");
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (c == '\n') {
      record.push_back(std::move(field));
      records.push_back(std::move(record));
      field.clear();
      record.clear();
      field_started = false;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) fail("unterminated quoted field");
  if (field_started || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }

  if (records.empty()) return parsed;
  parsed.header = std::move(records.front());
  for (std::size_t k = 1; k < records.size(); ++k) {
    if (records[k].size() != parsed.header.size()) {
      fail("row " + std::to_string(k) + " has " + std::to_string(records[k].size()) + " fields, header has " +
           std::to_string(parsed.header.size()));
    }
    parsed.rows.push_back(std::move(records[k]));
  }
  return parsed;
}

CsvTable spectrum_table(const EigenSystem& eig) {
  CsvTable table;
  table.header = {"index", "eigenvalue", "dominant_config", "dominant_weight"};
  table.add_summary("dimension", std::to_string(eig.dim()));
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    Eigen::Index dominant = 0;
    eig.vectors.col(k).cwiseAbs().maxCoeff(&dominant);
    const double amplitude = eig.vectors(dominant, k);
    table.rows.push_back({integer(k), eig.values(k),
                          SpinConfiguration(eig.n(), static_cast<std::uint32_t>(dominant)).to_string(),
                          amplitude * amplitude});
  }
  return table;
}

CsvTable landscape_table(const LandscapeReport& report) {
  CsvTable table;
  table.header = {"config", "energy", "distance_to_global", "kind"};
  const auto lem = report.primary_lem();
  table.add_summary("global_minimum", report.global_minimum.to_string());
  table.add_summary("global_energy", report.global_energy);
  table.add_summary("primary_lem", lem ? lem->config.to_string() : std::string("none"));
  table.add_summary("local_minima", std::to_string(report.local_minima.size()));
  table.add_summary("degenerate", std::string(report.degenerate ? "true" : "false"));
  table.add_summary("tolerance", report.tolerance);
  table.rows.push_back({report.global_minimum.to_string(), report.global_energy, integer(0), std::string("global")});
  for (const auto& m : report.local_minima) {
    const bool primary = lem && lem->config == m.config;
    table.rows.push_back({m.config.to_string(), m.energy, integer(m.distance_to_global),
                          std::string(primary ? "primary_lem" : "local")});
  }
  return table;
}

CsvTable overlaps_table(const DressedState& state, const OverlapDecay& decay) {
  CsvTable table;
  table.header = {"distance", "max_amplitude", "clamped"};
  table.add_summary("anchor", state.anchor.to_string());
  table.add_summary("eigenindex", std::to_string(state.eigenindex));
  table.add_summary("eigenvalue", state.eigenvalue);
  table.add_summary("overlap2", state.overlap2);
  table.add_summary("slope", decay.slope ? format_real(*decay.slope) : std::string());
  table.add_summary("intercept", decay.intercept ? format_real(*decay.intercept) : std::string());
  for (const auto& p : decay.points) {
    table.rows.push_back({integer(p.distance), p.max_amplitude, integer(p.clamped ? 1 : 0)});
  }
  return table;
}

CsvTable rates_table(const RateReport& report, const BoundVerdict& verdict) {
  CsvTable table;
  table.header = {"spin", "sigma_z", "sigma_x"};
  const int n = report.ground_anchor.width();
  table.add_summary("ground", report.ground_anchor.to_string());
  table.add_summary("lem", report.lem_anchor.to_string());
  table.add_summary("matrix_element", report.matrix_element);
  table.add_summary("coupling_scale", report.coupling_scale);
  table.add_summary("rate_ratio", report.rate_ratio);
  table.add_summary("A_typ", verdict.typical_spacing);
  table.add_summary("ratio", verdict.ratio);
  table.add_summary("eq4_bound", verdict.bound);
  table.add_summary("bound_satisfied", std::string(verdict.satisfied ? "true" : "false"));
  table.add_summary("bound_margin", verdict.margin);
  if (verdict.ratio > 0.0 && verdict.ratio < 1.0) {
    table.add_summary("lifetime_extension", lifetime_extension(n, verdict.ratio));
  }
  for (const auto& c : report.channels) table.rows.push_back({integer(c.spin), c.sigma_z, c.sigma_x});
  return table;
}

CsvTable pathsum_table(const std::vector<PathSumResult>& results, std::optional<double> exponent) {
  CsvTable table;
  table.header = {"source", "target", "order", "amplitude", "path_count", "rate_ratio"};
  table.add_summary("scaling_exponent", exponent ? format_real(*exponent) : std::string());
  for (const auto& r : results) {
    table.rows.push_back({r.source.to_string(), r.target.to_string(), integer(r.order), r.amplitude,
                          integer(static_cast<std::int64_t>(r.path_count)), r.rate_ratio});
  }
  return table;
}

CsvTable trace_table(const CoherenceTrace& trace, const std::optional<RateComparison>& comparison) {
  CsvTable table;
  table.header = {"time", "coherence", "coherence_error"};
  table.add_summary("ground", trace.ground_anchor.to_string());
  table.add_summary("lem", trace.lem_anchor.to_string());
  table.add_summary("fitted_rate", trace.fitted_rate);
  table.add_summary("fit_quality", trace.fit_quality);
  table.add_summary("status", std::string(status_name(trace.status)));
  table.add_summary("fit_points", std::to_string(trace.fit_points));
  table.add_summary("splitting", trace.splitting);
  table.add_summary("time_step", trace.time_step);
  table.add_summary("total_time", trace.total_time);
  table.add_summary("steps", std::to_string(trace.steps));
  table.add_summary("trajectories", std::to_string(trace.trajectory_count));
  if (comparison) {
    table.add_summary("predicted_rate", comparison->predicted_rate);
    table.add_summary("fitted_over_predicted", comparison->ratio);
    table.add_summary("verdict", std::string(verdict_name(comparison->verdict)));
  }
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    table.rows.push_back({trace.times[k], trace.coherence[k], trace.coherence_error[k]});
  }
  return table;
}

CsvTable sweep_table(const std::vector<SweepRow>& rows) {
  CsvTable table;
  table.header = {"n",         "ratio",         "A_typ",         "matrix_element",       "rate_ratio",
                  "eq4_bound", "bound_margin",  "overlap_slope", "pathsum_slope",        "fitted_dynamics_rate",
                  "seed",      "error",         "error_detail"};
  for (const auto& r : rows) {
    table.rows.push_back({integer(r.n), r.ratio, r.typical_spacing, optional_real(r.matrix_element),
                          optional_real(r.rate_ratio), optional_real(r.eq4_bound), optional_real(r.bound_margin),
                          optional_real(r.overlap_slope), optional_real(r.pathsum_slope),
                          optional_real(r.fitted_dynamics_rate), std::to_string(r.seed),
                          r.error ? std::string(to_string(*r.error)) : std::string(), r.error_detail});
  }
  return table;
}

}  // namespace lemtrap
