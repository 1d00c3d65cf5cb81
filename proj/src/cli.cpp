// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lemtrap/cli.hpp"

#include "lemtrap/config.hpp"
#include "lemtrap/csv.hpp"
#include "lemtrap/dynamics.hpp"
#include "lemtrap/error.hpp"
#include "lemtrap/perturbation.hpp"
#include "lemtrap/spectrum.hpp"
#include "lemtrap/sweep.hpp"
#include "lemtrap/transition.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace lemtrap {

namespace {

struct Options {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cli_io.command_surface", "cannot read config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

const ClusterParams& require_cluster(const RunConfig& config) {
  if (!config.cluster) throw Error(ErrorKind::kValidation, "cli_io.command_surface", "a [cluster] section is required");
  return *config.cluster;
}

std::optional<std::pair<SpinConfiguration, SpinConfiguration>> explicit_anchors(const RunConfig& config) {
  if (config.ground && config.lem) return std::make_pair(*config.ground, *config.lem);
  if (config.ground || config.lem) {
    throw Error(ErrorKind::kValidation, "cli_io.command_surface", "'ground' and 'lem' must be given together");
  }
  return std::nullopt;
}

SpinConfiguration ground_anchor(const RunConfig& config, const ClusterParams& params) {
  return config.ground ? *config.ground : find_local_minima(params).global_minimum;
}

double spacing(const RunConfig& config, const ClusterParams& params, const SpinConfiguration& ground) {
  return config.typical_spacing ? *config.typical_spacing : typical_level_spacing(params, ground);
}

using Summary = std::vector<std::string>;

CsvTable run_spectrum(const RunConfig& config, Summary& summary) {
  const EigenSystem eig = diagonalize(build_hamiltonian(require_cluster(config)));
  summary.push_back("dimension " + std::to_string(eig.dim()) + ", lowest eigenvalue " +
                    format_number(eig.values(0)));
  return spectrum_table(eig);
}

CsvTable run_landscape(const RunConfig& config, Summary& summary) {
  const LandscapeReport report = find_local_minima(require_cluster(config));
  const auto lem = report.primary_lem();
  summary.push_back("global minimum " + report.global_minimum.to_string() + " (E = " +
                    format_number(report.global_energy) + ")");
  summary.push_back(std::to_string(report.local_minima.size()) + " local minima" +
                    (lem ? ", primary LEM " + lem->config.to_string() : std::string()));
  if (report.degenerate) summary.push_back("warning: degenerate minima within tolerance");
  return landscape_table(report);
}

CsvTable run_overlaps(const RunConfig& config, Summary& summary) {
  const ClusterParams& params = require_cluster(config);
  const EigenSystem eig = diagonalize(build_hamiltonian(params));
  const DressedState state = dress(eig, ground_anchor(config, params));
  const OverlapDecay decay = overlap_decay(state);
  summary.push_back("anchor " + state.anchor.to_string() + ", overlap^2 " + format_number(state.overlap2));
  if (decay.slope) summary.push_back("log10 amplitude slope per flip " + format_number(*decay.slope));
  return overlaps_table(state, decay);
}

CsvTable run_rates(const RunConfig& config, Summary& summary) {
  const ClusterParams& params = require_cluster(config);
  const auto [ground, lem] = resolve_anchors(params, explicit_anchors(config));
  const double a_typ = spacing(config, params, ground);
  const CouplingSpec coupling = config.coupling(a_typ);
  const EigenSystem eig = diagonalize(build_hamiltonian(params));
  const RateReport report = matrix_element(dress(eig, ground), dress(eig, lem), coupling);
  const BoundVerdict verdict = check_bound(report, params, coupling, a_typ);
  summary.push_back(ground.to_string() + " -> " + lem.to_string() + ": rate ratio " +
                    format_number(report.rate_ratio) + ", bound " + format_number(verdict.bound) +
                    (verdict.satisfied ? " (satisfied)" : " (violated)"));
  return rates_table(report, verdict);
}

CsvTable run_pathsum(const RunConfig& config, Summary& summary) {
  const ClusterParams& params = require_cluster(config);
  const auto [ground, lem] = resolve_anchors(params, explicit_anchors(config));
  const CouplingSpec coupling = config.coupling(spacing(config, params, ground));
  std::vector<PathSumResult> results;
  std::vector<std::pair<int, double>> amplitudes;
  std::uint32_t bits = ground.bits();
  const std::uint32_t differing = ground.bits() ^ lem.bits();
  for (int i = 0; i < params.n(); ++i) {
    if (!((differing >> i) & 1U)) continue;
    bits ^= 1U << i;
    results.push_back(multiphoton_path_sum(params, coupling, ground, SpinConfiguration(params.n(), bits)));
    amplitudes.emplace_back(results.back().order, results.back().amplitude);
  }
  std::optional<double> exponent;
  if (amplitudes.size() >= 3) exponent = scaling_exponent(amplitudes);
  summary.push_back(ground.to_string() + " -> " + lem.to_string() + ": order " +
                    std::to_string(results.empty() ? 0 : results.back().order) + " amplitude " +
                    format_number(results.empty() ? 0.0 : results.back().amplitude));
  if (exponent) summary.push_back("log10 amplitude slope per order " + format_number(*exponent));
  return pathsum_table(results, exponent);
}

CsvTable run_dynamics(const RunConfig& config, Summary& summary) {
  const ClusterParams& params = require_cluster(config);
  const auto anchors = resolve_anchors(params, explicit_anchors(config));
  const double a_typ = spacing(config, params, anchors.first);
  const CouplingSpec noise = config.coupling(a_typ);
  const EigenSystem eig = diagonalize(build_hamiltonian(params));

  TrajectoryConfig tcfg = default_trajectory_config(params, eig, noise, config.seed, anchors);
  const DynamicsSection& d = config.dynamics;
  tcfg.time_step = d.time_step / a_typ;
  if (d.total_time) tcfg.total_time = *d.total_time / a_typ;
  tcfg.trajectory_count = d.trajectories;
  tcfg.sample_count = d.samples;
  const CoherenceTrace trace = evolve_superposition(params, eig, tcfg);

  std::optional<RateComparison> comparison;
  if (d.calibration) {
    const RateReport report =
        matrix_element(dress(eig, anchors.first), dress(eig, anchors.second), noise);
    comparison = rate_vs_prediction(trace, report, Calibration{*d.calibration});
  }
  summary.push_back("fitted rate " + format_number(trace.fitted_rate) + " (R^2 " +
                    format_number(trace.fit_quality) + ", " + std::to_string(trace.steps) + " steps x " +
                    std::to_string(trace.trajectory_count) + " trajectories)");
  if (comparison) summary.push_back("fitted / predicted " + format_number(comparison->ratio));
  return trace_table(trace, comparison);
}

CsvTable run_sweep_command(const RunConfig& config, Summary& summary) {
  const std::vector<SweepRow> rows = run_sweep(config.sweep_grid());
  CsvTable table = sweep_table(rows);
  int failed = 0;
  for (const auto& row : rows) failed += row.error ? 1 : 0;
  summary.push_back(std::to_string(rows.size()) + " rows, " + std::to_string(failed) + " with errors");
  for (const char* column : {"rate_ratio", "eq4_bound", "fitted_dynamics_rate"}) {
    try {
      const SizeScalingFit fit = fit_size_scaling(rows, column);
      table.add_summary(std::string(column) + "_slope", fit.slope);
      table.add_summary(std::string(column) + "_r_squared", fit.r_squared);
      summary.push_back(std::string("log10 ") + column + " slope per spin " + format_number(fit.slope));
    } catch (const Error&) {
      // Not enough rows with this column; the table still carries every row.
    }
  }
  return table;
}

const std::map<std::string, std::function<CsvTable(const RunConfig&, Summary&)>>& pipelines() {
  static const std::map<std::string, std::function<CsvTable(const RunConfig&, Summary&)>> table{
      {"spectrum", run_spectrum}, {"landscape", run_landscape}, {"overlaps", run_overlaps},
      {"rates", run_rates},       {"pathsum", run_pathsum},     {"dynamics", run_dynamics},
      {"sweep", run_sweep_command},
  };
  return table;
}

int run(const std::string& command, const Options& options, std::ostream& out, std::ostream& err) {
  RunConfig config = parse_config(read_file(options.config_path));
  if (options.seed) config.seed = *options.seed;

  Summary summary;
  CsvTable table = pipelines().at(command)(config, summary);
  table.seed = config.seed;
  table.config_echo = emit_config(config);

  const std::string destination = !options.out_path.empty() ? options.out_path : config.output_path.value_or("");
  if (destination.empty() || destination == "-") {
    write_csv(table, out);
  } else {
    write_csv(table, std::filesystem::path(destination));
  }
  if (!options.quiet) {
    err << "lemtrap " << command << ": ";
    for (std::size_t k = 0; k < summary.size(); ++k) err << (k ? "; " : "") << summary[k];
    err << "\n";
  }
  return 0;
}

}  // namespace

int command_surface(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local energy minima as protected qubit states: spectra, rates and noisy dynamics.", "lemtrap"};
  app.require_subcommand(1);
  Options options;
  std::string chosen;
  for (const auto& [name, fn] : pipelines()) {
    CLI::App* sub = app.add_subcommand(name, "Run the " + name + " pipeline");
    sub->add_option("--config", options.config_path, "Run configuration file")->required();
    sub->add_option("--out", options.out_path, "Output CSV path (default: standard output)");
    sub->add_option("--seed", options.seed, "Override the configured seed");
    sub->add_flag("--quiet", options.quiet, "No summary on standard error");
    sub->callback([&chosen, name = name] { chosen = name; });
  }

  if (!args.empty() && !args.front().starts_with("-") && !pipelines().contains(args.front())) {
    err << "error: unknown subcommand '" << args.front() << "'\n\n" << app.help();
    return 1;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    return run(chosen, options, out, err);
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "] " << e.what() << "\n";
    return exit_status(e.kind());
  } catch (const std::exception& e) {
    err << "error [internal] " << e.what() << "\n";
    return 2;
  }
}

}  // namespace lemtrap
