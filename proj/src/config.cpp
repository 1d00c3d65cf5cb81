// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lemtrap/config.hpp"

#include "lemtrap/error.hpp"

#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace lemtrap {

namespace {

constexpr const char* kWhere = "cli_io.parse_config";

struct Entry {
  std::vector<std::string> values;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"run", {"seed"}},
      {"cluster", {"n", "B", "C", "A_typ", "ground", "lem"}},
      {"couplings", {"uniform", "J", "matrix"}},
      {"noise", {"f", "g", "kind", "tau"}},
      {"dynamics", {"time_step", "total_time", "trajectories", "samples", "calibration"}},
      {"sweep", {"n", "ratio", "family", "coupling", "bias", "channels"}},
      {"output", {"path"}},
  };
  return keys;
}

[[noreturn]] void fail(int line, const std::string& message, ErrorKind kind = ErrorKind::kValidation) {
  throw Error(kind, kWhere, "line " + std::to_string(line) + ": " + message);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string word; in >> word;) out.push_back(word);
  return out;
}

std::map<std::string, Section> tokenize(std::string_view text) {
  std::map<std::string, Section> sections;
  std::string current;
  Entry* last = nullptr;
  int line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_number, "unterminated section header");
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_keys().contains(current)) fail(line_number, "unknown section [" + current + "]");
      if (sections.contains(current)) fail(line_number, "section [" + current + "] appears twice");
      sections[current];
      last = nullptr;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      // Continuation of the previous vector value.
      if (last == nullptr) fail(line_number, "expected 'key = value'");
      for (auto& word : split_words(line)) last->values.push_back(std::move(word));
      continue;
    }
    if (current.empty()) fail(line_number, "key outside of any section");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) fail(line_number, "missing key before '='");
    if (!known_keys().at(current).contains(key)) fail(line_number, "unknown key '" + key + "' in [" + current + "]");
    Section& section = sections[current];
    if (section.contains(key)) fail(line_number, "duplicate key '" + key + "'");
    Entry& entry = section[key];
    entry.line = line_number;
    entry.values = split_words(line.substr(eq + 1));
    if (entry.values.empty()) fail(line_number, "key '" + key + "' has no value");
    last = &entry;
    if (end == text.size()) break;
  }
  return sections;
}

double to_double(const std::string& word, int line, const std::string& key) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || ptr != word.data() + word.size() || !std::isfinite(value)) {
    fail(line, "'" + key + "' expects a finite number, got '" + word + "'");
  }
  return value;
}

template <typename Int>
Int to_integer(const std::string& word, int line, const std::string& key) {
  Int value = 0;
  const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || ptr != word.data() + word.size()) {
    fail(line, "'" + key + "' expects an integer, got '" + word + "'");
  }
  return value;
}

const Entry* find(const Section& section, const std::string& key) {
  const auto it = section.find(key);
  return it == section.end() ? nullptr : &it->second;
}

const std::string& single(const Entry& entry, const std::string& key) {
  if (entry.values.size() != 1) fail(entry.line, "'" + key + "' expects a single value");
  return entry.values.front();
}

double single_double(const Entry& entry, const std::string& key) {
  return to_double(single(entry, key), entry.line, key);
}

std::vector<double> doubles(const Entry& entry, const std::string& key) {
  std::vector<double> out;
  for (const auto& word : entry.values) out.push_back(to_double(word, entry.line, key));
  return out;
}

/// Scalar broadcast or exact length n.
std::vector<double> per_spin(const Entry& entry, const std::string& key, int n) {
  std::vector<double> values = doubles(entry, key);
  if (values.size() == 1) return std::vector<double>(static_cast<std::size_t>(n), values.front());
  if (values.size() != static_cast<std::size_t>(n)) {
    fail(entry.line,
         "'" + key + "' has " + std::to_string(values.size()) + " values, expected 1 or n=" + std::to_string(n),
         ErrorKind::kDimension);
  }
  return values;
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::MatrixXd parse_couplings(const Section* section, int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  if (section == nullptr) return j;
  const Entry* uniform = find(*section, "uniform");
  const Entry* upper = find(*section, "J");
  const Entry* full = find(*section, "matrix");
  if ((uniform != nullptr) + (upper != nullptr) + (full != nullptr) > 1) {
    const Entry* second = full ? full : upper;
    fail(second->line, "[couplings] takes exactly one of uniform, J, matrix");
  }
  if (uniform) {
    j.setConstant(single_double(*uniform, "uniform"));
    j.diagonal().setZero();
  } else if (upper) {
    const std::vector<double> values = doubles(*upper, "J");
    const auto expected = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
    if (values.size() != expected) {
      fail(upper->line,
           "'J' has " + std::to_string(values.size()) + " values, expected n(n-1)/2=" + std::to_string(expected),
           ErrorKind::kDimension);
    }
    std::size_t k = 0;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        j(a, b) = values[k];
        j(b, a) = values[k];
        ++k;
      }
    }
  } else if (full) {
    const std::vector<double> values = doubles(*full, "matrix");
    if (values.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
      fail(full->line, "'matrix' needs n*n=" + std::to_string(n * n) + " values", ErrorKind::kDimension);
    }
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) j(a, b) = values[static_cast<std::size_t>(a * n + b)];
    }
    for (int a = 0; a < n; ++a) {
      if (j(a, a) != 0.0) fail(full->line, "'matrix' must have a zero diagonal");
      for (int b = a + 1; b < n; ++b) {
        if (j(a, b) != j(b, a)) {
          fail(full->line, "'matrix' is not symmetric at (" + std::to_string(a) + "," + std::to_string(b) + ")");
        }
      }
    }
  }
  return j;
}

SpinConfiguration parse_anchor(const Entry& entry, const std::string& key, int n) {
  const std::string& word = single(entry, key);
  try {
    const SpinConfiguration config = SpinConfiguration::parse(word);
    if (config.width() != n) {
      fail(entry.line, "'" + key + "' has width " + std::to_string(config.width()) + ", expected n=" +
                           std::to_string(n), ErrorKind::kDimension);
    }
    return config;
  } catch (const Error& e) {
    if (e.where() == kWhere) throw;
    fail(entry.line, "'" + key + "' must be a 0/1 string of length n");
  }
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ' ';
    out += format_number(values[k]);
  }
  return out;
}

std::string join(const Eigen::VectorXd& values) {
  return join(std::vector<double>(values.data(), values.data() + values.size()));
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

RunConfig parse_config(std::string_view text) {
  const auto sections = tokenize(text);
  auto section = [&](const std::string& name) -> const Section* {
    const auto it = sections.find(name);
    return it == sections.end() ? nullptr : &it->second;
  };

  RunConfig config;
  if (const Section* run = section("run")) {
    if (const Entry* seed = find(*run, "seed")) {
      config.seed = to_integer<std::uint64_t>(single(*seed, "seed"), seed->line, "seed");
    }
  }

  if (section("couplings") && !section("cluster")) {
    throw Error(ErrorKind::kValidation, kWhere, "[couplings] requires a [cluster] section");
  }

  std::optional<int> n;
  if (const Section* cluster = section("cluster")) {
    const Entry* n_entry = find(*cluster, "n");
    if (!n_entry) throw Error(ErrorKind::kValidation, kWhere, "[cluster] requires 'n'");
    n = to_integer<int>(single(*n_entry, "n"), n_entry->line, "n");
    if (*n < 1) fail(n_entry->line, "'n' must be positive");
    if (*n > kMaxSpins) fail(n_entry->line, "'n' exceeds " + std::to_string(kMaxSpins), ErrorKind::kCapacity);

    const std::size_t count = static_cast<std::size_t>(*n);
    std::vector<double> bias(count, 0.0);
    std::vector<double> tunneling(count, 0.0);
    if (const Entry* b = find(*cluster, "B")) bias = per_spin(*b, "B", *n);
    if (const Entry* c = find(*cluster, "C")) tunneling = per_spin(*c, "C", *n);
    config.cluster = ClusterParams(parse_couplings(section("couplings"), *n), to_eigen(bias), to_eigen(tunneling));
    if (const Entry* a = find(*cluster, "A_typ")) {
      config.typical_spacing = single_double(*a, "A_typ");
      if (!(*config.typical_spacing > 0.0)) fail(a->line, "'A_typ' must be positive");
    }
    if (const Entry* g = find(*cluster, "ground")) config.ground = parse_anchor(*g, "ground", *n);
    if (const Entry* l = find(*cluster, "lem")) config.lem = parse_anchor(*l, "lem", *n);
  }

  if (const Section* noise = section("noise")) {
    NoiseSection out;
    const int width = n.value_or(1);
    auto amplitudes = [&](const char* key) {
      const Entry* entry = find(*noise, key);
      std::vector<double> values =
          entry ? (n ? per_spin(*entry, key, *n) : doubles(*entry, key)) : std::vector<double>(width, 0.0);
      if (entry && !n && values.size() != 1) {
        fail(entry->line, std::string("'") + key + "' must be a scalar without a [cluster] section",
             ErrorKind::kDimension);
      }
      for (double v : values) {
        if (v < 0.0) fail(entry->line, std::string("'") + key + "' amplitudes must be non-negative");
      }
      return values;
    };
    out.f = amplitudes("f");
    out.g = amplitudes("g");
    if (const Entry* kind = find(*noise, "kind")) {
      const std::string& word = single(*kind, "kind");
      if (word == "ou") {
        out.kind = NoiseKind::kOrnsteinUhlenbeck;
      } else if (word == "white") {
        out.kind = NoiseKind::kWhite;
      } else {
        fail(kind->line, "'kind' must be 'ou' or 'white', got '" + word + "'");
      }
    }
    if (const Entry* tau = find(*noise, "tau")) {
      out.tau = single_double(*tau, "tau");
      if (!(out.tau > 0.0)) fail(tau->line, "'tau' must be positive");
    }
    config.noise = std::move(out);
  }

  if (const Section* dynamics = section("dynamics")) {
    DynamicsSection& d = config.dynamics;
    if (const Entry* e = find(*dynamics, "time_step")) {
      d.time_step = single_double(*e, "time_step");
      if (!(d.time_step > 0.0)) fail(e->line, "'time_step' must be positive");
    }
    if (const Entry* e = find(*dynamics, "total_time")) {
      if (single(*e, "total_time") != "auto") {
        d.total_time = single_double(*e, "total_time");
        if (!(*d.total_time > 0.0)) fail(e->line, "'total_time' must be positive");
      }
    }
    if (const Entry* e = find(*dynamics, "trajectories")) {
      d.trajectories = to_integer<int>(single(*e, "trajectories"), e->line, "trajectories");
      if (d.trajectories < 1) fail(e->line, "'trajectories' must be at least 1");
    }
    if (const Entry* e = find(*dynamics, "samples")) {
      d.samples = to_integer<int>(single(*e, "samples"), e->line, "samples");
      if (d.samples < 2) fail(e->line, "'samples' must be at least 2");
    }
    if (const Entry* e = find(*dynamics, "calibration")) {
      if (single(*e, "calibration") != "none") {
        d.calibration = single_double(*e, "calibration");
        if (!(*d.calibration > 0.0)) fail(e->line, "'calibration' must be positive");
      }
    }
  }

  if (const Section* sweep = section("sweep")) {
    SweepSection s;
    const Entry* n_entry = find(*sweep, "n");
    const Entry* ratio_entry = find(*sweep, "ratio");
    if (!n_entry || !ratio_entry) throw Error(ErrorKind::kValidation, kWhere, "[sweep] requires 'n' and 'ratio'");
    for (const auto& word : n_entry->values) s.n_values.push_back(to_integer<int>(word, n_entry->line, "n"));
    s.ratio_values = doubles(*ratio_entry, "ratio");
    for (double r : s.ratio_values) {
      if (!(r > 0.0 && r < 1.0)) fail(ratio_entry->line, "'ratio' values must lie in (0, 1)");
    }
    if (const Entry* e = find(*sweep, "family")) {
      const std::string& word = single(*e, "family");
      if (word == "explicit") {
        s.explicit_family = true;
        if (!config.cluster) fail(e->line, "family = explicit needs a [cluster] section");
      } else if (word != "uniform") {
        fail(e->line, "'family' must be 'uniform' or 'explicit'");
      }
    }
    if (const Entry* e = find(*sweep, "coupling")) s.coupling = single_double(*e, "coupling");
    if (const Entry* e = find(*sweep, "bias")) s.bias = single_double(*e, "bias");
    if (const Entry* e = find(*sweep, "channels")) {
      for (const auto& word : e->values) {
        if (word == "overlaps") {
          s.channels.overlaps = true;
        } else if (word == "rates") {
          s.channels.rates = true;
        } else if (word == "pathsum") {
          s.channels.pathsum = true;
        } else if (word == "dynamics") {
          s.channels.dynamics = true;
        } else if (word != "none") {
          fail(e->line, "unknown channel '" + word + "'");
        }
      }
    }
    config.sweep = std::move(s);
  }

  if (const Section* output = section("output")) {
    if (const Entry* e = find(*output, "path")) config.output_path = single(*e, "path");
  }
  return config;
}

std::string emit_config(const RunConfig& config) {
  std::ostringstream out;
  out << "[run]\n"
      << "seed = " << config.seed << "\n";

  if (config.cluster) {
    const ClusterParams& p = *config.cluster;
    out << "\n[cluster]\n"
        << "n = " << p.n() << "\n"
        << "B = " << join(p.bias()) << "\n"
        << "C = " << join(p.tunneling()) << "\n";
    if (config.typical_spacing) out << "A_typ = " << format_number(*config.typical_spacing) << "\n";
    if (config.ground) out << "ground = " << config.ground->to_string() << "\n";
    if (config.lem) out << "lem = " << config.lem->to_string() << "\n";
    if (p.n() > 1) {
      std::vector<double> upper;
      for (int a = 0; a < p.n(); ++a) {
        for (int b = a + 1; b < p.n(); ++b) upper.push_back(p.coupling()(a, b));
      }
      out << "\n[couplings]\n"
          << "J = " << join(upper) << "\n";
    }
  }

  if (config.noise) {
    const NoiseSection& noise = *config.noise;
    out << "\n[noise]\n"
        << "f = " << join(noise.f) << "\n"
        << "g = " << join(noise.g) << "\n"
        << "kind = " << (noise.kind == NoiseKind::kWhite ? "white" : "ou") << "\n"
        << "tau = " << format_number(noise.tau) << "\n";
  }

  const DynamicsSection& d = config.dynamics;
  out << "\n[dynamics]\n"
      << "time_step = " << format_number(d.time_step) << "\n"
      << "total_time = " << (d.total_time ? format_number(*d.total_time) : "auto") << "\n"
      << "trajectories = " << d.trajectories << "\n"
      << "samples = " << d.samples << "\n"
      << "calibration = " << (d.calibration ? format_number(*d.calibration) : "none") << "\n";

  if (config.sweep) {
    const SweepSection& s = *config.sweep;
    out << "\n[sweep]\n"
        << "n =";
    for (int n : s.n_values) out << ' ' << n;
    out << "\nratio = " << join(s.ratio_values) << "\n"
        << "family = " << (s.explicit_family ? "explicit" : "uniform") << "\n"
        << "coupling = " << format_number(s.coupling) << "\n"
        << "bias = " << format_number(s.bias) << "\n"
        << "channels =";
    const SweepChannels& c = s.channels;
    if (!(c.overlaps || c.rates || c.pathsum || c.dynamics)) out << " none";
    if (c.overlaps) out << " overlaps";
    if (c.rates) out << " rates";
    if (c.pathsum) out << " pathsum";
    if (c.dynamics) out << " dynamics";
    out << "\n";
  }

  if (config.output_path) {
    out << "\n[output]\n"
        << "path = " << *config.output_path << "\n";
  }
  return out.str();
}

CouplingSpec RunConfig::coupling(double typical_spacing) const {
  if (!noise) throw Error(ErrorKind::kValidation, "cli_io.RunConfig", "a [noise] section is required");
  if (cluster && noise->f.size() != static_cast<std::size_t>(cluster->n())) {
    throw Error(ErrorKind::kDimension, "cli_io.RunConfig", "noise amplitudes do not match n");
  }
  return CouplingSpec(to_eigen(noise->f), to_eigen(noise->g), noise->kind, noise->tau / typical_spacing);
}

SweepGrid RunConfig::sweep_grid() const {
  if (!sweep) throw Error(ErrorKind::kValidation, "cli_io.RunConfig", "a [sweep] section is required");
  SweepGrid grid;
  grid.n_values = sweep->n_values;
  grid.ratio_values = sweep->ratio_values;
  if (sweep->explicit_family) {
    grid.family = ExplicitFamily{*cluster};
  } else {
    grid.family = UniformFamily{sweep->coupling, sweep->bias};
  }
  grid.channels = sweep->channels;
  grid.dynamics.trajectory_count = dynamics.trajectories;
  grid.dynamics.sample_count = dynamics.samples;
  if (noise) {
    grid.dynamics.kind = noise->kind;
    grid.dynamics.correlation_time_units = noise->tau;
  }
  grid.seed = seed;
  return grid;
}

}  // namespace lemtrap
