// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file csv.hpp
 * @brief Result tables and their CSV serialization.
 *
 * Layout: one block of '#' comment lines (tool version, seed, the full
 * configuration echo, then summary results as `key = value`), a header row,
 * and data rows. Reals are written as %.16e (17 significant digits), so
 * parsing a cell gives back the exact double. Lines end in LF; fields with a
 * comma, quote or line break are quoted RFC-4180 style. Missing values are
 * empty cells.
 */

#pragma once

#include "lemtrap/dynamics.hpp"
#include "lemtrap/perturbation.hpp"
#include "lemtrap/spectrum.hpp"
#include "lemtrap/sweep.hpp"
#include "lemtrap/transition.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace lemtrap {

inline constexpr std::string_view kVersion = "0.1.0";

using CsvCell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct CsvTable {
  std::uint64_t seed = 0;
  std::string config_echo;  ///< emitted config text, one '#' line per line
  std::vector<std::pair<std::string, std::string>> summary;
  std::vector<std::string> header;
  std::vector<std::vector<CsvCell>> rows;

  void add_summary(std::string key, double value);
  void add_summary(std::string key, std::string value);
};

/// "%.16e"; non-finite values as "inf", "-inf", "nan".
std::string format_real(double value);

std::string to_csv(const CsvTable& table);

/// Throws kIo when the stream is bad after writing.
void write_csv(const CsvTable& table, std::ostream& out);

/// Throws kIo when the file cannot be created or written.
void write_csv(const CsvTable& table, const std::filesystem::path& path);

struct ParsedCsv {
  std::vector<std::string> comments;  ///< without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Reads what to_csv writes. Throws kValidation on malformed quoting or a
/// row whose width differs from the header.
ParsedCsv parse_csv(std::string_view text);

/// Exact inverse of format_real. Throws kValidation.
double parse_real(std::string_view cell);

// Table builders. The seed and config echo are filled in by the caller.

CsvTable spectrum_table(const EigenSystem& eig);
CsvTable landscape_table(const LandscapeReport& report);
CsvTable overlaps_table(const DressedState& state, const OverlapDecay& decay);
CsvTable rates_table(const RateReport& report, const BoundVerdict& verdict);
CsvTable pathsum_table(const std::vector<PathSumResult>& results, std::optional<double> exponent);
CsvTable trace_table(const CoherenceTrace& trace, const std::optional<RateComparison>& comparison);

/// Columns in declared order: n, ratio, A_typ, matrix_element, rate_ratio,
/// eq4_bound, bound_margin, overlap_slope, pathsum_slope,
/// fitted_dynamics_rate, seed, error, error_detail.
CsvTable sweep_table(const std::vector<SweepRow>& rows);

}  // namespace lemtrap
