#pragma once

// Parameter sweeps behind the `telerev` command line tool. Each scenario
// evaluates one channel/measurement family on a grid and produces rows in a
// single fixed CSV schema; cells a scenario does not define are NA.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "telerev/montecarlo.hpp"

namespace telerev {

enum class ScenarioKind { XxScan, EjmScan, EjmAlignedScan, ZzScan, TradeoffScan, Thm2Bounds };

std::optional<ScenarioKind> parse_scenario(std::string_view name);
std::string_view scenario_name(ScenarioKind kind);

/// Inclusive grid start..stop with `steps` points (steps >= 2).
struct Grid {
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 2;

  double at(std::size_t i) const;
};

/// Parses "START:STOP:STEPS". START/STOP accept plain numbers and multiples
/// of pi such as "pi/4", "0.5pi", "3*pi/8". Throws DomainError on bad input.
Grid parse_grid(std::string_view text);
double parse_angle(std::string_view text);

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::XxScan;
  std::optional<Grid> grid;   // defaults to the family's full range
  std::optional<Grid> grid2;  // channel parameter; absent = maximally entangled point
  std::size_t dim = 3;        // thm2-bounds only
  std::size_t samples = 0;    // 0 disables the Monte Carlo columns
  std::uint64_t seed = 0;
  std::size_t shards = 1;
};

inline constexpr std::array<std::string_view, 14> kCsvColumns = {
    "param1",  "param2",    "E_c",       "E_M",   "F_standard",    "F_mr",       "P_succ_closed",
    "P_succ_svd", "P_succ_mc", "P_succ_mc_stderr", "L_max", "tradeoff_lhs", "thm2_lower", "thm2_upper"};

using Row = std::array<std::optional<double>, kCsvColumns.size()>;

struct ScenarioResult {
  std::vector<Row> rows;
  double max_completeness_residual = 0.0;
  double max_reversal_residual = 0.0;

  /// Both residuals within the 1e-9 acceptance level.
  bool residuals_ok() const;
};

/// Throws DomainError if a grid leaves the family's parameter range.
ScenarioResult run_scenario(const ScenarioConfig& config);

/// "%.15g", or NA for empty cells.
std::string format_cell(const std::optional<double>& v);
void write_csv(std::ostream& os, const std::vector<Row>& rows);
void write_json_rows(std::ostream& os, const std::vector<Row>& rows);

}  // namespace telerev
