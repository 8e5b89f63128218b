#include "telerev/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "telerev/errors.hpp"
#include "telerev/instrument.hpp"
#include "telerev/jointmeas.hpp"
#include "telerev/qstate.hpp"
#include "telerev/theorems.hpp"

namespace telerev {

namespace {

using std::numbers::pi;

enum Col : std::size_t {
  kParam1, kParam2, kEc, kEm, kFStandard, kFMr, kPClosed, kPSvd, kPMc, kPMcErr, kLMax, kTradeoff, kThm2Lo, kThm2Hi
};

constexpr double kResidualLimit = 1e-9;

struct Range {
  double lo;
  double hi;
  bool hi_open;
};

Range param1_range(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::XxScan: return {0.0, pi / 4, false};
    case ScenarioKind::EjmScan:
    case ScenarioKind::EjmAlignedScan:
    case ScenarioKind::TradeoffScan: return {0.0, pi / 2, false};
    case ScenarioKind::ZzScan: return {0.0, zx_zz_t_max(), true};
    case ScenarioKind::Thm2Bounds: return {0.0, 1.0, false};
  }
  return {0.0, 0.0, false};
}

// Default grids: full range, with the open end of the ZZ model pulled in.
Grid default_grid(ScenarioKind kind) {
  const Range r = param1_range(kind);
  const double hi = r.hi_open ? r.hi * (1.0 - 1e-3) : r.hi;
  return Grid{r.lo, hi, 101};
}

std::optional<Range> param2_range(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::XxScan:
    case ScenarioKind::ZzScan: return Range{0.0, pi / 4, false};
    case ScenarioKind::EjmAlignedScan: return Range{0.0, pi / 2, false};
    default: return std::nullopt;
  }
}

// Channel parameter at the maximally entangled point.
double param2_default(ScenarioKind kind) {
  return kind == ScenarioKind::EjmAlignedScan ? pi / 2 : pi / 4;
}

void check_grid(const Grid& g, const Range& r, const char* which) {
  if (g.steps < 2) throw DomainError(std::string(which) + ": steps must be >= 2");
  const double lo = std::min(g.start, g.stop);
  const double hi = std::max(g.start, g.stop);
  const bool above = r.hi_open ? hi >= r.hi : hi > r.hi + 1e-15;
  if (lo < r.lo - 1e-15 || above) {
    throw DomainError(std::string(which) + " leaves the valid parameter range [" + std::to_string(r.lo) + ", " +
                      std::to_string(r.hi) + (r.hi_open ? ")" : "]"));
  }
}

// Clamp rounding overshoot of grid endpoints back into closed ranges.
double clamp_to(const Range& r, double v) { return r.hi_open ? std::max(v, r.lo) : std::clamp(v, r.lo, r.hi); }

struct Family {
  BipartiteState channel;
  JointMeasurement measurement;
  std::optional<double> p_closed;
};

Family make_family(ScenarioKind kind, double p1, double p2) {
  switch (kind) {
    case ScenarioKind::XxScan: {
      const double e_c = std::sin(2.0 * p2);
      const double e_m = std::cos(2.0 * p1);
      return {schmidt_channel(p2, SchmidtBasis::Z), xx_deformed(p1), xx_success(e_c, e_m)};
    }
    case ScenarioKind::EjmScan:
    case ScenarioKind::TradeoffScan:
      return {max_entangled(2), ejm(p1), ejm_success(p1)};
    case ScenarioKind::EjmAlignedScan:
      return {ejm_channel(p2), ejm(p1), ejm_aligned_success(ejm_concurrence(p2), ejm_concurrence(p1))};
    case ScenarioKind::ZzScan:
      return {schmidt_channel(p2, SchmidtBasis::Y), zx_zz(p1), zx_zz_success(p2, p1)};
    case ScenarioKind::Thm2Bounds: break;
  }
  throw DomainError("make_family: no qubit family for this scenario");
}

void fill_instrument_columns(Row& row, const Instrument& inst, const ScenarioConfig& cfg, std::size_t row_index,
                             ScenarioResult& result) {
  const ReversalPlan plan = optimal_reversal(inst);
  result.max_completeness_residual = std::max(result.max_completeness_residual, completeness_residual(inst));
  result.max_reversal_residual = std::max(result.max_reversal_residual, reversal_residual(inst, plan));

  row[kFStandard] = standard_fidelity(inst);
  const double f_mr = heralded_fidelity(inst, plan);
  if (!std::isnan(f_mr)) row[kFMr] = f_mr;
  row[kPSvd] = success_probability(plan);
  row[kLMax] = leakage_max(inst);
  row[kTradeoff] = tradeoff_lhs(inst, plan);
  if (cfg.samples > 0) {
    const auto mc = estimate_performance(inst, plan, cfg.samples, RngSpec{cfg.seed, row_index}, cfg.shards);
    row[kPMc] = mc.p_succ.mean;
    row[kPMcErr] = mc.p_succ.std_error;
  }
}

void fill_thm2_if_max_entangled(Row& row, const BipartiteState& channel, const JointMeasurement& jm) {
  const double e_c = g_concurrence(channel);
  if (std::abs(e_c - 1.0) > 1e-12) return;
  std::vector<double> e_list;
  for (std::size_t r = 0; r < jm.size(); ++r) e_list.push_back(std::min(1.0, element_entanglement(jm, r)));
  const Thm2Bounds b = thm2_bounds(jm.dim(), e_list);
  row[kThm2Lo] = b.lower;
  row[kThm2Hi] = b.upper;
}

}  // namespace

std::optional<ScenarioKind> parse_scenario(std::string_view name) {
  for (auto kind : {ScenarioKind::XxScan, ScenarioKind::EjmScan, ScenarioKind::EjmAlignedScan, ScenarioKind::ZzScan,
                    ScenarioKind::TradeoffScan, ScenarioKind::Thm2Bounds}) {
    if (scenario_name(kind) == name) return kind;
  }
  return std::nullopt;
}

std::string_view scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::XxScan: return "xx-scan";
    case ScenarioKind::EjmScan: return "ejm-scan";
    case ScenarioKind::EjmAlignedScan: return "ejm-aligned-scan";
    case ScenarioKind::ZzScan: return "zz-scan";
    case ScenarioKind::TradeoffScan: return "tradeoff-scan";
    case ScenarioKind::Thm2Bounds: return "thm2-bounds";
  }
  return "";
}

double Grid::at(std::size_t i) const {
  if (i + 1 == steps) return stop;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

double parse_angle(std::string_view text) {
  const auto fail = [&] { return DomainError("cannot parse number '" + std::string(text) + "'"); };
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) throw fail();

  double value = 1.0;
  bool have_number = false;
  const auto parse_number = [&](std::string_view& rest, double& out) {
    const char* first = rest.data();
    const char* last = rest.data() + rest.size();
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc()) return false;
    rest.remove_prefix(static_cast<std::size_t>(res.ptr - first));
    return true;
  };
  bool negative = false;
  if (s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
    if (s.empty() || s.front() == '-' || s.front() == '+') throw fail();
  }
  if (!s.empty() && s.substr(0, 2) != "pi") {
    if (!parse_number(s, value)) throw fail();
    have_number = true;
  }
  if (!s.empty() && s.front() == '*') s.remove_prefix(1);
  if (s.substr(0, 2) == "pi") {
    value *= pi;
    s.remove_prefix(2);
    have_number = true;
  }
  if (!s.empty() && s.front() == '/') {
    s.remove_prefix(1);
    double den = 0.0;
    if (!parse_number(s, den) || den == 0.0) throw fail();
    value /= den;
  }
  if (!s.empty() || !have_number || !std::isfinite(value)) throw fail();
  return negative ? -value : value;
}

Grid parse_grid(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw DomainError("grid must be START:STOP:STEPS, got '" + std::string(text) + "'");
  Grid g;
  g.start = parse_angle(text.substr(0, c1));
  g.stop = parse_angle(text.substr(c1 + 1, c2 - c1 - 1));
  const std::string_view steps = text.substr(c2 + 1);
  std::size_t n = 0;
  const auto res = std::from_chars(steps.data(), steps.data() + steps.size(), n);
  if (res.ec != std::errc() || res.ptr != steps.data() + steps.size()) {
    throw DomainError("grid steps must be an integer, got '" + std::string(steps) + "'");
  }
  if (n < 2) throw DomainError("grid steps must be >= 2");
  g.steps = n;
  return g;
}

bool ScenarioResult::residuals_ok() const {
  return max_completeness_residual <= kResidualLimit && max_reversal_residual <= kResidualLimit;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  const ScenarioKind kind = cfg.kind;
  const Grid grid = cfg.grid.value_or(default_grid(kind));
  const Range r1 = param1_range(kind);
  check_grid(grid, r1, "--grid");

  const auto r2 = param2_range(kind);
  if (cfg.grid2 && !r2) {
    throw DomainError(std::string("--grid2 is not used by scenario ") + std::string(scenario_name(kind)));
  }
  if (cfg.grid2) check_grid(*cfg.grid2, *r2, "--grid2");
  if (kind == ScenarioKind::Thm2Bounds && (cfg.dim < 2 || cfg.dim > 8)) {
    throw DomainError("--dim must be in [2, 8]");
  }

  std::vector<std::optional<double>> p2_values;
  if (cfg.grid2) {
    for (std::size_t j = 0; j < cfg.grid2->steps; ++j) p2_values.push_back(clamp_to(*r2, cfg.grid2->at(j)));
  } else if (r2) {
    p2_values.push_back(param2_default(kind));
  } else if (kind == ScenarioKind::Thm2Bounds) {
    p2_values.push_back(static_cast<double>(cfg.dim));
  } else {
    p2_values.push_back(std::nullopt);
  }

  ScenarioResult result;
  std::size_t row_index = 0;
  for (std::size_t i = 0; i < grid.steps; ++i) {
    const double p1 = clamp_to(r1, grid.at(i));
    for (const auto& p2 : p2_values) {
      Row row{};
      row[kParam1] = p1;
      row[kParam2] = p2;
      if (kind == ScenarioKind::Thm2Bounds) {
        const std::size_t d = cfg.dim;
        row[kEc] = 1.0;
        row[kEm] = p1;
        const Thm2Bounds b = thm2_bounds(d, std::vector<double>(d * d, p1));
        row[kThm2Lo] = b.lower;
        row[kThm2Hi] = b.upper;
        if (const auto basis = saturating_basis(d, p1)) {
          fill_instrument_columns(row, build_instrument(max_entangled(d), *basis), cfg, row_index, result);
        }
      } else {
        const double p2v = p2.value_or(0.0);
        const Family fam = make_family(kind, p1, p2v);
        row[kEc] = concurrence(fam.channel);
        row[kEm] = element_entanglement(fam.measurement, 0);
        row[kPClosed] = fam.p_closed;
        fill_instrument_columns(row, build_instrument(fam.channel, fam.measurement), cfg, row_index, result);
        fill_thm2_if_max_entangled(row, fam.channel, fam.measurement);
      }
      result.rows.push_back(row);
      ++row_index;
    }
  }
  return result;
}

std::string format_cell(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return "NA";
  const double x = *v == 0.0 ? 0.0 : *v;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<Row>& rows) {
  for (std::size_t c = 0; c < kCsvColumns.size(); ++c) os << (c ? "," : "") << kCsvColumns[c];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_cell(row[c]);
    os << '\n';
  }
}

void write_json_rows(std::ostream& os, const std::vector<Row>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string key(kCsvColumns[c]);
      if (row[c] && std::isfinite(*row[c])) {
        obj[key] = *row[c];
      } else {
        obj[key] = nullptr;
      }
    }
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

}  // namespace telerev
