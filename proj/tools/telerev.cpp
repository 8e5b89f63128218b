// telerev: parameter sweeps over teleportation channel/measurement families.
//
//   telerev --scenario ejm-scan --grid 0:pi/2:101 --samples 100000 --seed 7 --out results
//
// Writes DIR/<scenario>.csv (or .json) and DIR/<scenario>.manifest.json.
// Exit codes: 0 ok, 1 I/O failure, 2 usage error, 3 residual check failed.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "telerev/errors.hpp"
#include "telerev/scenario.hpp"
#include "telerev/version.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResidual = 3;

nlohmann::json grid_json(const std::optional<telerev::Grid>& g, const std::string& text) {
  if (!g) return nullptr;
  return {{"text", text}, {"start", g->start}, {"stop", g->stop}, {"steps", g->steps}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Teleportation with measurement reversal: parameter sweeps", "telerev"};
  app.set_version_flag("--version", std::string(telerev::kVersion));

  std::string scenario;
  std::string grid_text;
  std::string grid2_text;
  std::size_t samples = 0;
  std::uint64_t seed = 42;
  std::size_t dim = 3;
  std::size_t shards = 1;
  std::string out_dir = ".";
  std::string format = "csv";

  app.set_config("--config", "", "key=value file pre-setting any flag; the command line wins");
  app.add_option("--scenario", scenario,
                 "xx-scan | ejm-scan | ejm-aligned-scan | zz-scan | tradeoff-scan | thm2-bounds")
      ->required();
  app.add_option("--grid", grid_text, "START:STOP:STEPS for the measurement parameter (pi allowed, e.g. pi/4)");
  app.add_option("--grid2", grid2_text, "START:STOP:STEPS for the channel parameter");
  app.add_option("--samples", samples, "Monte Carlo samples per grid point (0 = off)");
  app.add_option("--seed", seed, "RNG seed")->envname("TELEREV_SEED");
  app.add_option("--dim", dim, "qudit dimension for thm2-bounds")->check(CLI::Range(2, 8));
  app.add_option("--shards", shards, "Monte Carlo shards run on separate threads")->check(CLI::Range(1, 256));
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  telerev::ScenarioConfig cfg;
  try {
    const auto kind = telerev::parse_scenario(scenario);
    if (!kind) throw telerev::DomainError("unknown scenario '" + scenario + "'");
    cfg.kind = *kind;
    if (!grid_text.empty()) cfg.grid = telerev::parse_grid(grid_text);
    if (!grid2_text.empty()) cfg.grid2 = telerev::parse_grid(grid2_text);
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.dim = dim;
    cfg.shards = shards;
  } catch (const std::exception& e) {
    std::cerr << "telerev: " << e.what() << '\n';
    return kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  telerev::ScenarioResult result;
  try {
    result = telerev::run_scenario(cfg);
  } catch (const telerev::DomainError& e) {
    std::cerr << "telerev: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "telerev: " << e.what() << '\n';
    return kExitIo;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::string name(telerev::scenario_name(cfg.kind));
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::cerr << "telerev: cannot create " << dir << ": " << ec.message() << '\n';
    return kExitIo;
  }

  const fs::path data_path = dir / (name + "." + format);
  {
    std::ofstream os(data_path, std::ios::binary);
    if (format == "csv") {
      telerev::write_csv(os, result.rows);
    } else {
      telerev::write_json_rows(os, result.rows);
    }
    if (!os) {
      std::cerr << "telerev: failed writing " << data_path << '\n';
      return kExitIo;
    }
  }

  nlohmann::json manifest = {
      {"tool", "telerev"},
      {"version", telerev::kVersion},
      {"scenario", name},
      {"format", format},
      {"output", data_path.filename().string()},
      {"rows", result.rows.size()},
      {"grid", grid_json(cfg.grid, grid_text)},
      {"grid2", grid_json(cfg.grid2, grid2_text)},
      {"dim", cfg.dim},
      {"samples", cfg.samples},
      {"seed", cfg.seed},
      {"shards", cfg.shards},
      {"rng", "mt19937_64, seed_seq(seed, stream = row index)"},
      {"wall_time_seconds", wall},
      {"max_completeness_residual", result.max_completeness_residual},
      {"max_reversal_residual", result.max_reversal_residual},
      {"residuals_ok", result.residuals_ok()},
  };
  const fs::path manifest_path = dir / (name + ".manifest.json");
  {
    std::ofstream os(manifest_path, std::ios::binary);
    os << manifest.dump(2) << '\n';
    if (!os) {
      std::cerr << "telerev: failed writing " << manifest_path << '\n';
      return kExitIo;
    }
  }

  if (!result.residuals_ok()) {
    std::cerr << "telerev: residual check failed (completeness " << result.max_completeness_residual
              << ", reversal " << result.max_reversal_residual << ")\n";
    return kExitResidual;
  }
  return 0;
}
