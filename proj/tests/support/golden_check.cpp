// golden_check CLI CASES GOLDEN_DIR WORK_DIR [--regen]
//
// Runs every case through the CLI and compares the CSV with the stored
// golden file. --regen overwrites the goldens instead.

#include <filesystem>
#include <iostream>
#include <string>

#include "golden.hpp"

namespace fs = std::filesystem;
using namespace telerev::testing;

int main(int argc, char** argv) {
  if (argc < 5) {
    std::cerr << "usage: golden_check CLI CASES GOLDEN_DIR WORK_DIR [--regen]\n";
    return 2;
  }
  const fs::path cli = argv[1];
  const fs::path cases_file = argv[2];
  const fs::path golden_dir = argv[3];
  const fs::path work = argv[4];
  const bool regen = argc > 5 && std::string(argv[5]) == "--regen";

  int failures = 0;
  for (const auto& c : load_cases(cases_file)) {
    const fs::path out = regen ? golden_dir : work / c.scenario;
    fs::create_directories(out);
    const int rc = run_cli(cli, c, out);
    if (rc != 0) {
      std::cout << "[FAIL] " << c.scenario << ": exit code " << rc << '\n';
      ++failures;
      continue;
    }
    if (regen) {
      fs::remove(golden_dir / (c.scenario + ".manifest.json"));
      std::cout << "[REGEN] " << c.scenario << '\n';
      continue;
    }
    const auto diff =
        compare_csv(read_file(out / (c.scenario + ".csv")), read_file(golden_dir / (c.scenario + ".csv")));
    std::cout << (diff.ok ? "[PASS] " : "[FAIL] ") << c.scenario << ": " << diff.message << '\n';
    if (!diff.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
