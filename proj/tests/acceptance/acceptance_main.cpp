// Runs every acceptance criterion once and prints one line per criterion.
// Exit status is nonzero when any criterion fails.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include "checks.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = hg::cli::kDefaultCheckSeed;
  if (argc > 1) seed = std::stoull(argv[1]);
  hg::cli::CheckContext ctx;
  ctx.seed = seed;
  int failed = 0;
  for (const auto& check : hg::cli::acceptance_checks()) {
    const auto r = hg::cli::run_check(check, ctx);
    std::cout << hg::cli::format_check_line(r) << std::endl;
    if (!r.passed) ++failed;
  }
  const auto total = hg::cli::acceptance_checks().size();
  std::cout << (total - failed) << "/" << total << " criteria passed (seed " << seed << ")\n";
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
