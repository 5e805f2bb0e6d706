// Rewrites tests/data/cli/expected from the current build. Review the diff before committing.
#include <iostream>

#include "golden.hpp"

int main() {
  const auto results = hypfl::testing::run_golden(HYPFL_TEST_DATA_DIR, HYPFL_SCRATCH_DIR "/golden-regen", true);
  int bad = 0;
  for (const auto& r : results) {
    std::cout << (r.pass ? "ok   " : "FAIL ") << r.name << (r.detail.empty() ? "" : "  " + r.detail) << "\n";
    bad += !r.pass;
  }
  return bad == 0 ? 0 : 1;
}
