// Acceptance suite runner: one line per criterion, nonzero exit on failure.
#include <cstdio>

#include "ccm/acceptance.hpp"

int main() {
  int failures = 0;
  for (const ccm::CriterionResult& r : ccm::run_acceptance()) {
    std::printf("%s criterion %d: %s — %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.detail.c_str());
    if (!r.passed) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
