// One PASS/FAIL line per acceptance criterion; nonzero exit on any failure.

#include <cstdlib>
#include <iostream>

#include "jmap/suite.hpp"

int main(int argc, char** argv) {
  jmap::suite::Config cfg;
  if (argc > 1) cfg.seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  jmap::suite::run_all(cfg, [&](const jmap::suite::CriterionResult& r) {
    std::cout << jmap::suite::format_line(r) << std::endl;
    failed += r.passed() ? 0 : 1;
  });
  std::cout << (failed == 0 ? "all 10 criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
