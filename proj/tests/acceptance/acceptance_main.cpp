// SPDX-License-Identifier: Apache-2.0
// Runs the acceptance criteria and prints one line per criterion, with the
// individual checks indented below it.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scenario/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<std::string> ids;
  std::string mutation;
  bool expect_fail = false;
  app.add_option("criteria", ids, "criterion ids (default: all)");
  app.add_option("--mutation", mutation, "negative control to inject");
  app.add_flag("--expect-fail", expect_fail, "succeed only if some criterion fails");
  CLI11_PARSE(app, argc, argv);

  bool all_passed = true;
  try {
    liedrag::run_acceptance(ids, {mutation}, [&](const liedrag::CriterionReport& r) {
      all_passed = all_passed && r.passed();
      std::printf("%-4s %s  %s (%.1f s)\n", r.id.c_str(), r.passed() ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
      if (!r.error.empty()) std::printf("       error: %s\n", r.error.c_str());
      for (const auto& c : r.checks) {
        std::printf("       [%s] %-62s %.3e %s", c.passed ? " ok " : "FAIL", c.label.c_str(), c.measured,
                    c.relation.c_str());
        if (c.relation == "<=" || c.relation == ">") std::printf(" %.3g", c.threshold);
        std::printf("\n");
      }
      std::fflush(stdout);
    });
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  if (expect_fail) {
    std::printf(all_passed ? "negative control NOT detected\n" : "negative control detected\n");
    return all_passed ? 1 : 0;
  }
  return all_passed ? 0 : 1;
}
