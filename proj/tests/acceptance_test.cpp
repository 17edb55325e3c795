// Acceptance suite: runs the theorem battery pinned to the published values
// and prints one pass/fail line per criterion. Exit code 0 only when every
// criterion holds. The main run uses F_5 at bound 6; a reduced run at p = 2
// rechecks characteristic independence of the dimension counts.

#include <cstdio>
#include <string>

#include "relhom/verify.hpp"

int main() {
  using namespace relhom;

  int failures = 0;
  auto print_report = [&](const char* label, const VerificationReport& report) {
    std::printf("== %s (ring=%s, field=%s, bound=%zu)\n", label, report.ring.c_str(),
                report.field.c_str(), report.bound);
    for (const auto& check : report.checks) {
      std::printf("[%s] %-42s (%6ld ms)\n", check.pass ? "PASS" : "FAIL", check.id.c_str(),
                  static_cast<long>(check.runtime_ms));
      if (!check.pass) {
        std::printf("        expected: %s\n", check.expected.c_str());
        std::printf("        computed: %s\n", check.computed.c_str());
        ++failures;
      }
    }
  };

  VerifyOptions main_run;
  main_run.preset = "square_zero_2vars";
  main_run.field = Field::prime(5);
  main_run.bound = 6;
  print_report("acceptance criteria", verify_battery(main_run));

  VerifyOptions p2;
  p2.preset = "square_zero_2vars";
  p2.field = Field::prime(2);
  p2.bound = 3;
  p2.include_controls = false;
  print_report("characteristic-independence control", verify_battery(p2));

  if (failures == 0) {
    std::printf("ACCEPTANCE: all criteria passed\n");
    return 0;
  }
  std::printf("ACCEPTANCE: %d criterion failures\n", failures);
  return 1;
}
