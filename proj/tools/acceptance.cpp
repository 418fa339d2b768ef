// Prints one line per exit criterion; exits nonzero if any fails.
#include <iostream>
#include <string>

#include "bsfh/acceptance.hpp"

int main(int argc, char** argv) {
  bsfh::AcceptanceOptions opt;
  opt.fixtures_dir = argc > 1 ? argv[1] : BSFH_FIXTURES;
  bool ok = true;
  for (const auto& r : bsfh::run_acceptance(opt)) {
    std::cout << bsfh::format_result(r) << "\n";
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}
