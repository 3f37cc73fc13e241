// Acceptance harness: runs every criterion against pinned tolerances and
// prints one PASS/FAIL line per criterion.  Exit status is nonzero unless
// every criterion passes outright (a SKIP also fails this binary: the
// official run must exercise the full inventory).
#include <cstdio>
#include <exception>
#include <string>

#include "satake/acceptance.hpp"
#include "satake/klhecke.hpp"

#ifndef SATAKE_CLI_PATH
#error "SATAKE_CLI_PATH must point at the satake executable"
#endif

int main() {
  try {
    satake::KLCache cache;  // in-memory; subprocess runs manage their own files
    satake::AcceptanceOptions opt;
    opt.subprocess = true;
    opt.cli_path = SATAKE_CLI_PATH;
    opt.cache = &cache;

    auto results = satake::run_acceptance(opt);
    int failed = 0;
    for (const auto& r : results) {
      if (r.status != "PASS") ++failed;
      std::printf("%-4s  %-34s  %6lld cases  %s\n", r.status.c_str(), r.id.c_str(),
                  static_cast<long long>(r.cases), r.name.c_str());
      if (!r.detail.empty()) std::printf("      %s\n", r.detail.c_str());
    }
    std::printf("acceptance: %s (%zu criteria, %d not passing)\n",
                failed == 0 ? "PASS" : "FAIL", results.size(), failed);
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance harness error: %s\n", e.what());
    return 1;
  }
}
