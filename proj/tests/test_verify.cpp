#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>

#include "deltaprop/verify.hpp"

using namespace deltaprop::verify;

namespace {

void report(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    INFO(r.name, ": measured ", r.measured, " tolerance ", r.tolerance);
    CHECK(r.pass);
    std::printf("%-45s measured %.3e  tolerance %.3e  %s\n", r.name.c_str(),
                r.measured, r.tolerance, r.pass ? "pass" : "FAIL");
  }
}

}  // namespace

TEST_CASE("special function invariants") { report(verify_specfun(fixtures_dir())); }

TEST_CASE("kernel invariants") { report(verify_kernels()); }

TEST_CASE("dynamics invariants") { report(verify_dynamics()); }

TEST_CASE("grid and quadrature oracle invariants") { report(verify_oracle()); }
