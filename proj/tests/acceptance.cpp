// Runs the twelve acceptance criteria and prints one line per criterion.
#include "cohomkit/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace cohomkit;

namespace {

struct Criterion {
  int number;
  std::string what;
  double limit_seconds;
  std::function<suites::SuiteResult()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "bar vs periodic cohomology, C2 C3 C4 with Z Z/2 Z/3 Z/4 to degree 6", 30, [] { return suites::cohomology_oracle(); }},
      {2, "H*(C2,F2) to degree 6 and H*(C2xC2,F2) to degree 4", 60, [] { return suites::ring(); }},
      {3, "Bockstein derivation rule, total degree <= 5, i in {1,2}", 300, [] { return suites::derivation(); }},
      {4, "p-th power lifts mod p^3, degrees 1..3", 300, [] { return suites::pth_power(); }},
      {5, "integral lifts of p^s-th powers, degrees 1..2", 300, [] { return suites::integral_lift(); }},
      {6, "F-isomorphism to degree 6 on six (group, prime) pairs", 600, [] { return suites::fiso(); }},
      {7, "direct vs fibrewise projectivity over C2 C3 C6", 60, suites::fibres},
      {8, "Hom_Z(ZG, Z) = ZG for C2 C3 S3 Q8", 60, suites::dualising},
      {9, "Ext^{2,3}(M, ZG) = 0 and Ext^2_ZC2(Z, Z) = Z/2", 120, suites::ext},
      {10, "Koszul self-duality for d = 1, 2, 3", 10, suites::koszul},
      {11, "thick ideals of stab(F_p C_p) for p = 2, 3, 5", 10, suites::classification},
      {12, "reduction-map certificates on C2 and C2xC2 to degree 6", 60, [] { return suites::kappa(); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    suites::SuiteResult r{c.what};
    std::string error;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.passed = false;
      error = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.limit_seconds;
    const bool ok = r.passed && in_time && error.empty();
    if (!ok) ++failed;
    std::printf("[%s] %2d %s: %zu checks, %zu failures (%.2f s, limit %.0f s)\n", ok ? "PASS" : "FAIL", c.number,
                c.what.c_str(), r.checks, r.failures.size(), seconds, c.limit_seconds);
    if (!error.empty()) std::printf("       error: %s\n", error.c_str());
    if (!in_time) std::printf("       over the time limit\n");
    for (std::size_t k = 0; k < r.failures.size() && k < 5; ++k) std::printf("       %s\n", r.failures[k].c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
