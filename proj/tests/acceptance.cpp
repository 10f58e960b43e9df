// Full acceptance suite: one PASS/FAIL line per criterion.
#include <iostream>

#include "etameta/acceptance.hpp"

int main() {
  const auto results = etameta::run_acceptance(
      etameta::AcceptanceConfig{},
      [](const etameta::CriterionResult& r) { std::cout << r.line() << std::endl; });
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed;
  std::cout << (ok ? "all criteria passed" : "some criteria failed") << std::endl;
  return ok ? 0 : 1;
}
