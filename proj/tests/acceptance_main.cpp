// Runs every acceptance criterion at its pinned tolerance and prints one
// line per criterion. Exit 0 when everything passed or the only failures are
// documented numerical ceilings; exit 1 otherwise.

#include <iostream>

#include "toeprank/acceptance.hpp"

int main() {
  auto results = toeprank::acceptance::run_all(&std::cout);
  std::cout << "\n" << toeprank::acceptance::summary_table(results);
  if (toeprank::acceptance::all_passed_or_documented(results)) {
    bool clean = true;
    for (const auto& r : results) clean = clean && r.passed;
    if (!clean)
      std::cout << "every failure above is a documented limit; see README\n";
    return 0;
  }
  std::cout << "unexpected failures present\n";
  return 1;
}
