// Acceptance suite: one checkable criterion per entry, each printing a
// single [PASS]/[FAIL] line. Run with no arguments for all criteria or with
// a list of criterion numbers.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "acceptance/criteria.hpp"

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

  const auto& all = pcv_acceptance::criteria();
  int failures = 0;
  for (const auto& c : all) {
    if (!wanted.empty() &&
        std::find(wanted.begin(), wanted.end(), c.number) == wanted.end()) {
      continue;
    }
    pcv_acceptance::Result r = c.run();
    std::printf("[%s] criterion %2d: %s%s%s\n", r.pass ? "PASS" : "FAIL", c.number,
                c.title.c_str(), r.detail.empty() ? "" : " -- ", r.detail.c_str());
    std::fflush(stdout);
    failures += !r.pass;
  }
  return failures == 0 ? 0 : 1;
}
