#pragma once

#include <functional>
#include <string>
#include <vector>

namespace pcv_acceptance {

struct Result {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int number;
  std::string title;
  std::function<Result()> run;
};

const std::vector<Criterion>& criteria();

}  // namespace pcv_acceptance
