// Reference examples with known exact answers, replayed by `plam fixtures`.
#pragma once

#include <string>
#include <vector>

namespace plam {

struct FixtureResult {
  std::string name;
  bool passed = false;
  std::string detail;  // what was observed when the check failed
};

std::vector<FixtureResult> runFixtures();

}  // namespace plam
