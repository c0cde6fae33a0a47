#pragma once

// Trial bodies of the property suites; one function per result.

#include <string>
#include <vector>

#include <json.hpp>

#include "relspec/random.hpp"

namespace relspec::detail {

struct TrialOutcome {
  bool ok = true;
  double residual = 0.0;
  std::string message;
  nlohmann::json input;
  std::string note;  // reported, never a failure
};

using TrialFn = TrialOutcome (*)(Rng& rng);

struct SuiteDef {
  const char* name;
  TrialFn trial;
};

const std::vector<SuiteDef>& suite_table();

}  // namespace relspec::detail
