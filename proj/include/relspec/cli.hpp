#pragma once

#include <ostream>

namespace relspec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSuiteFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the relspec tool, callable in-process. Verbs: classify,
/// essential, verify, mobius, perturb. Returns 0 on success, 1 when a suite
/// fails, 2 on usage or input errors (message on `err`).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace relspec::cli
