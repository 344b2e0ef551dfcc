#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qdeg {

/// Default exhaustive-enumeration limit on n for simulate/extract; the
/// QDEG_BUDGET environment variable overrides it.
inline constexpr int kDefaultEnumerationBudget = 10;

int default_enumeration_budget();

/// Entry point of the `qdeg` tool. args[0] is the program name. Returns 0
/// iff every requested assertion passed, 1 if one failed, 2 on usage or
/// runtime errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdeg
