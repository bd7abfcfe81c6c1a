#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qga::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one verb. `args` excludes the program name. Reports go to `out` as
/// JSON, diagnostics to `err`. Returns 0 when the verdict holds, 1 when it
/// fails (the report is still written), 2 on usage or validation errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qga::cli
