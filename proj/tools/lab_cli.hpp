#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bsqf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitIoError = 3;

/// Entry point of bsqf-lab. `args` excludes the program name. The JSON report
/// goes to `out` (and to --out-json when given); diagnostics go to `err`.
int run_lab(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace bsqf::cli
