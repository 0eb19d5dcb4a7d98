#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cpig::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitDivergent = 3;
inline constexpr int kExitValidation = 4;

/// Environment variable consulted when --seed is absent.
inline constexpr const char* kSeedEnv = "CPIG_SEED";

/// Runs one command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cpig::cli
