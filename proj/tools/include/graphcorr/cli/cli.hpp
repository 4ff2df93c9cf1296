#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace graphcorr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Entry point behind the `graphcorr` executable. `args` excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// git-describe style version string baked in at configure time.
const char* version_string() noexcept;

}  // namespace graphcorr::cli
