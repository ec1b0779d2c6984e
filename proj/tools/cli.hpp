#pragma once

#include <ostream>
#include <stop_token>
#include <string>
#include <vector>

namespace segcrawl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns 0 on success, 1 on runtime failure, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::stop_token stop = {});

}  // namespace segcrawl::cli
