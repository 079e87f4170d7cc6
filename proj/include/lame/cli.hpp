#pragma once

#include <string>
#include <vector>

namespace lame::cli {

/// Runs the lame-spectra command line in-process.  args excludes argv[0].
/// Exit codes: 0 success, 1 a check the command performed was violated,
/// 2 usage or config error, 3 numerical failure.
int run(const std::vector<std::string>& args);

} // namespace lame::cli
