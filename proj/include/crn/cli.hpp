#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crn {
namespace cli {

/// Runs one toolkit command. Exit code 0 on success, 1 when the analysis
/// comes back negative (nothing found / verification failed), 2 on input
/// errors. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cli
}  // namespace crn
