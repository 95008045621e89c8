#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace evlab::cli {

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 on numerical or invariant failures, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evlab::cli
