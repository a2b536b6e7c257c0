#pragma once

#include <string>
#include <vector>

namespace cantorsum {

/// Entry point behind the command-line binary. Exit codes: 0 success,
/// 1 config error, 2 cap exceeded, 3 verification failed (verify only).
int cli_main(const std::vector<std::string>& args);

}  // namespace cantorsum
