#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mtskit {

/// Full command-line dispatch, callable in-process so tests can assert on
/// exit codes and byte-exact output. Exit 0: computed (whatever the verdict);
/// 1: usage, parse or precondition error; 2: internal self-check failure.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace mtskit
