#pragma once

#include <ostream>

#include "cli_config.hpp"

namespace ttcli {

// executes a validated config; returns the process exit status
int run(const RunConfig& c, std::ostream& out, std::ostream& err);

// parse + run with the error conventions of the executable:
// 0 success, 1 runtime error, 2 usage error
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ttcli
