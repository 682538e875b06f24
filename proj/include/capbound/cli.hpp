#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "capbound/bounds.hpp"
#include "capbound/distill.hpp"
#include "capbound/io.hpp"
#include "capbound/search.hpp"

namespace capbound {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSolver = 3;

// Runs the command line `args` (args[0] is the program name). Reports go to
// `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

Json report_to_json(const BoundReport& r);
Json term_to_json(const Term& t);

}  // namespace capbound
