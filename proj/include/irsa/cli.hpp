#pragma once

#include <iosfwd>

namespace irsa {

/// Entry point of the irsa_sim tool. Returns 0 on success, 1 on a
/// validation error, 2 when the requested operating point is infeasible.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace irsa
