#pragma once

#include <iosfwd>

namespace certnorm::cli {

inline constexpr const char* kVersion = "0.3.0";

// Exit codes: 0 ok, 1 property failure, 2 parse failure, 3 precondition
// violation, 4 solver failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace certnorm::cli
