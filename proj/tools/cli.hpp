#pragma once

#include <ostream>

namespace ffg::cli {

inline constexpr int kSchemaVersion = 1;

// Exit codes: 0 success, 2 bad input or unsupported configuration, 3 failed
// internal cross-check (including a failing selftest criterion).
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace ffg::cli
