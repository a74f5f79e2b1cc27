// app.hpp: zenocrit command-line entry point

#pragma once

#include <ostream>

#include "zeno/error.hpp"

namespace zeno::cli {

// Exit status: 0 success; 10/11/12 = QZE/QAZE/INDETERMINATE from classify;
// 2 for configuration and usage errors, 3 for numerical failures. Errors are written
// to err as a single JSON object {"error": {"code", "message"}}.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int exit_code(ErrorCode code) noexcept;

} // namespace zeno::cli
