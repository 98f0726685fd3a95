#pragma once

#include <ostream>

#include "subshift/error.hpp"

namespace subshift {

// 2 config/spec/parse, 3 insufficient sample or I/O, 4 internal invariant, 1 other.
int exit_code(Errc code) noexcept;

// Entry point of the `subshift` tool. Output goes to `out`, logs and errors to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace subshift
