#pragma once

#include <iosfwd>

namespace tracemetric::cli {

/// Exit codes: 0 success, 1 parse/domain/argument error, 2 verification failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tracemetric::cli
