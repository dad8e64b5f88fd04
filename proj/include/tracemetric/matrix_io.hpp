#pragma once

// Matrix files: UTF-8 JSON {"n": N, "rows": [[...], ...]}.

#include <iosfwd>
#include <string>

#include "tracemetric/matrix.hpp"

namespace tracemetric::io {

Matrix parse_matrix(const std::string& text);
Matrix load_matrix(const std::string& path);

struct LoadedSym {
  SymMatrix matrix;
  double asymmetry = 0.0;  // max |a_ij - a_ji| found in the file
};

/// Requires symmetry within 1e-12 (relative to max|a_ij|, floor 1) and
/// symmetrizes; the asymmetry found is reported back.
LoadedSym parse_symmetric(const std::string& text);
LoadedSym load_symmetric(const std::string& path);

/// "%.17g"
std::string format_number(double v);

/// Same JSON schema, numbers with 17 significant digits.
std::string to_json(const Matrix& m);

}  // namespace tracemetric::io
