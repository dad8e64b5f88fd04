#include "tracemetric/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tracemetric/errors.hpp"
#include "tracemetric/tolerances.hpp"

namespace tracemetric::io {

using nlohmann::json;

Matrix parse_matrix(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("matrix file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("rows")) {
    throw ParseError("matrix file must be an object with keys \"n\" and \"rows\"");
  }
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
    throw ParseError("\"n\" must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(doc["n"].get<long long>());
  const json& rows = doc["rows"];
  if (!rows.is_array() || rows.size() != n) throw ParseError("\"rows\" must hold exactly n rows");
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) throw ParseError("every row must hold exactly n entries");
    for (std::size_t j = 0; j < n; ++j) {
      const json& v = rows[i][j];
      if (!v.is_number()) throw ParseError("matrix entries must be numbers");
      const double d = v.get<double>();
      if (!std::isfinite(d)) throw ParseError("matrix entries must be finite");
      m(i, j) = d;
    }
  }
  return m;
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open matrix file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Matrix load_matrix(const std::string& path) { return parse_matrix(slurp(path)); }

LoadedSym parse_symmetric(const std::string& text) {
  const Matrix m = parse_matrix(text);
  if (m.order() < 2) throw ParseError("symmetric matrices must have n >= 2");
  const double asym = m.asymmetry();
  if (asym > tol::kSymmetry * std::max(1.0, m.max_abs())) {
    throw ParseError("matrix is not symmetric (max asymmetry " + format_number(asym) + ")");
  }
  return LoadedSym{SymMatrix::symmetrized(m), asym};
}

LoadedSym load_symmetric(const std::string& path) { return parse_symmetric(slurp(path)); }

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string to_json(const Matrix& m) {
  std::string out = "{\"n\": " + std::to_string(m.order()) + ", \"rows\": [";
  for (std::size_t i = 0; i < m.order(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.order(); ++j) {
      if (j) out += ", ";
      out += format_number(m(i, j));
    }
    out += "]";
  }
  out += "]}";
  return out;
}

}  // namespace tracemetric::io
