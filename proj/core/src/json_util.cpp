#include "json_util.hpp"

#include <cmath>
#include <cstdio>

#include "sptkit/errors.hpp"

namespace sptkit::detail {
namespace {

cplx entry_from_json(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  throw Error(ErrorCode::ParseError, "matrix entry must be a number or [re, im]");
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

void write(const ordered_json& j, int indent, int depth, std::string& out) {
  const bool pretty = indent >= 0;
  auto newline = [&](int d) {
    if (!pretty) return;
    out.push_back('\n');
    out.append(static_cast<size_t>(d * indent), ' ');
  };
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) { out += "{}"; return; }
      out.push_back('{');
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        out += ordered_json(it.key()).dump();
        out += pretty ? ": " : ":";
        write(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out.push_back('}');
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) { out += "[]"; return; }
      // arrays of scalars stay on one line
      bool flat = true;
      for (const auto& e : j)
        if (e.is_structured() && !(e.is_array() && e.size() == 2 && e[0].is_number())) flat = false;
      out.push_back('[');
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += (flat && pretty) ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        write(e, flat ? -1 : indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out.push_back(']');
      return;
    }
    case ordered_json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

Mat matrix_from_json(const json& j) {
  if (j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number())) {
    Mat m(1, 1);
    m(0, 0) = entry_from_json(j);
    return m;
  }
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw Error(ErrorCode::ParseError, "matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols)
      throw Error(ErrorCode::ParseError, "ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = entry_from_json(j[r][c]);
  }
  return m;
}

ordered_json complex_to_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json matrix_to_json(const Mat& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json real_vector_to_json(const RVec& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v(k));
  return a;
}

std::string dump17(const ordered_json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  return out;
}

}  // namespace sptkit::detail
