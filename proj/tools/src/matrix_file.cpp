#include "spinham_tools/matrix_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace spinham::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string &where, const std::string &what) {
  throw InputError(where + ": " + what);
}

std::string location(std::string_view text, std::size_t byte) {
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  std::size_t line = 1;
  std::size_t line_start = 0;
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      line_start = i + 1;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(end - line_start + 1);
}

double number(const json &j, const std::string &where) {
  if (!j.is_number()) {
    fail(where, "expected a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    fail(where, "non-finite number");
  }
  return v;
}

Complex complex_entry(const json &j, const std::string &where) {
  if (!j.is_array() || j.size() != 2) {
    fail(where, "expected a complex number as [re, im]");
  }
  return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

CMatrix complex_matrix(const json &j, int m, const std::string &where) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(m)) {
    fail(where, "expected " + std::to_string(m) + " rows");
  }
  CMatrix out(m, m);
  for (int r = 0; r < m; ++r) {
    const std::string rw = where + "[" + std::to_string(r) + "]";
    const json &row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(m)) {
      fail(rw, "expected " + std::to_string(m) + " columns");
    }
    for (int col = 0; col < m; ++col) {
      out(r, col) = complex_entry(row[static_cast<std::size_t>(col)], rw + "[" + std::to_string(col) + "]");
    }
  }
  return out;
}

std::vector<CMatrix> matrix_triple(const json &data, int m) {
  if (!data.is_array() || data.size() != 3) {
    fail("data", "expected an array of three matrices");
  }
  std::vector<CMatrix> out;
  for (int u = 0; u < 3; ++u) {
    out.push_back(complex_matrix(data[static_cast<std::size_t>(u)], m, "data[" + std::to_string(u) + "]"));
  }
  return out;
}

} // namespace

bool operator==(const MatrixFile &a, const MatrixFile &b) {
  if (a.kind != b.kind || a.two_s != b.two_s || a.c != b.c || a.data.size() != b.data.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    if (a.data[i].rows() != b.data[i].rows() || a.data[i].cols() != b.data[i].cols() || a.data[i] != b.data[i]) {
      return false;
    }
  }
  return true;
}

std::string kind_name(Kind k) {
  switch (k) {
  case Kind::zeeman_triple:
    return "zeeman_triple";
  case Kind::g_tensor:
    return "g_tensor";
  case Kind::vector:
    return "vector";
  case Kind::spin:
    return "spin";
  }
  return "unknown";
}

Kind kind_from_name(const std::string &name) {
  for (Kind k : {Kind::zeeman_triple, Kind::g_tensor, Kind::vector, Kind::spin}) {
    if (kind_name(k) == name) {
      return k;
    }
  }
  fail("kind", "unknown kind \"" + name + "\"");
}

MatrixFile parse_matrix_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    std::string msg = e.what();
    const auto pos = msg.find("syntax error");
    throw InputError(location(text, e.byte) + ": " + (pos == std::string::npos ? msg : msg.substr(pos)));
  }
  if (!doc.is_object()) {
    fail("document", "expected a JSON object");
  }

  MatrixFile f;
  if (!doc.contains("kind") || !doc["kind"].is_string()) {
    fail("kind", "missing or not a string");
  }
  f.kind = kind_from_name(doc["kind"].get<std::string>());

  if (!doc.contains("two_s") || !doc["two_s"].is_number_integer()) {
    fail("two_s", "missing or not an integer");
  }
  f.two_s = doc["two_s"].get<int>();
  try {
    SpinQuantum{f.two_s};
  } catch (const DimensionError &e) {
    fail("two_s", e.what());
  }
  const int m = f.two_s + 1;

  if (doc.contains("c") && !doc["c"].is_null()) {
    const double c = number(doc["c"], "c");
    if (c <= 0.0) {
      fail("c", "must be positive");
    }
    f.c = c;
  }

  if (!doc.contains("data")) {
    fail("data", "missing");
  }
  const json &data = doc["data"];
  switch (f.kind) {
  case Kind::zeeman_triple:
  case Kind::spin:
    f.data = matrix_triple(data, m);
    break;
  case Kind::g_tensor: {
    if (!data.is_array() || data.size() != 3) {
      fail("data", "expected 3 rows");
    }
    CMatrix g(3, 3);
    for (int r = 0; r < 3; ++r) {
      const json &row = data[static_cast<std::size_t>(r)];
      const std::string rw = "data[" + std::to_string(r) + "]";
      if (!row.is_array() || row.size() != 3) {
        fail(rw, "expected 3 columns");
      }
      for (int col = 0; col < 3; ++col) {
        g(r, col) = number(row[static_cast<std::size_t>(col)], rw + "[" + std::to_string(col) + "]");
      }
    }
    f.data = {g};
    break;
  }
  case Kind::vector: {
    if (!data.is_array() || data.size() != static_cast<std::size_t>(m)) {
      fail("data", "expected " + std::to_string(m) + " entries");
    }
    CMatrix v(m, 1);
    for (int k = 0; k < m; ++k) {
      v(k, 0) = complex_entry(data[static_cast<std::size_t>(k)], "data[" + std::to_string(k) + "]");
    }
    f.data = {v};
    break;
  }
  }
  return f;
}

MatrixFile read_matrix_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError(path + ": cannot open file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_matrix_file(buf.str());
  } catch (const InputError &e) {
    throw InputError(path + ": " + e.what());
  }
}

json complex_matrix_json(const CMatrix &m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json real_matrix_json(const RMatrix &m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(m(r, c));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json real_vector_json(const RVector &v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    out.push_back(v(k));
  }
  return out;
}

json to_json(const MatrixFile &f) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = kind_name(f.kind);
  doc["two_s"] = f.two_s;
  if (f.c) {
    doc["c"] = *f.c;
  }
  switch (f.kind) {
  case Kind::zeeman_triple:
  case Kind::spin: {
    json data = json::array();
    for (const auto &m : f.data) {
      data.push_back(complex_matrix_json(m));
    }
    doc["data"] = std::move(data);
    break;
  }
  case Kind::g_tensor:
    doc["data"] = real_matrix_json(f.data.at(0).real());
    break;
  case Kind::vector: {
    json data = json::array();
    const CMatrix &v = f.data.at(0);
    for (Eigen::Index k = 0; k < v.rows(); ++k) {
      data.push_back({v(k, 0).real(), v(k, 0).imag()});
    }
    doc["data"] = std::move(data);
    break;
  }
  }
  return doc;
}

std::string serialize(const MatrixFile &f) { return to_json(f).dump(2) + "\n"; }

MatrixFile from_zeeman(const ZeemanTriple &zt, std::optional<double> c) {
  return {Kind::zeeman_triple, zt.spin().two_s(), c, {zt[0], zt[1], zt[2]}};
}

MatrixFile from_g(const GMatrixSmall &g, int two_s, std::optional<double> c) {
  return {Kind::g_tensor, two_s, c, {g.matrix().cast<Complex>()}};
}

MatrixFile from_spin(const SpinMatrices &sm) { return {Kind::spin, sm.s.two_s(), std::nullopt, {sm.sx, sm.sy, sm.sz}}; }

ZeemanTriple to_zeeman(const MatrixFile &f) {
  if (f.kind != Kind::zeeman_triple) {
    fail("kind", "expected zeeman_triple, found " + kind_name(f.kind));
  }
  try {
    return ZeemanTriple(SpinQuantum(f.two_s), {f.data.at(0), f.data.at(1), f.data.at(2)});
  } catch (const ValidationError &e) {
    throw InputError(std::string("data: ") + e.what());
  }
}

GMatrixSmall to_g(const MatrixFile &f) {
  if (f.kind != Kind::g_tensor) {
    fail("kind", "expected g_tensor, found " + kind_name(f.kind));
  }
  return GMatrixSmall(f.data.at(0).real());
}

} // namespace spinham::io
