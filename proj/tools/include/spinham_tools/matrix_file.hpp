#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spinham/errors.hpp"
#include "spinham/gtensor.hpp"
#include "spinham/spin_algebra.hpp"
#include "spinham/types.hpp"

namespace spinham::io {

inline constexpr int kSchemaVersion = 1;

/// Malformed or mis-shaped input document.
class InputError : public Error {
public:
  using Error::Error;
};

enum class Kind { zeeman_triple, g_tensor, vector, spin };

std::string kind_name(Kind k);
Kind kind_from_name(const std::string &name);

/// {"kind", "two_s", "c" (optional), "data"}; complex entries are [re, im]
/// pairs and matrices are nested row-major.
///
/// data holds three m x m matrices for zeeman_triple and spin, one real 3x3
/// for g_tensor and one m x 1 column for vector.
struct MatrixFile {
  Kind kind = Kind::g_tensor;
  int two_s = 1;
  std::optional<double> c;
  std::vector<CMatrix> data;

  /// Exact equality of every field and entry.
  friend bool operator==(const MatrixFile &a, const MatrixFile &b);
};

/// Throws InputError; syntax errors report "line L, column C".
MatrixFile parse_matrix_file(std::string_view text);
MatrixFile read_matrix_file(const std::string &path);

nlohmann::json to_json(const MatrixFile &f);
/// Two-space indented, keys sorted, trailing newline.
std::string serialize(const MatrixFile &f);

nlohmann::json complex_matrix_json(const CMatrix &m);
nlohmann::json real_matrix_json(const RMatrix &m);
nlohmann::json real_vector_json(const RVector &v);

MatrixFile from_zeeman(const ZeemanTriple &zt, std::optional<double> c);
MatrixFile from_g(const GMatrixSmall &g, int two_s, std::optional<double> c);
MatrixFile from_spin(const SpinMatrices &sm);

/// Throws InputError if the file holds a different kind.
ZeemanTriple to_zeeman(const MatrixFile &f);
GMatrixSmall to_g(const MatrixFile &f);

} // namespace spinham::io
