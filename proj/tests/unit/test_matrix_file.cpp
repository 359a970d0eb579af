#include <gtest/gtest.h>

#include "spinham/modelgen.hpp"
#include "spinham_tools/matrix_file.hpp"

using namespace spinham;
using namespace spinham::io;

TEST(MatrixFile, RoundTripEveryKind) {
  for (int ts = 1; ts <= 15; ts += 2) {
    const SpinMatrices sm = spin_matrices(SpinQuantum(ts));
    FixtureSpec spec;
    spec.seed = static_cast<std::uint64_t>(ts);
    spec.s = sm.s;
    const GMatrixSmall g = random_g(spec);
    const ZeemanTriple zt = scramble(build_zeeman(g, sm, 137.0), sm, 5).zt;

    Rng rng(static_cast<std::uint64_t>(ts));
    const MatrixFile vec{Kind::vector, ts, std::nullopt, {CMatrix(rng.unit_cvector(sm.s.dim()))}};

    for (const MatrixFile &f : {from_zeeman(zt, 137.0), from_g(g, ts, std::nullopt), from_spin(sm), vec}) {
      const MatrixFile back = parse_matrix_file(serialize(f));
      EXPECT_TRUE(back == f) << kind_name(f.kind);
      EXPECT_EQ(serialize(back), serialize(f));
    }
  }
}

TEST(MatrixFile, SpecialValuesSurvive) {
  Mat3 g;
  g << -0.0, 1e-300, 5e-324, 1.0 / 3.0, -2.5e17, 0.1, 7, 8, 9;
  const MatrixFile f = from_g(GMatrixSmall(g), 1, 1.0 / 7.0);
  const MatrixFile back = parse_matrix_file(serialize(f));
  EXPECT_TRUE(back == f);
  EXPECT_TRUE(std::signbit(back.data[0](0, 0).real()));
}

TEST(MatrixFile, SyntaxErrorsCarryLineAndColumn) {
  const std::string text = "{\n  \"kind\": \"g_tensor\",\n  \"two_s\": 1,\n  \"data\": [[1, 2, 3], [4, 5 6], [7, 8, 9]]\n}\n";
  try {
    parse_matrix_file(text);
    FAIL();
  } catch (const InputError &e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("line 4"), std::string::npos) << msg;
    EXPECT_NE(msg.find("column 29"), std::string::npos) << msg;
  }
}

TEST(MatrixFile, ShapeErrors) {
  EXPECT_THROW(parse_matrix_file("[]"), InputError);
  EXPECT_THROW(parse_matrix_file(R"({"kind": "tensor", "two_s": 1, "data": []})"), InputError);
  EXPECT_THROW(parse_matrix_file(R"({"kind": "g_tensor", "two_s": 99, "data": []})"), InputError);
  EXPECT_THROW(parse_matrix_file(R"({"kind": "g_tensor", "two_s": 1, "data": [[1,2],[3,4]]})"), InputError);
  EXPECT_THROW(parse_matrix_file(R"({"kind": "g_tensor", "two_s": 1, "c": -1, "data": [[1,0,0],[0,1,0],[0,0,1]]})"),
               InputError);
  EXPECT_THROW(parse_matrix_file(R"({"kind": "vector", "two_s": 1, "data": [[1,0],[0]]})"), InputError);
  try {
    parse_matrix_file(R"({"kind": "vector", "two_s": 1, "data": [[1,0],[0,"x"]]})");
    FAIL();
  } catch (const InputError &e) {
    EXPECT_NE(std::string(e.what()).find("data[1][1]"), std::string::npos);
  }
}

TEST(MatrixFile, KindConversions) {
  const MatrixFile f = parse_matrix_file(R"({"kind": "g_tensor", "two_s": 1, "data": [[2,0,0],[0,2,0],[0,0,2]]})");
  EXPECT_EQ(to_g(f).matrix(), Mat3(2.0 * Mat3::Identity()));
  EXPECT_FALSE(f.c.has_value());
  EXPECT_THROW(to_zeeman(f), InputError);
  const MatrixFile nh = parse_matrix_file(
      R"({"kind": "zeeman_triple", "two_s": 1, "data": [[[[0,0],[1,0]],[[0,0],[0,0]]],[[[0,0],[0,0]],[[0,0],[0,0]]],[[[0,0],[0,0]],[[0,0],[0,0]]]]})");
  EXPECT_THROW(to_zeeman(nh), InputError);
}
