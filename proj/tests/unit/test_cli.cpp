#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spinham/types.hpp"
#include "spinham_tools/commands.hpp"
#include "spinham_tools/matrix_file.hpp"

using namespace spinham;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "spinham");
  std::vector<const char *> argv;
  for (const auto &a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("spinham_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
    unsetenv("SPINHAM_C");
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string &name) const { return (dir_ / name).string(); }

  void write(const std::string &name, const std::string &text) const {
    std::ofstream(path(name)) << text;
  }

  std::filesystem::path dir_;
};

} // namespace

TEST_F(CliTest, SpinMatrices) {
  const Result r = run({"spin-matrices", "--two-s", "1", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["schema_version"], 1);
  EXPECT_EQ(doc["data"][0][0][1][0].get<double>(), 0.5);

  const Result q = run({"spin-matrices", "--two-s", "3", "--json"});
  EXPECT_EQ(q.code, 0);
  EXPECT_LE(json::parse(q.out)["commutator_residual"].get<double>(), 1e-13);

  const Result bad = run({"spin-matrices", "--two-s", "99"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("dimension cap"), std::string::npos);
}

TEST_F(CliTest, PrincipalAxes) {
  write("g.json", R"({"kind": "g_tensor", "two_s": 1, "data": [[2,0,0],[0,2,0],[0,0,2]]})");
  Result r = run({"principal-axes", "--input", path("g.json"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json doc = json::parse(r.out);
  EXPECT_EQ(doc["g_values"], json::array({2.0, 2.0, 2.0}));
  EXPECT_EQ(doc["det_sign"], 1);

  write("neg.json", R"({"kind": "g_tensor", "two_s": 1, "data": [[0,2,0],[2,0,0],[0,0,2]]})");
  r = run({"principal-axes", "--input", path("neg.json"), "--json"});
  doc = json::parse(r.out);
  EXPECT_EQ(doc["det_sign"], -1);
  EXPECT_LT(doc["g_values"][2].get<double>(), 0.0);

  write("sing.json", R"({"kind": "g_tensor", "two_s": 1, "data": [[1,0.2,0],[0,0,0],[0.3,0,1.5]]})");
  r = run({"principal-axes", "--input", path("sing.json"), "--json"});
  doc = json::parse(r.out);
  EXPECT_TRUE(doc["singular"].get<bool>());
  EXPECT_EQ(doc["g_values"][2].get<double>(), 0.0);

  r = run({"principal-axes", "--input", path("sing.json")});
  EXPECT_NE(r.out.find("singular"), std::string::npos);
}

TEST_F(CliTest, MalformedInputsExitTwo) {
  write("broken.json", "{\"kind\": \"g_tensor\",\n \"two_s\": 1, \"data\": [[1,2,3]\n");
  Result r = run({"principal-axes", "--input", path("broken.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line"), std::string::npos);
  EXPECT_EQ(run({"principal-axes", "--input", path("missing.json")}).code, 2);
  EXPECT_EQ(run({"principal-axes"}).code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
  EXPECT_EQ(run({"splittings", "--input", path("broken.json"), "--field", "0", "0"}).code, 2);
}

TEST_F(CliTest, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST_F(CliTest, Splittings) {
  write("g.json", R"({"kind": "g_tensor", "two_s": 1, "data": [[2,0,0],[0,2,0],[0,0,2]]})");
  const Result r = run({"splittings", "--input", path("g.json"), "--field", "0", "0", "1", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_NEAR(doc["levels"][1].get<double>(), 1.0 / (2.0 * kSpeedOfLight), 1e-18);
  EXPECT_NEAR(doc["levels"][0].get<double>(), -1.0 / (2.0 * kSpeedOfLight), 1e-18);
}

TEST_F(CliTest, SpeedOfLightPrecedence) {
  write("g.json", R"({"kind": "g_tensor", "two_s": 1, "data": [[2,0,0],[0,2,0],[0,0,2]]})");
  write("gc.json", R"({"kind": "g_tensor", "two_s": 1, "c": 100, "data": [[2,0,0],[0,2,0],[0,0,2]]})");
  auto level = [&](const std::vector<std::string> &extra, const std::string &file) {
    std::vector<std::string> args{"splittings", "--input", path(file), "--field", "0", "0", "1", "--json"};
    args.insert(args.end(), extra.begin(), extra.end());
    return json::parse(run(args).out)["levels"][1].get<double>();
  };
  EXPECT_NEAR(level({}, "g.json"), 0.5 / kSpeedOfLight, 1e-18);
  setenv("SPINHAM_C", "50", 1);
  EXPECT_NEAR(level({}, "g.json"), 0.5 / 50.0, 1e-18);
  EXPECT_NEAR(level({}, "gc.json"), 0.5 / 100.0, 1e-18);
  EXPECT_NEAR(level({"--c", "10"}, "gc.json"), 0.5 / 10.0, 1e-18);
  setenv("SPINHAM_C", "abc", 1);
  EXPECT_EQ(run({"splittings", "--input", path("g.json"), "--field", "0", "0", "1"}).code, 2);
  unsetenv("SPINHAM_C");
}

TEST_F(CliTest, PipelineAndModelViolation) {
  ASSERT_EQ(run({"generate", "--seed", "5", "--two-s", "3", "--output", path("z.json")}).code, 0);
  Result r = run({"extract", "--input", path("z.json"), "--output", path("g.json"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LE(json::parse(r.out)["span_residual"].get<double>(), 1e-13);
  r = run({"cross-validate", "--input", path("g.json"), "--trials", "3", "--seed", "2", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["failures"], 0);

  // A cubic S_z term is outside the span of the spin matrices.
  io::MatrixFile f = io::read_matrix_file(path("z.json"));
  const SpinMatrices sm = spin_matrices(SpinQuantum(3));
  f.data[2] += 1e-4 * sm.sz * sm.sz * sm.sz;
  write("bad.json", io::serialize(f));
  EXPECT_EQ(run({"extract", "--input", path("bad.json")}).code, 4);
  EXPECT_EQ(run({"alt-diag", "--input", path("bad.json")}).code, 4);
}

TEST_F(CliTest, AltDiag) {
  ASSERT_EQ(run({"generate", "--seed", "1", "--two-s", "1", "--no-scramble", "--kind", "g_tensor", "--output",
                 path("g.json")})
                .code,
            0);
  // Not in a diagonal-G frame: precondition error.
  ASSERT_EQ(run({"generate", "--seed", "1", "--two-s", "1", "--output", path("z.json")}).code, 0);
  EXPECT_EQ(run({"alt-diag", "--input", path("z.json")}).code, 2);

  write("zd.json", io::serialize(io::from_zeeman(
                       build_zeeman(GMatrixSmall(Vec3(2.1, 1.9, 2.0).asDiagonal().toDenseMatrix()),
                                    spin_matrices(SpinQuantum(2)), kSpeedOfLight),
                       std::nullopt)));
  const Result r = run({"alt-diag", "--input", path("zd.json"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LE(json::parse(r.out)["residual"].get<double>(), 1e-12);
}

TEST_F(CliTest, Verify) {
  for (const char *ts : {"1", "2", "5"}) {
    const Result r = run({"verify", "--two-s", ts, "--trials", "100", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_LE(json::parse(r.out)["worst"].get<double>(), 1e-10);
  }
}

TEST_F(CliTest, GenerateIsDeterministic) {
  const Result a = run({"generate", "--seed", "42", "--two-s", "2", "--det-sign", "-1"});
  const Result b = run({"generate", "--seed", "42", "--two-s", "2", "--det-sign", "-1"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const io::MatrixFile f = io::parse_matrix_file(a.out);
  EXPECT_EQ(f.kind, io::Kind::zeeman_triple);
  EXPECT_EQ(run({"generate", "--seed", "1", "--two-s", "2", "--singular-rows", "5"}).code, 2);
}
