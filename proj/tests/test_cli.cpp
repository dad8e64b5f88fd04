#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tracemetric/cli.hpp"
#include "tracemetric/errors.hpp"
#include "tracemetric/matrix_io.hpp"

using namespace tracemetric;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "tracemetric");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tracemetric_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

}  // namespace

TEST(MatrixIo, FormatNumber) {
  EXPECT_EQ(io::format_number(1.4142135623730951), "1.4142135623730951");
  EXPECT_EQ(io::format_number(2.0), "2");
  EXPECT_EQ(io::format_number(-0.5), "-0.5");
}

TEST(MatrixIo, ParseAndRoundTrip) {
  const Matrix m = io::parse_matrix(R"({"n": 2, "rows": [[1, 2], [3, 4.5]]})");
  EXPECT_EQ(m, (Matrix{{1, 2}, {3, 4.5}}));
  EXPECT_EQ(io::parse_matrix(io::to_json(m)), m);
  EXPECT_EQ(io::to_json(Matrix{{2, 0}, {0, 3}}), R"({"n": 2, "rows": [[2, 0], [0, 3]]})");
}

TEST(MatrixIo, ParseErrors) {
  EXPECT_THROW(io::parse_matrix("not json"), ParseError);
  EXPECT_THROW(io::parse_matrix(R"({"n": 2, "rows": [[1, 2]]})"), ParseError);
  EXPECT_THROW(io::parse_matrix(R"({"n": 2, "rows": [[1, 2], [3]]})"), ParseError);
  EXPECT_THROW(io::parse_matrix(R"({"rows": [[1]]})"), ParseError);
  EXPECT_THROW(io::parse_matrix(R"({"n": 2, "rows": [[1, "x"], [3, 4]]})"), ParseError);
  EXPECT_THROW(io::parse_symmetric(R"({"n": 2, "rows": [[1, 2], [3, 4]]})"), ParseError);
  EXPECT_THROW(io::load_matrix("/nonexistent/tracemetric.json"), ParseError);
}

TEST(MatrixIo, SymmetrizesWithinTolerance) {
  const io::LoadedSym s = io::parse_symmetric(R"({"n": 2, "rows": [[1, 2], [2.0000000000001, 4]]})");
  EXPECT_GT(s.asymmetry, 0.0);
  EXPECT_EQ(s.matrix(0, 1), s.matrix(1, 0));
}

TEST_F(CliTest, DistanceExample) {
  const std::string i = file("i.json", R"({"n": 2, "rows": [[1, 0], [0, 1]]})");
  const std::string d = file("d.json", R"({"n": 2, "rows": [[2.718281828459045, 0], [0, 0.36787944117144233]]})");
  const Outcome r = run_cli({"distance", i, d});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "1.4142135623730951\n");
  EXPECT_EQ(r.err, "");
}

TEST_F(CliTest, GeodesicMidpointAndTable) {
  const std::string i = file("i.json", R"({"n": 2, "rows": [[1, 0], [0, 1]]})");
  const std::string b = file("b.json", R"({"n": 2, "rows": [[4, 0], [0, 9]]})");
  const Outcome mid = run_cli({"geodesic", "--from", i, "--to", b});
  EXPECT_EQ(mid.code, 0) << mid.err;
  EXPECT_EQ(mid.out, "{\"n\": 2, \"rows\": [[2, 0], [0, 3]]}\n");

  const Outcome table = run_cli({"geodesic", "--from", i, "--to", b, "--steps", "2"});
  EXPECT_EQ(table.code, 0) << table.err;
  std::istringstream lines(table.out);
  std::vector<std::string> rows;
  for (std::string line; std::getline(lines, line);) rows.push_back(line);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], "{\"t\": 0, \"point\": {\"n\": 2, \"rows\": [[1, 0], [0, 1]]}}");
  EXPECT_EQ(rows[1], "{\"t\": 0.5, \"point\": {\"n\": 2, \"rows\": [[2, 0], [0, 3]]}}");

  EXPECT_EQ(run_cli({"geodesic", "--from", i, "--to", b, "--t", "0.3", "--steps", "2"}).code, 1);
}

TEST_F(CliTest, MeanAndTransporter) {
  const std::string a = file("a.json", R"({"n": 2, "rows": [[1, 0], [0, 4]]})");
  const std::string b = file("b.json", R"({"n": 2, "rows": [[9, 0], [0, 4]]})");
  const Outcome t = run_cli({"transporter", a, b});
  EXPECT_EQ(t.code, 0) << t.err;
  EXPECT_EQ(t.out, "{\"n\": 2, \"rows\": [[3, 0], [0, 1]]}\n");
  const Outcome m = run_cli({"mean", a, b});
  EXPECT_EQ(m.code, 0) << m.err;
  EXPECT_EQ(m.out, "{\"n\": 2, \"rows\": [[3, 0], [0, 4]]}\n");
}

TEST_F(CliTest, CurvatureReport) {
  const std::string q = file("q.json", R"({"n": 3, "rows": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})");
  const Outcome r = run_cli({"curvature", "--point", q, "--report"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("closed_form -3.75\n"), std::string::npos);
  EXPECT_NE(r.out.find("signature 3 0\n"), std::string::npos);
  EXPECT_NE(r.out.find("einstein_residual "), std::string::npos);

  const std::string off = file("off.json", R"({"n": 2, "rows": [[2, 0], [0, -1]]})");
  const Outcome o = run_cli({"curvature", "--point", off, "--report"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("signature 1 1\n"), std::string::npos);
  EXPECT_NE(o.out.find("einstein_residual n/a (|det| != 1)\n"), std::string::npos);
}

TEST_F(CliTest, Canonicalize) {
  const Outcome ii = run_cli({"canonicalize", "--word", "inv;inv", "--n", "3"});
  EXPECT_EQ(ii.code, 0) << ii.err;
  EXPECT_EQ(ii.out,
            "{\"a\": 0, \"b\": 0, \"component\": [1, 0, 0], \"M\": {\"n\": 3, \"rows\": [[1, 0, 0], [0, 1, 0], [0, 0, "
            "1]]}}\n");

  const std::string c = file("c.json", R"({"n": 2, "rows": [[2, 0], [0, 1]]})");
  const Outcome ic = run_cli({"canonicalize", "--word", "inv; congr:" + c});
  EXPECT_EQ(ic.code, 0) << ic.err;
  EXPECT_EQ(ic.out, "{\"a\": 1, \"b\": 0, \"component\": [1, 1, 0], \"M\": {\"n\": 2, \"rows\": [[0.5, 0], [0, 1]]}}\n");

  EXPECT_EQ(run_cli({"canonicalize", "--word", "inv"}).code, 1);
  EXPECT_EQ(run_cli({"canonicalize", "--word", "flip", "--n", "2"}).code, 1);
}

TEST_F(CliTest, IdentifyRoundTrips) {
  const std::string m = file("m.json", R"({"n": 3, "rows": [[2, 1, 0], [0, 1, 0.5], [0.3, 0, 1]]})");
  for (const char* family : {"congr", "inv", "psi", "inv_psi"}) {
    const Outcome r = run_cli({"identify", "--family", family, "--M", m, "--seed", "4"});
    EXPECT_EQ(r.code, 0) << family << ": " << r.err;
  }
  EXPECT_EQ(run_cli({"identify", "--family", "bogus", "--M", m}).code, 1);
}

TEST_F(CliTest, ErrorsAndExitCodes) {
  const std::string i = file("i.json", R"({"n": 2, "rows": [[1, 0], [0, 1]]})");
  const std::string j = file("j.json", R"({"n": 2, "rows": [[1, 0], [0, -1]]})");
  const std::string bad = file("bad.json", R"({"n": 2, "rows": [[1, 0]]})");

  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"distance", i}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
  EXPECT_EQ(run_cli({"--help"}).code, 0);

  const Outcome nonspd = run_cli({"distance", i, j});
  EXPECT_EQ(nonspd.code, 1);
  EXPECT_NE(nonspd.err.find("not positive definite"), std::string::npos);

  const Outcome parse = run_cli({"distance", i, bad});
  EXPECT_EQ(parse.code, 1);
  EXPECT_NE(parse.err.find("error: "), std::string::npos);

  EXPECT_EQ(run_cli({"verify", "--suite", "nope"}).code, 1);
  EXPECT_EQ(run_cli({"verify", "--suite", "metric", "--n", "9"}).code, 1);
  EXPECT_EQ(run_cli({"verify", "--suite", "metric", "--n", "2", "--p", "3"}).code, 1);
}

TEST_F(CliTest, SymmetrizationNote) {
  const std::string i = file("i.json", R"({"n": 2, "rows": [[1, 0], [0, 1]]})");
  const std::string near = file("near.json", R"({"n": 2, "rows": [[2, 1e-13], [0, 2]]})");
  const Outcome r = run_cli({"distance", i, near});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("note: " + near + " symmetrized (max asymmetry 1e-13)"), std::string::npos) << r.err;
}

TEST(CliVerify, DeterministicAcrossRunsAndJobs) {
  const Outcome first = run_cli({"verify", "--suite", "metric", "--seed", "3"});
  const Outcome second = run_cli({"verify", "--suite", "metric", "--seed", "3"});
  const Outcome threaded = run_cli({"verify", "--suite", "metric", "--seed", "3", "--jobs", "2"});
  EXPECT_EQ(first.code, 0) << first.err;
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(first.out, threaded.out);
  EXPECT_NE(first.out.find("PASS C8 "), std::string::npos);
  EXPECT_NE(first.out.find("PASS C12 "), std::string::npos);
  EXPECT_EQ(first.out.find(" s)"), std::string::npos);
}

TEST(CliVerify, SeedFromEnvironment) {
  ::setenv("TRACE_METRIC_SEED", "3", 1);
  const Outcome env = run_cli({"verify", "--suite", "metric"});
  ::unsetenv("TRACE_METRIC_SEED");
  EXPECT_EQ(env.out, run_cli({"verify", "--suite", "metric", "--seed", "3"}).out);

  ::setenv("TRACE_METRIC_SEED", "abc", 1);
  EXPECT_EQ(run_cli({"verify", "--suite", "metric"}).code, 1);
  ::unsetenv("TRACE_METRIC_SEED");
}

TEST(Executable, ExitCodes) {
  const std::string exe = TRACEMETRIC_EXE;
  EXPECT_EQ(std::system((exe + " canonicalize --word inv --n 2 > /dev/null").c_str()), 0);
  const int bad = std::system((exe + " frobnicate > /dev/null 2>&1").c_str());
  ASSERT_TRUE(WIFEXITED(bad));
  EXPECT_EQ(WEXITSTATUS(bad), 1);
}
