#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <gtest/gtest.h>

namespace {

struct Run {
  int code;
  std::string out;
};

// Runs the CLI through the shell; stderr is folded into the captured output.
Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " QIDLAB_CLI_PATH " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const char* name) { return std::string(QIDLAB_DATA_DIR) + "/" + name; }

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, LatticeApproximation) {
  const auto r = run("approximate " + data("fair_bernoulli.json") + " --mode lattice --eps 0.02");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "\"construction\": \"lattice\""));
  EXPECT_TRUE(contains(r.out, "\"verified\": true"));
}

TEST(Cli, ShapeMismatchIsInputError) {
  const auto r = run("approximate " + data("fair_bernoulli.json") + " --mode abs --eps 0.1");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.out, "pure density"));
}

TEST(Cli, EpsOutOfRange) {
  EXPECT_EQ(run("approximate " + data("fair_bernoulli.json") + " --mode lattice --eps 1.5").code, 2);
}

TEST(Cli, ParseErrors) {
  EXPECT_EQ(run("approximate " + data("fair_bernoulli.json") + " --mode nope --eps 0.1").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("tv " + data("no_such_file.json") + " " + data("uniform.json")).code, 2);
}

TEST(Cli, CheckZeroFree) {
  auto r = run("check-zero-free " + data("fair_bernoulli.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "\"verdict\": \"zero found\""));
  r = run("check-zero-free " + data("two_atom.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "\"verdict\": \"zero-free at resolution\""));
  r = run("check-zero-free " + data("degenerate.json"));
  EXPECT_TRUE(contains(r.out, "\"min_modulus\": 1,"));
  r = run("check-zero-free " + data("two_atom.json") + " --window 10 --step 0.01");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "\"window_T\": 10,"));
}

TEST(Cli, SpectralPair) {
  auto r = run("spectral-pair " + data("poisson.json") + " --K 16");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "\"atoms\": [[1, 0.69999999"));
  r = run("spectral-pair " + data("degenerate.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "\"atoms\": []"));
  r = run("spectral-pair " + data("fair_bernoulli.json"));
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(contains(r.out, "not extractable: CF zero"));
}

TEST(Cli, TotalVariation) {
  const auto r = run("tv " + data("fair_bernoulli.json") + " " + data("degenerate.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"value\": 2, \"error_bound\": 0}\n");
}

TEST(Cli, Scans) {
  auto r = run("kutlu-scan --step 0.02");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "t1,t2,modulus");
  r = run("inf-scan 3/2 --ladder 20,40");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "T,min_modulus,argmin_t");
  EXPECT_TRUE(contains(r.out, "\n40,0.2024488"));
  EXPECT_EQ(run("inf-scan bogus").code, 2);
}

TEST(Cli, OutFile) {
  const std::string path = ::testing::TempDir() + "qidlab_tv.json";
  EXPECT_EQ(run("tv " + data("uniform.json") + " " + data("uniform.json") + " --out " + path).code, 0);
  FILE* f = std::fopen(path.c_str(), "r");
  ASSERT_NE(f, nullptr);
  std::array<char, 128> buf{};
  ASSERT_NE(std::fgets(buf.data(), buf.size(), f), nullptr);
  std::fclose(f);
  EXPECT_EQ(std::string(buf.data()).rfind("{\"value\": 0, \"error_bound\": ", 0), 0u);
  std::remove(path.c_str());
}

TEST(Cli, ConfigFromEnvironment) {
  const std::string bad = ::testing::TempDir() + "qidlab_bad_config.json";
  FILE* f = std::fopen(bad.c_str(), "w");
  ASSERT_NE(f, nullptr);
  std::fputs("{\"scan_step\": -1}", f);
  std::fclose(f);
  EXPECT_EQ(run("kutlu-scan --step 0.05", "QIDLAB_CONFIG=" + bad).code, 2);
  std::remove(bad.c_str());
}
