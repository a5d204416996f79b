#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

// Runs the CLI with `args` (stderr discarded) and returns its exit code and stdout.
CliRun cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" CWKB_CLI_PATH "\" " + args + " 2>/dev/null";
  CliRun run;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return run;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) run.out.append(buf.data(), n);
  const int status = pclose(pipe);
  run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  return lines;
}

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_NE(cli("").code, 0);
  EXPECT_NE(cli("spectrum --potential ho --l 1").code, 0);           // missing r0 list
  EXPECT_NE(cli("spectrum --potential ho --l 1 --r0").code, 0);      // empty r0 list
  EXPECT_NE(cli("spectrum --potential ho --r0 -1").code, 0);
  EXPECT_NE(cli("spectrum --potential morse --r0 1").code, 0);
  EXPECT_NE(cli("spectrum --potential hulthen --r0 10").code, 0);   // delta missing
  EXPECT_NE(cli("spectrum --potential ho --r0 1 --method wkb").code, 0);
  EXPECT_NE(cli("table --id VI").code, 0);
  EXPECT_NE(cli("table --id I --format xml").code, 0);
  EXPECT_NE(cli("wavefunction --potential ho --l 1 --r0 5 --samples 0").code, 0);
  EXPECT_NE(cli("spectrum --potential ho --r0 2 --grid-points 10").code, 0);
  EXPECT_NE(cli("compare --potential ho --r0 2 --method exact").code, 0);
}

TEST(Cli, SpectrumRows) {
  const CliRun run = cli("spectrum --potential ho --l 1 --nr 0 --r0 3.0 --method perturbative --method exact");
  ASSERT_EQ(run.code, 0);
  const auto lines = data_lines(run.out);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "r0,method,n_r,l,E,regime,residual,warnings,error");
  EXPECT_EQ(lines[1].rfind("3,perturbative,0,1,2.54779202", 0), 0u) << lines[1];
  EXPECT_EQ(lines[2].rfind("3,exact,0,1,2.53", 0), 0u) << lines[2];
}

TEST(Cli, FailedSolveExitsNonzero) {
  // l = 0 has no perturbative centrifugal term to split off.
  const CliRun run = cli("spectrum --potential ho --l 0 --r0 3.0");
  EXPECT_EQ(run.code, 1);
  const auto lines = data_lines(run.out);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_NE(lines[1].find("3,perturbative,0,0,,"), std::string::npos) << lines[1];
}

TEST(Cli, TableOneLayout) {
  const CliRun run = cli("table --id I --format csv");
  ASSERT_EQ(run.code, 0);
  const auto lines = data_lines(run.out);
  ASSERT_EQ(lines.size(), 8u);
  EXPECT_EQ(lines[0], "r0,E,E_WKB,E_var,E_exact,flags");
  EXPECT_NE(lines[3].find("near-turning-point"), std::string::npos);
  EXPECT_EQ(lines[1].rfind("1,", 0), 0u);
}

TEST(Cli, TableFiveRows) {
  const CliRun run = cli("table --id v");
  ASSERT_EQ(run.code, 0);
  const auto lines = data_lines(run.out);
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines[0], "r0,state,n_r,l,E,E_WKB,E_exact,E_exact_lit,E_1N,flags");
  // Literature constants are echoed unchanged in the last row.
  EXPECT_NE(lines.back().find(",-0.04189,-0.04196,"), std::string::npos) << lines.back();
}

TEST(Cli, ByteStableOutput) {
  const CliRun a = cli("spectrum --potential hydrogen --l 2 --r0 20 8 1 --method perturbative --method langer");
  const CliRun b = cli("spectrum --potential hydrogen --l 2 --r0 20 8 1 --method perturbative --method langer");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto lines = data_lines(a.out);
  ASSERT_EQ(lines.size(), 7u);
  EXPECT_EQ(lines[1].rfind("1,perturbative", 0), 0u);
  EXPECT_EQ(lines[6].rfind("20,langer", 0), 0u);
}

TEST(Cli, JsonOutputAndFile) {
  const std::string path = ::testing::TempDir() + "cwkb_cli_test.json";
  const CliRun run = cli("spectrum --potential hulthen --delta 0.1 --l 1 --r0 25 --format json --out " + path);
  ASSERT_EQ(run.code, 0);
  EXPECT_TRUE(run.out.empty());
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_NEAR(j[0]["E"].get<double>(), -0.07917809026852615, 1e-7);
  EXPECT_EQ(j[0]["method"], "perturbative");
  EXPECT_EQ(j[0]["error"], "");
  std::remove(path.c_str());
}

TEST(Cli, WavefunctionTrace) {
  const CliRun run = cli("wavefunction --potential hydrogen --l 2 --r0 8 --samples 200");
  ASSERT_EQ(run.code, 0);
  const auto lines = data_lines(run.out);
  ASSERT_GT(lines.size(), 100u);
  EXPECT_EQ(lines[0], "r,psi,region");
  std::istringstream last(lines.back());
  std::string r, psi;
  std::getline(last, r, ',');
  std::getline(last, psi, ',');
  EXPECT_EQ(std::stod(r), 8.0);
  EXPECT_LE(std::abs(std::stod(psi)), 1e-6);
}

TEST(Cli, CompareIdenticalMethods) {
  const CliRun run = cli("compare --potential ho --l 1 --r0 2 --method langer --method langer");
  ASSERT_EQ(run.code, 0);
  const auto lines = data_lines(run.out);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_NE(lines[1].find(",tie,"), std::string::npos) << lines[1];
}

TEST(Cli, CompareTablesTally) {
  const CliRun run = cli("compare --id I --format csv");
  ASSERT_EQ(run.code, 0);
  EXPECT_NE(run.out.find("# wins_perturbative: "), std::string::npos);
  EXPECT_NE(run.out.find("# wins_langer: "), std::string::npos);
}

TEST(Cli, ToleranceEnvironmentOverride) {
  const std::string args = "spectrum --potential ho --l 1 --r0 1.0 --format json";
  const CliRun base = cli(args);
  const CliRun loose = cli(args, "CWKB_DEFAULT_TOL=1e-3");
  ASSERT_EQ(base.code, 0);
  ASSERT_EQ(loose.code, 0);
  const double e_base = nlohmann::json::parse(base.out)[0]["E"].get<double>();
  const double e_loose = nlohmann::json::parse(loose.out)[0]["E"].get<double>();
  EXPECT_NEAR(e_loose, e_base, 1e-2);
  const CliRun flag = cli(args + " --tol 1e-12");
  ASSERT_EQ(flag.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(flag.out)[0]["E"].get<double>(), e_base, 1e-9);
}
