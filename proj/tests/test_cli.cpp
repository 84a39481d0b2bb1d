#include <gtest/gtest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(COHOMKIT_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(COHOMKIT_DATA_DIR) + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("cohomkit_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Cli, CohomologyExample) {
  const auto r = cli("cohomology --group c2 --coeff Z --deg 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Z/2"), std::string::npos) << r.out;
}

TEST(Cli, ThickExample) {
  const auto r = cli("thick --p 3 --seed 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("{1,2}"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("2 thick tensor ideals"), std::string::npos) << r.out;
}

TEST(Cli, JsonReportIsStamped) {
  const auto r = cli("--json cohomology --group s3 --coeff Z --deg 4");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("command"), "cohomology");
  EXPECT_TRUE(j.contains("version"));
  EXPECT_FALSE(j.contains("wall_time_seconds"));
  const auto t = nlohmann::json::parse(cli("--json --timing cohomology --group c2 --coeff Z --deg 1").out);
  EXPECT_TRUE(t.contains("wall_time_seconds"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("cohomology --group c9999 --coeff Z --deg 1").code, 2);
  EXPECT_EQ(cli("no-such-command").code, 2);
  EXPECT_EQ(cli("cohomology --group c2").code, 2);
  EXPECT_EQ(cli("fibre --group c2 --module z/2 --projdim").code, 2);
  EXPECT_EQ(cli("fiso --group c2 --p 4 --max-deg 4").code, 2);
  EXPECT_EQ(cli("--help").code, 0);
  EXPECT_EQ(cli("fiso --group s3 --p 3 --max-deg 6").code, 0);
  EXPECT_EQ(cli("dualising --group q8").code, 0);
  EXPECT_EQ(cli("koszul --elements 2,3,5").code, 0);
  EXPECT_EQ(cli("kappa --group klein4 --p 2 --max-deg 6").code, 0);
}

TEST(Cli, SuitesByNameAndAlias) {
  const auto r = cli("verify-paper --suite koszul");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS koszul"), std::string::npos);
  const auto a = cli("verify-paper --suite lemma3.3");
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("PASS dualising"), std::string::npos);
  EXPECT_EQ(cli("verify-paper --suite nonsense").code, 2);
}

TEST(Cli, OutputIsDeterministic) {
  for (const std::string args : {"--json ring --group klein4 --coeff Z/2 --max-deg 3",
                                 "--json fiso --group c4 --p 2 --max-deg 6",
                                 "--json fibre --group c6 --module aug --projdim"}) {
    const auto a = cli(args), b = cli(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, RecheckAcceptsGenuineReports) {
  for (const std::string args : {"--json fiso --group s3 --p 2 --max-deg 6", "--json dualising --group s3",
                                 "--json koszul --elements 2,3", "--json kappa --group c2 --p 2 --max-deg 6",
                                 "--json fibre --group c3 --module zg --projdim"}) {
    const auto r = cli(args);
    ASSERT_EQ(r.code, 0) << args;
    const auto path = scratch("report.json");
    write(path, r.out);
    const auto re = cli("--recheck " + path.string());
    EXPECT_EQ(re.code, 0) << args << "\n" << re.out;
    EXPECT_NE(re.out.find("0 failures"), std::string::npos) << re.out;
  }
}

TEST(Cli, RecheckRejectsTamperedWitness) {
  const auto r = cli("--json koszul --elements 2,3");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  // Negating phi_0 keeps it unimodular but breaks the chain-map square.
  auto& phi = j.at("phi").at(0).at("entries");
  phi[0][0] = -phi[0][0].get<long long>();
  const auto path = scratch("tampered.json");
  write(path, j.dump());
  EXPECT_EQ(cli("--recheck " + path.string()).code, 1);
}

TEST(Cli, DataFiles) {
  auto r = cli("cohomology --group " + data("s3.json") + " --coeff Z --deg 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Z/6"), std::string::npos) << r.out;
  r = cli("cohomology --group " + data("d8.json") + " --coeff Z/2 --deg 3");
  EXPECT_NE(r.out.find("= Z/2 + Z/2 + Z/2 + Z/2\n"), std::string::npos) << r.out;
  r = cli("fibre --group c2 --module " + data("c2_regular_z.json") + " --projdim");
  EXPECT_NE(r.out.find("projective dimension: 0"), std::string::npos) << r.out;
  r = cli("fibre --group c2 --module " + data("c2_sign_z.json") + " --projdim");
  EXPECT_NE(r.out.find("projective dimension: inf"), std::string::npos) << r.out;
  r = cli("fibre --group c2 --module " + data("c2_torsion_z2.json") + " --gproj");
  EXPECT_NE(r.out.find("Gorenstein projective: no"), std::string::npos) << r.out;
  EXPECT_EQ(cli("cohomology --group " + data("missing.json") + " --coeff Z --deg 1").code, 2);
}
