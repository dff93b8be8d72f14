#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + CONFSYM_CLI + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, VerifyCaseJsonReport) {
  auto r = cli("verify-case 3 --format json");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = json_of(r);
  EXPECT_TRUE(j["ok"].get<bool>());
  const auto& c = j["cases"][0];
  EXPECT_EQ(c["case"], "3");
  for (const auto& reg : c["regimes"])
    for (const auto& opt : reg["options"])
      for (const auto& e : opt["entries"])
        for (const char* key : {"case", "generator", "lambda", "remainder", "status", "aux_used"})
          EXPECT_TRUE(e.contains(key)) << key;
}

TEST(Cli, EveryTableCasePasses) {
  for (int n = 0; n <= 8; ++n) EXPECT_EQ(cli("verify-case " + std::to_string(n)).code, 0) << n;
}

TEST(Cli, TextAndJsonVerdictsAgree) {
  auto text = cli("verify-case all");
  auto j = json_of(cli("verify-case all --format json"));
  for (const auto& c : j["cases"]) {
    std::string line = "case " + c["case"].get<std::string>() + "  " + (c["ok"].get<bool>() ? "pass" : "FAIL");
    EXPECT_NE(text.out.find(line + "\n"), std::string::npos) << line;
  }
}

TEST(Cli, OutputIsDeterministic) {
  EXPECT_EQ(cli("verify-case all --format json").out, cli("verify-case all --format json").out);
  EXPECT_EQ(cli("fixture-check --seed 5").out, cli("fixture-check --seed 5").out);
}

TEST(Cli, PotentialVerdicts) {
  EXPECT_EQ(cli("verify-potential table2-row7").code, 0);
  EXPECT_EQ(cli("verify-potential").code, 0);
  EXPECT_EQ(cli("verify-potential --printed table2-row1").code, 1);
  EXPECT_EQ(cli("solve-potential table2-row3").code, 0);
  EXPECT_EQ(cli("solve-potential table2-row0").code, 1);
}

TEST(Cli, UnknownIdIsUsageError) {
  auto r = cli("verify-algebra no-such");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("sch1-zeta"), std::string::npos);
  EXPECT_EQ(cli("verify-case 99").code, 2);
  EXPECT_EQ(cli("list things").code, 2);
  EXPECT_EQ(cli("verify-case 3 --format yaml").code, 2);
  EXPECT_EQ(cli("verify-case 3 --param x").code, 2);
  EXPECT_EQ(cli("").code, 2);
}

TEST(Cli, ParameterOverrides) {
  EXPECT_EQ(cli("verify-algebra conf3 --param x=1/2").code, 0);
  auto j = json_of(cli("verify-potential kmod-sch1 --format json --param k=0"));
  EXPECT_TRUE(j["ok"].get<bool>());
}

TEST(Cli, ListsAreSorted) {
  auto j = json_of(cli("list cases --format json"));
  std::vector<std::string> ids;
  for (const auto& it : j["items"]) ids.push_back(it["id"]);
  EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));
  for (const char* id : {"0", "3a", "5a", "8"}) EXPECT_NE(std::find(ids.begin(), ids.end(), id), ids.end()) << id;
  EXPECT_EQ(cli("list fixtures").code, 0);
  EXPECT_EQ(cli("list potentials").code, 0);
}

TEST(Cli, NumericCheck) {
  EXPECT_EQ(cli("numeric-check sch1-zeta --param x=1/2 --generator Yp --generator X1").code, 0);
  EXPECT_EQ(cli("numeric-check sch1-zeta --param x=1 --generator X1").code, 1);
  EXPECT_EQ(cli("numeric-check sch1-zeta --param x=1 --generator X1 --expect broken").code, 0);
  EXPECT_EQ(cli("numeric-check sch1-zeta --generator X1").code, 2);
  EXPECT_EQ(cli("numeric-check sch1-zeta --param x=1/2 --grid 0:1:33").code, 2);
}

TEST(Cli, ReportDirectory) {
  auto dir = std::filesystem::temp_directory_path() / "confsym_cli_reports";
  std::filesystem::remove_all(dir);
  EXPECT_EQ(cli("fixture-check alt1", "CONFSYM_REPORT_DIR=" + dir.string()).code, 0);
  std::ifstream in(dir / "fixture-check-alt1.json");
  ASSERT_TRUE(in.good());
  EXPECT_TRUE(nlohmann::json::parse(in)["ok"].get<bool>());
}

TEST(Cli, RepresentationFile) {
  auto path = std::filesystem::temp_directory_path() / "confsym_cli_small.rep";
  std::ofstream(path) << "name: small\ncoordinates: t r zeta g\nfields: psi psis\nparams: x\n"
                         "generator X0:\n  t: -t\n  r: -1/2*r\n  multiplier: -1/2*x\n"
                         "generator Ym:\n  r: -1\n"
                         "bracket [X0, Ym]:\n  Ym: 1/2\n";
  EXPECT_EQ(cli("verify-algebra --rep-file " + path.string()).code, 0);
  std::ofstream(path) << "name: small\ncoordinates: t r zeta g\nfields: psi psis\nparams: x\n"
                         "generator X0:\n  t: -t\n  r: -1/2*r\n"
                         "generator Ym:\n  r: -1\n";
  EXPECT_EQ(cli("verify-algebra --rep-file " + path.string()).code, 1);
}
