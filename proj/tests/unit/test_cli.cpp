#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli_app.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ptchain");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = ptchain::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  return lines;
}

}  // namespace

TEST(Cli, EtaThresholdReport) {
  const auto r = run({"eta-c", "--j1", "2", "--j2", "0.4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r);
  EXPECT_DOUBLE_EQ(j["results"]["eta_c"].get<double>(), 1.6);
  EXPECT_EQ(j["results"]["which_min"], "DIFF");
  EXPECT_TRUE(j.contains("config"));
  EXPECT_TRUE(j.contains("diagnostics"));
}

TEST(Cli, CounterpartPastThresholdIsNotAnError) {
  const auto r = run({"counterpart", "--j1", "2", "--j2", "0.4", "--eta", "1.7"});
  ASSERT_EQ(r.code, 0);
  const auto j = parse(r);
  EXPECT_EQ(j["results"]["valid"], false);
  EXPECT_EQ(j["results"]["reason"], "eta >= eta_c");
}

TEST(Cli, CounterpartAllRootsVerify) {
  const auto r = run({"counterpart", "--preset", "fig1-i", "--eta", "0.9", "--root", "all"});
  ASSERT_EQ(r.code, 0);
  const auto sols = parse(r)["results"]["solutions"];
  ASSERT_EQ(sols.size(), 4u);
  for (const auto& s : sols) EXPECT_EQ(s["verification"]["pass"], true);
}

TEST(Cli, BandsCsvLayout) {
  const auto r = run({"bands", "--preset", "fig2-solid", "--grid", "10", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  const auto lines = data_lines(r.out);
  ASSERT_EQ(lines.size(), 11u);
  EXPECT_EQ(lines[0], "k,re_lambda_minus,im_lambda_minus,re_lambda_plus,im_lambda_plus,is_real");
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
  EXPECT_NE(r.out.find("# preset=\"fig2-solid\""), std::string::npos);
  bool any_broken = false;
  for (std::size_t i = 1; i < lines.size(); ++i) any_broken = any_broken || lines[i].ends_with(",false");
  EXPECT_TRUE(any_broken);
}

TEST(Cli, BandsInUnitsOfEta) {
  const auto plain = parse(run({"bands", "--preset", "fig1-i", "--eta", "0.5", "--grid", "4"}));
  const auto scaled = parse(run({"bands", "--preset", "fig1-i", "--eta", "0.5", "--grid", "4", "--units-eta"}));
  const double a = plain["results"]["samples"][1]["lambda_plus"]["re"];
  const double b = scaled["results"]["samples"][1]["lambda_plus"]["re"];
  EXPECT_NEAR(b, 2.0 * a, 1e-14);
}

TEST(Cli, HermitianBandsAreReal) {
  const auto j = parse(run({"bands", "--j1", "1.2", "--j2", "0.3", "--h", "0.4", "--grid", "50"}));
  EXPECT_EQ(j["results"]["fully_real"], true);
}

TEST(Cli, PhaseDiagramCsv) {
  const auto r = run({"phase-diagram", "--preset", "fig1-i", "--h-range", "0,3,4", "--eta-range", "0,2,3",
                      "--grid", "128", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = data_lines(r.out);
  ASSERT_EQ(lines.size(), 13u);
  EXPECT_EQ(lines[0], "h,eta,reality,order,h_c1,h_c2");
  EXPECT_EQ(lines[3], "0,2,BROKEN,UNDEFINED,1.3266499161421599,");
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"reality", "--preset", "fig2-solid"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, ConfigFileLosesToFlags) {
  const auto path = std::filesystem::temp_directory_path() / "ptchain_cli_test.cfg";
  {
    std::ofstream f(path);
    f << "# chain\nj1 = 2\nj2=0.4\nh = 0.7\neta = 0.3\n";
  }
  const auto r = run({"critical-fields", "--config", path.string(), "--h", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r);
  EXPECT_DOUBLE_EQ(j["config"]["h"].get<double>(), 2.0);
  EXPECT_DOUBLE_EQ(j["config"]["eta"].get<double>(), 0.3);
  EXPECT_NE(r.err.find("--h overrides"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, UndefinedFieldsAreNullWithReason) {
  const auto j = parse(run({"critical-fields", "--preset", "fig1-i", "--eta", "1.7"}));
  EXPECT_TRUE(j["results"]["h_c2"].is_null());
  EXPECT_EQ(j["diagnostics"]["undefined"][0]["field"], "h_c2");
}

TEST(Cli, EdCheckPasses) {
  const auto r = run({"ed-check", "--j1", "1.0", "--j2", "0.5", "--gamma1", "0.3", "--h", "0.6"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = parse(r);
  EXPECT_EQ(j["results"]["pass"], true);
  for (const auto& run : j["results"]["runs"]) EXPECT_LT(run["assembly_max_residual"].get<double>(), 1e-8);
}

TEST(Cli, EdCheckRespectsSiteCap) {
  EXPECT_EQ(run({"ed-check", "--n-sites", "14"}).code, 2);
  EXPECT_EQ(run({"ed-check", "--n-sites", "14", "--max-sites", "15"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bands", "--n-sites", "5"}).code, 2);
  EXPECT_EQ(run({"bands", "--preset", "fig3"}).code, 2);
  EXPECT_EQ(run({"bands", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"bands", "--h", "-1"}).code, 2);
  EXPECT_EQ(run({"phase-diagram", "--h-range", "0,1"}).code, 2);
  EXPECT_EQ(run({"bands", "--config", "/nonexistent/file"}).code, 2);
  EXPECT_EQ(run({"bands", "--out", "/nonexistent/dir/out.csv"}).code, 2);
}

TEST(Cli, WritesToOutPath) {
  const auto path = std::filesystem::temp_directory_path() / "ptchain_cli_out.json";
  const auto r = run({"eta-c", "--preset", "fig1-ii", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_NEAR(j["results"]["eta_c"].get<double>(), 0.8, 1e-15);
  std::filesystem::remove(path);
}

TEST(Cli, HelpDocumentsColumns) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("re_lambda_minus"), std::string::npos);
  EXPECT_NE(r.out.find("h_c1"), std::string::npos);
}
