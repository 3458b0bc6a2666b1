#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qmmp/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::vector<const char*> argv{"qmmp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = qmmp::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(QMMP_DATA_DIR) + "/" + name; }

nlohmann::json structured(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "structured"});
  return nlohmann::json::parse(run(args).out);
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, WallsKronecker) {
  const auto j = structured({"walls", "--quiver", data("kronecker2.json"), "--dim", "1,1"});
  EXPECT_EQ(j["exit_code"], 0);
  EXPECT_EQ(j["result"]["walls"].size(), 1u);
  const auto k = structured({"walls", "--quiver", data("kronecker2.json"), "--dim", "2,1"});
  EXPECT_EQ(k["result"]["walls"].size(), 2u);
}

TEST(Cli, WallSideZeroOnWall) {
  const auto dir = ::testing::TempDir();
  const std::string path = dir + "/on_wall_charge.json";
  {
    std::ofstream f(path);
    f << R"({"charge": [["1", "1", "1"], ["2", "2", "2"]]})";
  }
  const auto r = run({"walls", "--quiver", data("kronecker2.json"), "--dim", "1,1", "--charge", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "side=0")) << r.out;
}

TEST(Cli, SimplesExitCodes) {
  EXPECT_EQ(run({"simples", "--quiver", data("cycle3.json"), "--dim", "1,1,1"}).code, 0);
  const auto neg = run({"simples", "--quiver", data("kronecker2.json"), "--dim", "1,1"});
  EXPECT_EQ(neg.code, 1);
  EXPECT_TRUE(contains(neg.out, "DestabilizingVertex(1, quotient"));
}

TEST(Cli, ClassifyModes) {
  EXPECT_TRUE(contains(run({"classify", "--two-vertex", "4", "1"}).out, "DivisorialContraction"));
  EXPECT_TRUE(contains(run({"classify", "--irreducible", "0", "2"}).out, "GeneralizedFlop"));
  EXPECT_TRUE(contains(run({"classify", "--flip", "--spec", data("spec_flip.json"), "--dim", "3"}).out, "GeneralizedMFS"));
  EXPECT_TRUE(contains(run({"classify", "--flip", "--spec", data("spec_flip.json"), "--dim", "2"}).out, "GeneralizedFlip"));
  EXPECT_TRUE(contains(run({"classify", "--flop", "--quiver", data("symmetric2.json"), "--dim", "1,1"}).out, "GeneralizedFlop"));
  const auto neg = run({"classify", "--irreducible", "-1", "2"});
  EXPECT_EQ(neg.code, 0);
  EXPECT_TRUE(contains(neg.out, "reversed"));
}

TEST(Cli, ClassifyErrors) {
  EXPECT_EQ(run({"classify", "--flip", "--spec", data("spec_flop.json"), "--dim", "1"}).code, 3);
  EXPECT_EQ(run({"classify", "--two-vertex", "4", "1", "--irreducible", "1", "1"}).code, 2);
  EXPECT_EQ(run({"classify"}).code, 2);
  EXPECT_EQ(run({"classify", "--flop", "--quiver", data("kronecker2.json"), "--dim", "1,1"}).code, 3);
  EXPECT_EQ(run({"classify", "--flop", "--quiver", data("missing.json"), "--dim", "1,1"}).code, 2);
}

TEST(Cli, SeriesMacMahon) {
  const auto j = structured({"series", "macmahon", "--e", "1", "--qmax", "9"});
  std::vector<std::string> coeffs;
  for (const auto& c : j["result"]["coefficients"]) coeffs.push_back(c.get<std::string>());
  EXPECT_EQ(coeffs, (std::vector<std::string>{"1", "1", "3", "6", "13", "24", "48", "86", "160", "282"}));
}

TEST(Cli, SeriesTelescope) {
  const std::vector<std::string> base{"series", "telescope", "--classes", data("classes.json"), "--n-table",
                                      data("n_table.json"), "--l-table", data("l_table.json"), "--walls"};
  auto ok = base;
  ok.push_back(data("walls.json"));
  EXPECT_EQ(run(ok).code, 0);
  auto bad = base;
  bad.push_back(data("walls_perturbed.json"));
  const auto r = run(bad);
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.out, "first discrepancy"));
}

TEST(Cli, SeriesDtptIdentity) {
  const auto r = run({"series", "dtpt", "--e", "0", "--qmax", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "t^[] q^0: 1"));
  EXPECT_FALSE(contains(r.out, "q^1:"));
}

TEST(Cli, SeriesPreconditions) {
  EXPECT_EQ(run({"series", "pt-formula", "--classes", data("classes.json"), "--n-table", data("n_table.json"),
                 "--l-table", data("l_table_asym.json")})
                .code,
            3);
  EXPECT_EQ(run({"series", "palindrome", "--classes", data("classes.json"), "--l-table", data("l_table_asym.json")}).code, 1);
  EXPECT_EQ(run({"series", "palindrome", "--classes", data("classes.json"), "--l-table", data("l_table.json")}).code, 0);
}

TEST(Cli, Presets) {
  const auto aj = run({"preset", "abel-jacobi", "--g", "3", "--n", "1", "--h1", "2"});
  EXPECT_EQ(aj.code, 0);
  EXPECT_TRUE(contains(aj.out, "ToricFlip"));
  EXPECT_TRUE(contains(aj.out, "(3, 1)"));

  const auto ell = run({"preset", "elliptic-fiber", "--d1", "1", "--d2", "1", "--r", "1"});
  EXPECT_TRUE(contains(ell.out, "4x - y = 1")) << ell.out;

  const auto ni = structured({"preset", "non-irreducible-1"});
  ASSERT_EQ(ni["result"]["walls"].size(), 2u);
  ASSERT_EQ(ni["result"]["classifications"].size(), 2u);
  for (const auto& c : ni["result"]["classifications"]) EXPECT_FALSE(c["kind"].get<std::string>().empty());

  EXPECT_EQ(run({"preset", "nope"}).code, 2);
}

TEST(Cli, WarningsCarryCodes) {
  const auto j = structured({"preset", "toric-flip", "--g", "2"});
  ASSERT_FALSE(j["warnings"].empty());
  for (const auto& w : j["warnings"]) EXPECT_FALSE(w["code"].get<std::string>().empty());
  EXPECT_EQ(j["warnings"][0]["code"], "W002");
}

TEST(Cli, OracleAndBudget) {
  const auto r = run({"oracle", "--quiver", data("kronecker2.json"), "--dim", "1,1", "--p", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "representations of dimension (1,1): 4"));
  EXPECT_EQ(run({"--budget", "10", "oracle", "--quiver", data("kronecker2.json"), "--dim", "2,2", "--p", "3"}).code, 3);
}

TEST(Cli, DigestIgnoresFormat) {
  const auto a = run({"classify", "--two-vertex", "3", "2"});
  const auto j = structured({"classify", "--two-vertex", "3", "2"});
  EXPECT_TRUE(contains(a.out, j["input_digest"].get<std::string>()));
}

TEST(Cli, ByteIdentical) {
  const std::vector<std::string> args{"--format", "structured", "series", "telescope", "--classes",
                                      data("classes.json"), "--n-table", data("n_table.json"), "--l-table",
                                      data("l_table.json"), "--walls", data("walls.json")};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, Help) { EXPECT_EQ(run({"--help"}).code, 0); }
