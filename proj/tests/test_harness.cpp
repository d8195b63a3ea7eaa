#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fluxstab/harness/config.hpp"
#include "fluxstab/harness/descriptors.hpp"
#include "fluxstab/harness/experiments.hpp"
#include "fluxstab/harness/output.hpp"

namespace fs = std::filesystem;
using namespace fluxstab::harness;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fluxstab_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Config config_of(std::initializer_list<std::string> assignments) {
  Config c;
  for (const auto& a : assignments) c.set_assignment(a);
  return c;
}

}  // namespace

TEST(Config, GrammarSectionsAndComments) {
  std::istringstream in(
      "# leading comment\n"
      "f = burgers   # trailing\n"
      "\n"
      "[expect]\n"
      "l1_distance = 0.999, 1.001\n");
  const Config c = Config::parse(in);
  EXPECT_EQ(c.get("f"), "burgers");
  EXPECT_EQ(c.get("expect.l1_distance"), "0.999, 1.001");
  EXPECT_EQ(parse_number_list(c.get("expect.l1_distance"), "x"), (std::vector<double>{0.999, 1.001}));
  std::istringstream bad("novalue\n");
  EXPECT_THROW(Config::parse(bad), ConfigError);
  std::istringstream bad_section("[open\n");
  EXPECT_THROW(Config::parse(bad_section), ConfigError);
}

TEST(Config, TypedGettersRecordResolvedValues) {
  Config c = config_of({"T=0.5", "flag=true", "list=1;2 3"});
  EXPECT_EQ(c.get_double("T"), 0.5);
  EXPECT_EQ(c.get_double_or("missing", 2.0), 2.0);
  EXPECT_TRUE(c.get_bool_or("flag", false));
  EXPECT_EQ(c.get_list_or("list", {}), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(c.resolved().at("missing"), "2");
  EXPECT_TRUE(c.unused_keys().empty());
  EXPECT_THROW(c.get("absent"), ConfigError);
  EXPECT_THROW(config_of({"x=abc"}).get_double("x"), ConfigError);
  EXPECT_THROW(c.set_assignment("no-equals"), ConfigError);
}

TEST(Descriptors, FluxesDataAndMatrices) {
  const fluxstab::Interval k{-1, 1};
  EXPECT_EQ(fluxstab::name_of(parse_flux("burgers", k)), "burgers");
  EXPECT_NO_THROW(parse_flux("convex_poly 1 0.1 0.1", k));
  EXPECT_TRUE(std::holds_alternative<fluxstab::PiecewiseLinearFlux>(parse_flux("table -1 1 0 0 1 1", k)));
  EXPECT_THROW(parse_flux("nosuch", k), ConfigError);
  EXPECT_THROW(parse_flux("scaled_burgers", k), ConfigError);
  EXPECT_EQ(parse_pl_flux("burgers", k, 17).nodes().size(), 17u);
  const auto p = parse_step_datum("pulse");
  EXPECT_EQ(p.scalar_at(0.5), 1.0);
  EXPECT_EQ(parse_step_datum("riemann 1 0 0.25").breakpoints(), (std::vector<double>{0.25}));
  EXPECT_THROW(parse_step_datum("sawtooth 2"), ConfigError);
  EXPECT_EQ(parse_datum("sawtooth 2")(0.1), 1.0);
  EXPECT_THROW(parse_datum("steps 0 1"), ConfigError);
  EXPECT_EQ(parse_matrix("[[0,0],[0,1]]"), (fluxstab::Matrix{{0, 0}, {0, 1}}));
  EXPECT_EQ(parse_matrix("1 2 3 4"), (fluxstab::Matrix{{1, 2}, {3, 4}}));
  EXPECT_THROW(parse_matrix("1 2 3"), ConfigError);
  EXPECT_FALSE(builtin_catalogue().empty());
}

TEST(Output, CsvAndSvg) {
  Table t;
  t.columns = {"x", "y"};
  t.add({1.0, 0.1});
  t.add({2.0, 1.0 / 3.0});
  EXPECT_THROW(t.add({1.0}), std::logic_error);
  std::ostringstream csv;
  write_csv(csv, {{"a", "1"}}, t);
  EXPECT_EQ(csv.str(), "# a = 1\nx,y\n1,0.10000000000000001\n2,0.33333333333333331\n");
  std::ostringstream svg;
  write_svg(svg, t, PlotSpec{"title", "x", {"y"}, true});
  EXPECT_EQ(svg.str().rfind("<!-- fluxstab", 0), 0u);
  EXPECT_NE(svg.str().find("<polyline"), std::string::npos);
}

TEST(Run, RexpWritesCsvAndPasses) {
  const fs::path out = scratch("rexp");
  std::ostringstream log;
  const int code = run("rexp", config_of({"n=3"}), RunOptions{out.string(), {}, true}, log);
  EXPECT_EQ(code, kOk) << log.str();
  const std::string csv = slurp(out / "rexp.csv");
  EXPECT_NE(csv.find("# experiment = rexp"), std::string::npos);
  EXPECT_NE(csv.find("n,t,l1_distance,panels\n3,0.125,"), std::string::npos);
  EXPECT_NE(log.str().find("PASS"), std::string::npos);
}

TEST(Run, HatDLinPrintsValueAndNorm) {
  const fs::path out = scratch("hatdlin");
  std::ostringstream log;
  const int code = run("hatd-lin", config_of({"A=[[0,0],[0,1]]", "B=[[0,0],[0,2]]"}),
                       RunOptions{out.string(), {}, true}, log);
  EXPECT_EQ(code, kOk);
  EXPECT_NE(log.str().find("hat_d_lin = 1 "), std::string::npos) << log.str();
  EXPECT_NE(log.str().find("||B-A|| = 1\n"), std::string::npos) << log.str();
}

TEST(Run, UnknownFluxExitsTwoWithoutArtifacts) {
  const fs::path out = scratch("unknown");
  std::ostringstream log;
  EXPECT_EQ(run("riemann", config_of({"f=nosuch", "uL=1", "uR=0"}), RunOptions{out.string(), {}, true}, log),
            kConfigError);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_EQ(run("nonsense", Config{}, RunOptions{out.string(), {}, true}, log), kConfigError);
  EXPECT_EQ(run("rexp", config_of({"typo=1"}), RunOptions{out.string(), {}, true}, log), kConfigError);
  EXPECT_EQ(run("evolve", config_of({"f=burgers", "datum=riemann 0 2"}),
                RunOptions{out.string(), {}, true}, log),
            kConfigError);
  EXPECT_FALSE(fs::exists(out));
}

TEST(Run, NumericalAbortExitsThree) {
  const fs::path out = scratch("abort");
  std::ostringstream log;
  const Config c = config_of({"c=8,16", "left=0.5,-0.9", "right=0.5,0.9", "rho_min=0.45", "T=1", "N=200"});
  EXPECT_EQ(run("classical-limit", c, RunOptions{out.string(), {}, true}, log), kNumericalAbort)
      << log.str();
  EXPECT_FALSE(fs::exists(out));
}

TEST(Run, FailedExpectationExitsOne) {
  const fs::path out = scratch("expect");
  std::ostringstream log;
  const Config c = config_of({"n=1", "expect.l1_distance=2,3"});
  EXPECT_EQ(run("rexp", c, RunOptions{out.string(), {}, true}, log), kAcceptanceFailure);
  EXPECT_NE(log.str().find("FAIL l1_distance in [2, 3]"), std::string::npos) << log.str();
  EXPECT_EQ(run("rexp", config_of({"n=1", "expect.nocolumn=0,1"}), RunOptions{out.string(), {}, true}, log),
            kConfigError);
}

TEST(Run, DeterministicAcrossRepeatsAndJobCounts) {
  const Config c = config_of({"f=burgers", "g=shifted_burgers 0.02", "datum=pulse", "T=0.25,0.5,1",
                              "nodes=128"});
  const fs::path a = scratch("det_a"), b = scratch("det_b"), d = scratch("det_c");
  std::ostringstream log;
  ASSERT_EQ(run("tmain", c, RunOptions{a.string(), {7, 1}, true}, log), kOk) << log.str();
  ASSERT_EQ(run("tmain", c, RunOptions{b.string(), {7, 1}, true}, log), kOk);
  ASSERT_EQ(run("tmain", c, RunOptions{d.string(), {7, 3}, true}, log), kOk);
  EXPECT_EQ(slurp(a / "tmain.csv"), slurp(b / "tmain.csv"));
  EXPECT_EQ(slurp(a / "tmain.csv"), slurp(d / "tmain.csv"));
  EXPECT_EQ(slurp(a / "tmain.svg"), slurp(d / "tmain.svg"));
}

TEST(Run, SeededSamplerIsReproducible) {
  const Config c = config_of({"f=burgers", "datum=sawtooth 3", "t=0.125", "pairs=500"});
  const fs::path a = scratch("seed_a"), b = scratch("seed_b");
  std::ostringstream log;
  ASSERT_EQ(run("oleinik-tv", c, RunOptions{a.string(), {42, 1}, false}, log), kOk) << log.str();
  ASSERT_EQ(run("oleinik-tv", c, RunOptions{b.string(), {42, 1}, false}, log), kOk);
  EXPECT_EQ(slurp(a / "oleinik-tv.csv"), slurp(b / "oleinik-tv.csv"));
  EXPECT_FALSE(fs::exists(a / "oleinik-tv.svg"));
}

TEST(Run, EveryKindRunsOnASmallConfig) {
  const std::vector<std::pair<std::string, Config>> cases{
      {"riemann", config_of({"f=burgers", "uL=-1", "uR=1"})},
      {"evolve", config_of({"f=burgers", "datum=pulse", "T=3", "nodes=64"})},
      {"evolve", config_of({"f=burgers", "datum=pulse", "T=1", "engine=lax-oleinik"})},
      {"hatd", config_of({"f=burgers", "g=shifted_burgers 0.1", "grid=16", "near=16"})},
      {"pgeneral", config_of({"f=burgers", "g=scaled_burgers 1.1", "grid=16"})},
      {"linfty", config_of({"f=burgers", "g=shifted_burgers -1", "datum=sawtooth 2", "t=0.25"})},
      {"lerrest", config_of({"f=burgers", "g=shifted_burgers 0.05", "datum=pulse", "steps=16", "nodes=64"})},
      {"classical-limit", config_of({"c=8,16", "N=200"})},
  };
  for (const auto& [kind, cfg] : cases) {
    const fs::path out = scratch("kind_" + kind);
    std::ostringstream log;
    EXPECT_EQ(run(kind, cfg, RunOptions{out.string(), {}, true}, log), kOk) << kind << "\n" << log.str();
    EXPECT_TRUE(fs::exists(out / (kind + ".csv"))) << kind;
  }
}

#ifdef FLUXSTAB_GOLDEN_DIR
TEST(Golden, BurgersRarefactionCsv) {
  const fs::path out = scratch("golden");
  std::ostringstream log;
  const Config c = config_of({"f=burgers", "uL=-1", "uR=1", "t=2", "samples=17", "x_lo=-4", "x_hi=4"});
  ASSERT_EQ(run("riemann", c, RunOptions{out.string(), {}, false}, log), kOk) << log.str();
  const std::string golden = slurp(fs::path(FLUXSTAB_GOLDEN_DIR) / "riemann_burgers_rarefaction.csv");
  EXPECT_EQ(slurp(out / "riemann.csv"), golden);
  // Rows against the closed form u = clamp(x / t, -1, 1).
  std::istringstream in(golden);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 't') continue;
    const auto v = parse_number_list(line, "row");
    ASSERT_EQ(v.size(), 3u);
    EXPECT_EQ(v[2], std::clamp(v[1] / v[0], -1.0, 1.0)) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 17);
}
#endif

#ifdef FLUXSTAB_CLI
TEST(Cli, SubcommandWithConfigFileAndOverrides) {
  const fs::path dir = scratch("cli");
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "rexp.cfg");
    cfg << "n = 1, 2\n[expect]\nl1_distance = 0.999, 1.001\n";
  }
  const std::string base = std::string(FLUXSTAB_CLI) + " ";
  auto sh = [](const std::string& cmd) {
    const int s = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  EXPECT_EQ(sh(base + "rexp --config " + (dir / "rexp.cfg").string() + " --out " + (dir / "o").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "o" / "rexp.csv"));
  EXPECT_EQ(sh(base + "rexp n=1 expect.l1_distance=0,0.5 --out " + (dir / "o2").string()), 1);
  EXPECT_EQ(sh(base + "riemann f=nosuch uL=0 uR=1 --out " + (dir / "o3").string()), 2);
  EXPECT_FALSE(fs::exists(dir / "o3"));
  EXPECT_EQ(sh(base + "--list"), 0);
  EXPECT_EQ(sh(base + "rexp --bogus"), 2);
}
#endif
