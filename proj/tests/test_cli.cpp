#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "dunbar/cli.hpp"

using namespace dunbar;
using namespace dunbar::cli;
namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name)
      : dir(fs::temp_directory_path() / ("dunbar_cli_" + name + "_" + std::to_string(::getpid()))) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string path(const std::string& leaf) const { return (dir / leaf).string(); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("parse_config accepts the documented invocations") {
  auto p = parse_config({"trajectory", "--n", "150", "--dist", "uniform", "--tc", "0.66", "--beta",
                         "0.25", "--output", "x.csv"});
  REQUIRE(p.config);
  CHECK(p.config->command == Command::Trajectory);
  CHECK(p.config->n == 150);
  CHECK(p.config->tc == 0.66);
  CHECK(p.config->beta == 0.25);
  CHECK(p.config->dist == TrustKind::Uniform);
  CHECK(make_params(*p.config).r0 == 1.0 / 150);

  p = parse_config({"alpha-curve", "--n", "150", "--layer", "50", "--alphas", "2.1,2.5,2.9",
                    "--output", "a.csv"});
  REQUIRE(p.config);
  CHECK(p.config->command == Command::AlphaCurve);
  CHECK(p.config->alphas == std::vector<double>{2.1, 2.5, 2.9});
  CHECK(p.config->layer == 50);

  p = parse_config({"layers", "--dist", "power-law", "--alpha", "2.5", "--driver", "truncated",
                    "--layers", "5,15", "--output", "l.csv", "--format", "both"});
  REQUIRE(p.config);
  CHECK(p.config->dist == TrustKind::BoundedPowerLaw);
  CHECK(p.config->driver == DriverRange::Truncated);
  CHECK(p.config->layers == std::vector<int>{5, 15});
  CHECK(p.config->format == OutputFormat::Both);
  CHECK(make_distribution(*p.config).lo() == 0.1);
}

TEST_CASE("parse_config rejects bad input with exit code 2") {
  auto p = parse_config({"trajectory", "--tc", "1.5", "--output", "x.csv"});
  CHECK_FALSE(p.config);
  CHECK(p.exit_code == 2);
  CHECK(p.message.find("--tc") != std::string::npos);

  p = parse_config({"trajectory", "--output", "x.csv"});
  CHECK(p.exit_code == 2);
  CHECK(p.message.find("--tc") != std::string::npos);

  p = parse_config({"sweep"});
  CHECK(p.exit_code == 2);
  CHECK(p.message.find("--output") != std::string::npos);

  CHECK(parse_config({}).exit_code == 2);
  CHECK(parse_config({"bogus"}).exit_code == 2);
  CHECK(parse_config({"sweep", "--step", "0", "--output", "s.csv"}).exit_code == 2);
  CHECK(parse_config({"sweep", "--n", "1", "--output", "s.csv"}).exit_code == 2);
  CHECK(parse_config({"sweep", "--dist", "gaussian", "--output", "s.csv"}).exit_code == 2);
  CHECK(parse_config({"sweep", "--lo", "0.9", "--hi", "0.5", "--output", "s.csv"}).exit_code == 2);
  CHECK(parse_config({"sweep", "--dist", "power-law", "--lo", "0", "--output", "s.csv"}).exit_code == 2);
  CHECK(parse_config({"layers", "--layers", "50,15", "--output", "l.csv"}).exit_code == 2);
  CHECK(parse_config({"alpha-curve", "--layer", "50", "--alphas", "2.9,2.1", "--output", "a.csv"})
            .exit_code == 2);
  CHECK(parse_config({"population-curve", "--layer", "5", "--populations", "500,150", "--output",
                      "p.csv"})
            .exit_code == 2);
  CHECK(parse_config({"montecarlo", "--tc", "0.5", "--runs", "0", "--output", "m.csv"}).exit_code == 2);
}

TEST_CASE("--help prints per-subcommand usage and exits 0") {
  const auto r = invoke({"sweep", "--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("--step") != std::string::npos);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("config file, environment and flag precedence") {
  Scratch s("config");
  const auto cfg_path = s.path("run.cfg");
  {
    std::ofstream os(cfg_path);
    os << "# shared setup\n"
          "n = 500\n"
          "tc = 0.7   # trailing comment\n"
          "beta = 0.5\n"
          "t_end = 40\n"
          "output = \"from_file.csv\"\n";
  }
  auto p = parse_config({"trajectory", "--config", cfg_path, "--beta", "0.25"});
  REQUIRE(p.config);
  CHECK(p.config->n == 500);
  CHECK(p.config->tc == 0.7);
  CHECK(p.config->beta == 0.25);  // flag wins
  CHECK(p.config->t_end == 40.0);
  CHECK(p.config->output == "from_file.csv");

  ::setenv("DUNBAR_N", "1500", 1);
  p = parse_config({"trajectory", "--config", cfg_path});
  ::unsetenv("DUNBAR_N");
  REQUIRE(p.config);
  CHECK(p.config->n == 1500);  // environment beats the file

  ::setenv("DUNBAR_T_END", "12", 1);
  p = parse_config({"trajectory", "--config", cfg_path, "--t-end", "30"});
  ::unsetenv("DUNBAR_T_END");
  REQUIRE(p.config);
  CHECK(p.config->t_end == 30.0);  // flag beats the environment

  {
    std::ofstream os(s.path("bad.cfg"));
    os << "n = 150\nwibble = 3\n";
  }
  p = parse_config({"trajectory", "--config", s.path("bad.cfg"), "--tc", "0.5", "--output", "o.csv"});
  CHECK(p.exit_code == 2);
  CHECK(p.message.find("wibble") != std::string::npos);

  {
    std::ofstream os(s.path("range.cfg"));
    os << "tc = 2\n";
  }
  p = parse_config({"trajectory", "--config", s.path("range.cfg"), "--output", "o.csv"});
  CHECK(p.exit_code == 2);

  {
    std::ofstream os(s.path("list.cfg"));
    os << "layers = 5, 50\n";
  }
  p = parse_config({"layers", "--config", s.path("list.cfg"), "--output", "o.csv"});
  REQUIRE(p.config);
  CHECK(p.config->layers == std::vector<int>{5, 50});
}

TEST_CASE("layers command writes the cutoff table") {
  Scratch s("layers");
  const auto out = s.path("layers.csv");
  const auto r = invoke({"layers", "--n", "150", "--output", out});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("layers: 4 rows -> " + out, 0) == 0);
  CHECK(slurp(out) ==
        "layer,cutoff,feasible\n"
        "5,0.966667,true\n"
        "15,0.9,true\n"
        "50,0.666667,true\n"
        "150,0,true\n");

  const auto r2 = invoke({"layers", "--n", "100", "--layers", "50,150", "--output", out});
  CHECK(r2.code == 0);
  CHECK(slurp(out) == "layer,cutoff,feasible\n50,0.5,true\n150,,false\n");
}

TEST_CASE("sweep command has one row per 0.01 step") {
  Scratch s("sweep");
  const auto out = s.path("sweep.csv");
  REQUIRE(invoke({"sweep", "--n", "150", "--output", out}).code == 0);
  const auto rows = lines(slurp(out));
  REQUIRE(rows.size() == 102);
  CHECK(rows[0] == "tc,informed");
  CHECK(rows[1] == "0,150");
  CHECK(rows[91] == "0.9,15");
  CHECK(rows[101] == "1,0");
}

TEST_CASE("other commands produce their schemas") {
  Scratch s("schemas");
  REQUIRE(invoke({"trajectory", "--tc", "0.66", "--t-end", "1", "--dt", "0.5", "--output",
                  s.path("t.csv")})
              .code == 0);
  const auto traj = lines(slurp(s.path("t.csv")));
  REQUIRE(traj.size() == 4);
  CHECK(traj[0] == "t,i,s,r,informed");
  CHECK(traj[1] == "0,0.66,0.333333,0.00666667,1");

  REQUIRE(invoke({"alpha-curve", "--layer", "50", "--alphas", "2.1,2.9", "--output", s.path("a.csv")})
              .code == 0);
  CHECK(slurp(s.path("a.csv")) ==
        "alpha,cutoff,alpha_times_cutoff\n2.1,0.23743,0.498602\n2.9,0.175968,0.510306\n");

  REQUIRE(invoke({"population-curve", "--layer", "150", "--populations", "150,500,1500", "--output",
                  s.path("p.csv")})
              .code == 0);
  CHECK(slurp(s.path("p.csv")) == "n,cutoff\n150,\n500,0.7\n1500,0.9\n");

  REQUIRE(invoke({"montecarlo", "--tc", "0.66", "--runs", "10", "--output", s.path("m.csv")}).code == 0);
  const auto mc = lines(slurp(s.path("m.csv")));
  CHECK(mc.size() == 201);
  CHECK(mc[0] == "t,mean_r,std_r");
  CHECK(mc[1] == "0,0.00666667,0");
}

TEST_CASE("svg and both formats") {
  Scratch s("svg");
  REQUIRE(invoke({"sweep", "--format", "svg", "--output", s.path("s.svg")}).code == 0);
  CHECK(slurp(s.path("s.svg")).find("<polyline") != std::string::npos);

  const auto r = invoke({"layers", "--format", "both", "--output", s.path("fig")});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(s.path("fig.csv")));
  CHECK(fs::exists(s.path("fig.svg")));
  CHECK_FALSE(fs::exists(s.path("fig")));
}

TEST_CASE("exit codes 3 and 4 leave nothing behind") {
  Scratch s("codes");
  // r0 above the participating fraction.
  auto r = invoke({"trajectory", "--tc", "0.99", "--r0", "0.5", "--output", s.path("t.csv")});
  CHECK(r.code == 3);
  CHECK_FALSE(fs::exists(s.path("t.csv")));

  r = invoke({"alpha-curve", "--n", "100", "--layer", "150", "--output", s.path("a.csv")});
  CHECK(r.code == 3);
  CHECK_FALSE(fs::exists(s.path("a.csv")));

  r = invoke({"sweep", "--output", s.path("no/such/dir/s.csv")});
  CHECK(r.code == 4);
  CHECK(std::distance(fs::directory_iterator(s.dir), fs::directory_iterator()) == 0);
}

TEST_CASE("alpha outside (2, 3) warns but runs") {
  Scratch s("warn");
  const auto r = invoke({"sweep", "--dist", "power-law", "--alpha", "3.5", "--output", s.path("s.csv")});
  CHECK(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("identical configs give byte-identical output across thread counts") {
  Scratch s("determinism");
  const std::vector<std::string> base{"montecarlo", "--n", "300", "--tc", "0.5", "--beta", "0.5",
                                      "--runs", "40", "--seed", "99", "--format", "both"};
  auto with = [&](const std::string& threads, const std::string& out) {
    auto args = base;
    args.insert(args.end(), {"--threads", threads, "--output", s.path(out)});
    return invoke(args).code;
  };
  REQUIRE(with("1", "a") == 0);
  REQUIRE(with("4", "b") == 0);
  REQUIRE(with("1", "c") == 0);
  CHECK(slurp(s.path("a.csv")) == slurp(s.path("b.csv")));
  CHECK(slurp(s.path("a.csv")) == slurp(s.path("c.csv")));
  CHECK(slurp(s.path("a.svg")) == slurp(s.path("b.svg")));
}
