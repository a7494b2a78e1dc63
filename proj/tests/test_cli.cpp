#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>
#include <unistd.h>

#include "rgfn/cli.hpp"
#include "rgfn/csv.hpp"

namespace fs = std::filesystem;
using rgfn::cli::run;

namespace {

const std::string kConfigs = RGFN_CONFIG_DIR;

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("rgfn_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name, std::ios::binary) << text;
    return (path / name).string();
  }
};

std::string cfg(const std::string& name) { return kConfigs + "/" + name; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("verify exit codes") {
  TempDir tmp;
  auto r = cli({"verify", "--config", cfg("diamond.json"), "--out", tmp / "v.json"});
  CHECK(r.code == 0);
  const auto report = nlohmann::json::parse(slurp(tmp / "v.json"));
  CHECK(report["verdict"] == "pass");
  CHECK(report["tolerance"] == 1e-8);
  CHECK(report["max_conclusion_error"].get<double>() <= 1e-10);
  CHECK(nlohmann::json::parse(r.out) == report);

  CHECK(cli({"verify", "--config", cfg("diamond_perturbed.json")}).code == 2);
  CHECK(cli({"verify", "--config", cfg("diamond_sf.json")}).code == 0);
  CHECK(cli({"verify", "--config", cfg("two_state_split.json")}).code == 0);

  // hypotheses hold at a loose tolerance, the conclusion does not
  const auto loose = tmp.write("loose.json", R"({
    "states": ["s0", "a", "b", "x1", "x2"],
    "edges": [["s0", "a"], ["s0", "b"], ["a", "x1"], ["a", "x2"], ["b", "x2"]],
    "terminating": ["x1", "x2"],
    "kernel": [[0, 0.5, 0.5, 0, 0], [0, 0, 0, 0.4, 0.6], [0, 0, 0, 0, 1], [1, 0, 0, 0, 0], [1, 0, 0, 0, 0]],
    "reward": {"x1": 0.0109, "x2": 0.04},
    "flow": [0.05, 0.025, 0.025, 0.01, 0.04]
  })");
  r = cli({"verify", "--config", loose, "--tol", "1e-3"});
  CHECK(r.code == 3);
  CHECK(nlohmann::json::parse(r.out)["verdict"] == "conclusion_failure");
}

TEST_CASE("config errors exit 1 with a location") {
  TempDir tmp;
  const auto bad = tmp.write("bad.json", "{\n  \"states\": [\"s0\",\n  }\n");
  auto r = cli({"validate", "--config", bad});
  CHECK(r.code == 1);
  CHECK(r.err.find(bad + ":3:") != std::string::npos);
  CHECK(r.err.find("malformed JSON") != std::string::npos);

  const auto unknown = tmp.write("unknown.json", R"({"states": ["s0", "x"], "edges": [], "terminating": ["x"], "colour": 1})");
  r = cli({"validate", "--config", unknown});
  CHECK(r.code == 1);
  CHECK(r.err.find("colour") != std::string::npos);

  const auto not_stochastic = tmp.write("ns.json", R"({"states": ["s0", "x"], "edges": [["s0", "x"]],
    "terminating": ["x"], "kernel": [[0, 0.9], [1, 0]]})");
  r = cli({"validate", "--config", not_stochastic});
  CHECK(r.code == 1);
  CHECK(r.err.find("row") != std::string::npos);

  const auto cyclic = tmp.write("cyc.json", R"({"states": ["s0", "a", "b"], "edges": [["s0", "a"], ["a", "b"], ["b", "a"]],
    "terminating": ["b"]})");
  CHECK(cli({"validate", "--config", cyclic}).code == 1);

  CHECK(cli({"validate", "--config", tmp / "missing.json"}).code == 1);
  CHECK(cli({"validate"}).code == 1);
  CHECK(cli({"terminating", "--config", cfg("grid.json"), "--out", tmp / "t.csv"}).code == 1);  // no kernel
  CHECK(cli({"split-simulate", "--config", cfg("diamond.json"), "--out", tmp / "s.csv"}).code == 1);
  CHECK(cli({"terminating", "--config", cfg("diamond.json")}).code == 1);  // no --out
  CHECK(cli({"terminating", "--config", cfg("diamond.json"), "--method", "magic", "--out", tmp / "t.csv"}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"validate", "--config", cfg("diamond.json"), "--workers", "0"}).code == 1);
}

TEST_CASE("help, version, validate") {
  auto r = cli({"--version"});
  CHECK(r.code == 0);
  CHECK(r.out == std::string(rgfn::kVersion) + "\n");
  r = cli({"--help"});
  CHECK(r.code == 0);
  for (const char* sub : {"validate", "solve-invariant", "terminating", "verify", "split-simulate", "counterexample",
                          "train", "mcmc-compare"})
    CHECK(r.out.find(sub) != std::string::npos);
  r = cli({"validate", "--config", cfg("diamond.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("states: 5") != std::string::npos);
  CHECK(r.out.find("returns within 3 steps") != std::string::npos);
  for (const char* c : {"diamond_sf.json", "two_state_split.json", "interval_geometric.json", "grid.json", "bimodal.json"})
    CHECK(cli({"validate", "--config", cfg(c)}).code == 0);
}

TEST_CASE("CSV layout: header, rows, trailer") {
  TempDir tmp;
  REQUIRE(cli({"solve-invariant", "--config", cfg("diamond.json"), "--out", tmp / "l.csv"}).code == 0);
  const auto l = lines(slurp(tmp / "l.csv"));
  REQUIRE(l.size() == 7);
  CHECK(l[0] == "state,lambda,stderr");
  CHECK(l[1] == "s0,1,");
  CHECK(l[4] == "x1,0.2,");
  CHECK(l[6] == "# seed=7, version=" + std::string(rgfn::kVersion));

  REQUIRE(cli({"terminating", "--config", cfg("diamond.json"), "--method", "lemma", "--out", tmp / "t.csv"}).code == 0);
  const auto t = lines(slurp(tmp / "t.csv"));
  REQUIRE(t.size() == 4);
  CHECK(t[0] == "state,probability,stderr");
  CHECK(t[1].rfind("x1,0.2", 0) == 0);

  REQUIRE(cli({"terminating", "--config", cfg("diamond.json"), "--method", "sim", "--excursions", "10000", "--seed", "3",
               "--out", tmp / "s.csv"})
              .code == 0);
  const auto s = lines(slurp(tmp / "s.csv"));
  CHECK(s.back() == "# seed=3, version=" + std::string(rgfn::kVersion));
  const double p = std::stod(s[1].substr(3));
  CHECK(std::abs(p - 0.2) <= 4 * std::sqrt(0.16 / 10000));

  REQUIRE(cli({"solve-invariant", "--config", cfg("diamond.json"), "--method", "power", "--out", tmp / "p.csv"}).code == 0);
  CHECK(lines(slurp(tmp / "p.csv"))[5].rfind("x2,0.8", 0) == 0);
}

TEST_CASE("step cap exits 3") {
  TempDir tmp;
  auto r = cli({"solve-invariant", "--config", cfg("diamond.json"), "--method", "occupation", "--cap", "2",
                "--excursions", "100", "--out", tmp / "o.csv"});
  CHECK(r.code == 3);
  CHECK(r.err.find("tolerance failure") != std::string::npos);
}

TEST_CASE("train writes parameters and history") {
  TempDir tmp;
  auto r = cli({"train", "--config", cfg("grid.json"), "--out", tmp / "params.json", "--history", tmp / "h.csv"});
  REQUIRE(r.code == 0);
  const auto params = nlohmann::json::parse(slurp(tmp / "params.json"));
  CHECK(params["final_loss"].get<double>() <= 1e-8);
  CHECK(params["seed"] == 1);
  CHECK(params["logits"]["s0"].contains("g01"));
  CHECK(params["log_flow"].size() == 16);
  const auto h = lines(slurp(tmp / "h.csv"));
  CHECK(h[0] == "iter,loss,step");
  CHECK(h[1].rfind("1,", 0) == 0);
  CHECK(r.out.find("train: loss") != std::string::npos);
}

TEST_CASE("split-simulate and counterexample outputs") {
  TempDir tmp;
  REQUIRE(cli({"split-simulate", "--config", cfg("two_state_split.json"), "--excursions", "20000", "--out", tmp / "d.csv"})
              .code == 0);
  const auto d = lines(slurp(tmp / "d.csv"));
  CHECK(d[0] == "state,simulated,stderr,exact");
  REQUIRE(d.size() == 4);
  CHECK(d[1].find(",0.29411764705882") != std::string::npos);  // 5/17

  REQUIRE(cli({"split-simulate", "--config", cfg("interval_geometric.json"), "--excursions", "20000", "--out",
               tmp / "c.csv"})
              .code == 0);
  const auto c = lines(slurp(tmp / "c.csv"));
  CHECK(c[0] == "bin,lo,hi,simulated,oracle");
  CHECK(c.size() == 64 + 2);

  REQUIRE(cli({"counterexample", "--excursions", "2000", "--cap", "5000", "--out", tmp / "ce.csv"}).code == 0);
  const auto ce = lines(slurp(tmp / "ce.csv"));
  CHECK(ce[0] == "n,analytic_cumulative,simulated_fraction,stderr");
  CHECK(ce[1].rfind("1,0.6321205588285", 0) == 0);
  CHECK(ce[ce.size() - 2].rfind("5000,", 0) == 0);
  CHECK(ce.back() == "# seed=0, version=" + std::string(rgfn::kVersion));
}

TEST_CASE("mcmc-compare output") {
  TempDir tmp;
  auto r = cli({"mcmc-compare", "--config", cfg("bimodal.json"), "--steps", "20000", "--excursions", "20000", "--out",
                tmp / "m.csv"});
  REQUIRE(r.code == 0);
  const auto m = lines(slurp(tmp / "m.csv"));
  CHECK(m[0] == "metric,x,gflownet,mh");
  CHECK(m[1].rfind("tv,100,", 0) == 0);
  int autocorr = 0;
  for (const auto& line : m) autocorr += line.rfind("autocorr,", 0) == 0;
  CHECK(autocorr == 20);
  CHECK(m[m.size() - 2].rfind("ess,,", 0) == 0);
  CHECK(r.out.find("s/effective sample") != std::string::npos);
}

TEST_CASE("outputs are byte-identical across worker counts and reruns") {
  TempDir tmp;
  const std::vector<std::vector<std::string>> runs{
      {"solve-invariant", "--config", cfg("diamond.json"), "--method", "occupation", "--excursions", "50000"},
      {"terminating", "--config", cfg("diamond.json"), "--method", "sim", "--excursions", "50000"},
      {"split-simulate", "--config", cfg("two_state_split.json"), "--excursions", "50000"},
      {"split-simulate", "--config", cfg("interval_geometric.json"), "--excursions", "50000"},
      {"counterexample", "--excursions", "20000", "--cap", "2000", "--seed", "5"},
      {"train", "--config", cfg("diamond.json"), "--iters", "300"},
      {"mcmc-compare", "--config", cfg("bimodal.json"), "--steps", "20000", "--excursions", "20000", "--iters", "3000"},
  };
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::string outputs[3];
    const char* workers[3] = {"1", "4", "1"};
    for (int k = 0; k < 3; ++k) {
      auto args = runs[i];
      const auto path = tmp / ("out" + std::to_string(i) + "_" + std::to_string(k));
      args.insert(args.end(), {"--workers", workers[k], "--out", path});
      INFO(args[0]);
      REQUIRE(cli(args).code == 0);
      outputs[k] = slurp(path);
    }
    INFO(runs[i][0]);
    CHECK(!outputs[0].empty());
    CHECK(outputs[0] == outputs[1]);
    CHECK(outputs[0] == outputs[2]);
  }
}

TEST_CASE("RGFN_WORKERS sets the default worker count") {
  TempDir tmp;
  const std::vector<std::string> args{"terminating", "--config", cfg("diamond.json"), "--method", "sim",
                                      "--excursions", "20000"};
  auto a = args;
  a.insert(a.end(), {"--out", tmp / "a.csv"});
  REQUIRE(cli(a).code == 0);
  ::setenv("RGFN_WORKERS", "3", 1);
  auto b = args;
  b.insert(b.end(), {"--out", tmp / "b.csv"});
  const int code = cli(b).code;
  ::unsetenv("RGFN_WORKERS");
  REQUIRE(code == 0);
  CHECK(slurp(tmp / "a.csv") == slurp(tmp / "b.csv"));
}

TEST_CASE("the installed binary reports exit codes") {
  const std::string bin = RGFN_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("verify --config " + cfg("diamond.json")) == 0);
  CHECK(status("verify --config " + cfg("diamond_perturbed.json")) == 2);
  CHECK(status("validate --config /nonexistent.json") == 1);
  CHECK(status("--version") == 0);
}
