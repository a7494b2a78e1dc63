// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <unistd.h>

#include "fixtures.hpp"
#include "rgfn/catalog.hpp"
#include "rgfn/cli.hpp"
#include "rgfn/config.hpp"
#include "rgfn/mcmc.hpp"
#include "rgfn/recurrence.hpp"
#include "rgfn/splitchain.hpp"
#include "rgfn/terminating.hpp"
#include "rgfn/train.hpp"

using namespace rgfn;
namespace fs = std::filesystem;

namespace {

const std::string kConfigs = RGFN_CONFIG_DIR;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

double sigma(double p, std::uint64_t n) { return std::sqrt(p * (1 - p) / static_cast<double>(n)); }

Outcome criterion1() {
  Outcome o;
  const RunConfig cfg = load_config(kConfigs + "/diamond.json");
  const auto& dag = *cfg.dag;
  const auto& k = *cfg.kernel;
  const auto report = verify_theorem1(dag, k, *cfg.flow, *cfg.reward, 1e-8);
  o.require(report.verdict == Verdict::Pass, "verify passes");
  const auto e = terminating_by_enumeration(dag, k);
  const auto l = terminating_by_lemma(k, solve_invariant_exact(k));
  const std::uint64_t n = 1000000;
  const auto s = terminating_by_simulation(k, n, 7);
  const double z = cfg.reward->total();
  double exact_err = 0.0, z_sim = 0.0;
  for (StateIndex x : dag.terminating()) {
    const double target = cfg.reward->values[x] / z;
    exact_err = std::max({exact_err, std::abs(e.probs[x] - target), std::abs(l.probs[x] - target)});
    z_sim = std::max(z_sim, std::abs(s.probs[x] - target) / sigma(target, n));
  }
  o.require(std::abs(e.probs[3] - 0.2) <= 1e-10 && std::abs(e.probs[4] - 0.8) <= 1e-10, "P = {0.2, 0.8}");
  o.require(exact_err <= 1e-10, "enumeration/lemma within 1e-10");
  o.require(z_sim <= 4.0, "simulation within 4 sigma");
  o.detail << "verdict pass, exact error " << exact_err << ", simulation P(x1) " << s.probs[3] << " (" << z_sim
           << " sigma)";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const std::uint64_t cap = 10000, n = 1000000;
  const auto a = counterexample_analytic(cap);
  const double closed = 1.0 - std::exp(-std::numbers::pi * std::numbers::pi / 6.0);
  o.require(std::abs(a.limit - closed) <= 1e-15, "limit = 1 - exp(-pi^2/6)");
  const auto stats = return_time_stats(build_counterexample_kernel(cap), n, cap, 0);
  const double expected = a.prob_return_by[cap - 1];
  const double z = std::abs(stats.return_fraction - expected) / sigma(expected, n);
  o.require(z <= 4.0, "return fraction within 4 sigma");
  o.detail << "limit " << a.limit << ", P(sigma <= 1e4) " << expected << ", simulated " << stats.return_fraction
           << " (" << z << " sigma)";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const RunConfig cfg = load_config(kConfigs + "/two_state_split.json");
  const auto& mk = *cfg.split_discrete;
  const auto r0 = remainder_kernel(mk, 0);
  o.require(std::abs(r0[0] - 0.3) <= 1e-15 && std::abs(r0[1] - 0.7) <= 1e-15, "R_nu(0, .) = (0.3, 0.7)");
  const auto exact = solve_terminating_general_exact(mk);
  o.require(std::abs(exact.terminating.probs[0] - 5.0 / 17) <= 1e-14 &&
                std::abs(exact.terminating.probs[1] - 12.0 / 17) <= 1e-14,
            "P = (5/17, 12/17)");
  const std::uint64_t n = 1000000;
  const auto sim = terminating_general_by_simulation(mk, n, 3);
  const double z = std::abs(sim.terminating.probs[0] - 5.0 / 17) / sigma(5.0 / 17, n);
  o.require(z <= 4.0, "simulation within 4 sigma");
  const double mix = mixture_identity_error(mk);
  o.require(mix <= 1e-14, "mixture identity");
  double mass = 0.0;
  for (StateIndex s = 0; s < mk.size(); ++s) mass += mk.epsilon()[s] * exact.lambda[s];
  o.require(std::abs(mass - 1.0) <= 1e-10, "sum eps lambda = 1");
  o.detail << "P = (" << exact.terminating.probs[0] << ", " << exact.terminating.probs[1] << "), simulated "
           << sim.terminating.probs[0] << " (" << z << " sigma), mixture error " << mix << ", sum eps lambda - 1 = "
           << mass - 1.0;
  return o;
}

Outcome criterion4() {
  Outcome o;
  const RunConfig cfg = load_config(kConfigs + "/interval_geometric.json");
  const auto& mk = *cfg.split_continuous;
  const std::uint64_t n = 1000000;
  const auto sim = terminating_general_by_simulation(mk, n, 5);
  const auto oracle = solve_terminating_general_quadrature(mk, kQuadraturePoints).terminating_bins(mk);
  const double tv = total_variation(sim.terminating.probabilities(), oracle);
  o.require(tv <= 0.01, "TV <= 0.01");
  const double bound = 1.0 / 0.3 + 4 * sim.return_times.mean_stderr();
  o.require(sim.return_times.mean <= bound, "mean return time <= 1/0.3 + 4 sigma");
  o.detail << mk.name << ": TV " << tv << ", mean return time " << sim.return_times.mean << " <= " << bound;
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto dag = fixtures::grid_dag();
  const auto r = fixtures::grid_reward(dag);
  const auto res = fit(dag, r, {.iters = 20000, .step_size = 0.05, .seed = 1, .target_loss = 1e-12});
  o.require(res.final_loss <= 1e-8, "loss <= 1e-8");
  const auto e = terminating_by_enumeration(dag, kernel_from_params(dag, res.params));
  double err = 0.0;
  for (StateIndex x : dag.terminating()) err = std::max(err, std::abs(e.probs[x] - r.values[x] / r.total()));
  o.require(err <= 1e-3, "max |P - R/Z| <= 1e-3");

  // central differences, step 1e-6, at 20 random points
  double worst = 0.0;
  for (std::uint64_t point = 0; point < 20; ++point) {
    TabularParams p = TabularParams::zeros(dag);
    Rng rng = substream(500 + point, 0);
    std::vector<double> x(p.dimension());
    for (double& v : x) v = 2.0 * rng.uniform() - 1.0;
    p.assign(x);
    const auto g = grad(p, dag, r).flatten();
    const double h = 1e-6;
    for (std::size_t k = 0; k < x.size(); ++k) {
      auto y = x;
      y[k] = x[k] + h;
      p.assign(y);
      const double up = loss(p, dag, r);
      y[k] = x[k] - h;
      p.assign(y);
      const double fd = (up - loss(p, dag, r)) / (2 * h);
      worst = std::max(worst, std::abs(g[k] - fd) / std::max(std::abs(fd), 1e-3));
    }
  }
  o.require(worst <= 1e-5, "gradient within 1e-5 relative");
  o.detail << "loss " << res.final_loss << " after " << res.history.size() << " iterations, max |P - R/Z| " << err
           << ", gradient relative error " << worst;
  return o;
}

Outcome criterion6() {
  Outcome o;
  double worst_s0 = 0.0, worst_z = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = fixtures::random_instance(2 + seed % 9, 70000 + seed);
    const auto f = fixtures::forward_flow(inst.dag, inst.kernel, 0.5 + static_cast<double>(seed % 11));
    const FlowMeasure flow(f, Normalization::FlowUnnormalized);
    const auto res = flow_matching_residual(inst.kernel, flow, false);
    double off = 0.0;
    for (StateIndex s = 1; s < res.size(); ++s) off = std::max(off, std::abs(res[s]));
    o.require(off <= 1e-12, "zero residual off s0");
    worst_s0 = std::max(worst_s0, std::abs(res[0]));
    // boundary conditions hold by construction of R
    DiscreteReward r{std::vector<double>(f.size(), 0.0)};
    for (StateIndex x : inst.dag.terminating()) r.values[x] = f[x] * inst.kernel.prob(x, 0);
    worst_z = std::max(worst_z, std::abs(f[0] - r.total()));
  }
  o.require(worst_s0 <= 1e-10, "residual at s0 <= 1e-10");
  o.require(worst_z <= 1e-10, "F(s0) = R(X)");
  o.detail << "100 DAGs, max residual at s0 " << worst_s0 << ", max |F(s0) - R(X)| " << worst_z;
  return o;
}

Outcome criterion7() {
  Outcome o;
  const std::size_t m = 21;
  const std::uint64_t n = 1000000, burn_in = 10000;
  const auto target = bimodal_lattice_target(m);
  const auto pi = normalize(target);
  const auto q = lattice_walk_proposal(m);

  std::vector<double> upper(m);
  for (std::size_t i = 0; i < m; ++i) upper[i] = i >= m / 2 ? 1.0 : 0.0;
  const double exact_rho = exact_autocorrelation(mh_transition_matrix(target, q), pi, upper, 1);
  o.require(exact_rho > 0.5, "MH lag-1 (matrix) > 0.5");

  const auto mh = metropolis_hastings(target, q, n, 12, 0, n);
  const double mh_rho = autocorrelation(mode_indicator(mh, m), 1)[0];
  o.require(mh_rho > 0.5, "MH lag-1 (empirical) > 0.5");
  std::vector<double> emp = empirical_distribution(mh, m, burn_in);
  double tv = 0.0;
  for (std::size_t i = 0; i < m; ++i) tv += 0.5 * std::abs(emp[i] - pi[i]);
  o.require(tv <= 0.01, "MH TV <= 0.01");

  const auto dag = fixtures::lattice_gfn_dag(m);
  const std::size_t offset = dag.size() - m;
  DiscreteReward r{std::vector<double>(dag.size(), 0.0)};
  for (std::size_t i = 0; i < m; ++i) r.values[offset + i] = target[i];
  const auto res = fit(dag, r, {.iters = 50000, .step_size = 0.05, .seed = 12, .target_loss = 1e-14});
  auto xs = sample_terminating_states(kernel_from_params(dag, res.params), n, 12);
  for (StateIndex& x : xs) x -= offset;
  const auto ind = mode_indicator(xs, m);
  const double gfn_rho = autocorrelation(ind, 1)[0];
  const double pvalue = lag1_permutation_pvalue(ind, 99, 12);
  o.require(pvalue > 0.01, "GFlowNet permutation test does not reject");
  o.detail << "MH lag-1 " << mh_rho << " (matrix " << exact_rho << "), MH TV " << tv << "; GFlowNet lag-1 "
           << gfn_rho << ", permutation p " << pvalue;
  return o;
}

Outcome criterion8() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / ("rgfn_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto cfg = [](const std::string& name) { return kConfigs + "/" + name; };
  const std::vector<std::vector<std::string>> runs{
      {"solve-invariant", "--config", cfg("diamond.json"), "--method", "exact"},
      {"solve-invariant", "--config", cfg("diamond.json"), "--method", "power"},
      {"solve-invariant", "--config", cfg("diamond.json"), "--method", "occupation", "--excursions", "200000"},
      {"terminating", "--config", cfg("diamond.json"), "--method", "enum"},
      {"terminating", "--config", cfg("diamond.json"), "--method", "lemma"},
      {"terminating", "--config", cfg("diamond.json"), "--method", "sim", "--excursions", "200000"},
      {"terminating", "--config", cfg("diamond_sf.json"), "--method", "sim", "--excursions", "200000"},
      {"verify", "--config", cfg("diamond.json")},
      {"verify", "--config", cfg("two_state_split.json")},
      {"split-simulate", "--config", cfg("two_state_split.json"), "--excursions", "200000"},
      {"split-simulate", "--config", cfg("interval_geometric.json"), "--excursions", "200000"},
      {"counterexample", "--excursions", "100000", "--cap", "10000", "--seed", "9"},
      {"train", "--config", cfg("grid.json")},
      {"mcmc-compare", "--config", cfg("bimodal.json"), "--steps", "200000", "--excursions", "200000"},
  };
  std::size_t identical = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::string bytes[2];
    const char* workers[2] = {"1", "4"};
    for (int k = 0; k < 2; ++k) {
      auto args = runs[i];
      const fs::path out = dir / ("run" + std::to_string(i) + "_" + workers[k]);
      args.insert(args.end(), {"--workers", workers[k], "--out", out.string()});
      std::ostringstream sink_out, sink_err;
      const int code = cli::run(args, sink_out, sink_err);
      o.require(code == 0, runs[i][0] + " exits 0");
      std::ifstream in(out, std::ios::binary);
      bytes[k].assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    if (!bytes[0].empty() && bytes[0] == bytes[1]) {
      ++identical;
    } else {
      o.require(false, runs[i][0] + " byte-identical");
    }
  }
  fs::remove_all(dir);
  o.detail << identical << "/" << runs.size() << " runs byte-identical with --workers 1 and 4";
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;  // 0 = none
  Outcome (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "finite-space verification on the diamond", 10, criterion1},
      {2, "escape-to-infinity counterexample", 30, criterion2},
      {3, "split-chain exactness (two states)", 0, criterion3},
      {4, "continuous split chain vs quadrature", 60, criterion4},
      {5, "training on the 4x4 grid", 60, criterion5},
      {6, "residual property suite", 0, criterion6},
      {7, "GFlowNet vs Metropolis-Hastings", 0, criterion7},
      {8, "determinism across worker counts", 0, criterion8},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      o.pass = false;
      o.detail << " [over the " << c.limit_seconds << " s limit]";
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
