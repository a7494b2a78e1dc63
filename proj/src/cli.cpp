#include "rgfn/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rgfn/config.hpp"
#include "rgfn/csv.hpp"
#include "rgfn/error.hpp"
#include "rgfn/invariant.hpp"
#include "rgfn/mcmc.hpp"
#include "rgfn/parallel.hpp"
#include "rgfn/recurrence.hpp"
#include "rgfn/splitchain.hpp"
#include "rgfn/terminating.hpp"
#include "rgfn/train.hpp"

namespace rgfn::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kDefaultExcursions = 100000;
constexpr std::uint64_t kDefaultCounterexampleExcursions = 1000000;
constexpr std::uint64_t kDefaultCounterexampleCap = 10000;
constexpr std::uint64_t kDefaultMcmcSteps = 1000000;
constexpr std::uint64_t kDefaultBurnIn = 10000;
constexpr double kDefaultVerifyTol = 1e-8;

struct Flags {
  std::string config;
  std::string out;
  std::string method;
  std::string history;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> excursions;
  std::optional<std::uint64_t> cap;
  std::optional<std::uint64_t> steps;
  std::optional<std::size_t> iters;
  std::optional<double> tol;
  std::optional<double> step;
  unsigned workers = 1;
};

struct Context {
  Flags flags;
  std::optional<RunConfig> cfg;
  std::ostream& out;
  std::ostream& err;

  const RunConfig& config() {
    if (!cfg) {
      if (flags.config.empty()) throw ConfigError("--config is required");
      cfg = load_config(flags.config);
    }
    return *cfg;
  }
  std::uint64_t seed() {
    if (flags.seed) return *flags.seed;
    if (!flags.config.empty() && config().simulation.seed) return *config().simulation.seed;
    return 0;
  }
  std::uint64_t excursions(std::uint64_t fallback) {
    if (flags.excursions) return *flags.excursions;
    if (!flags.config.empty() && config().simulation.excursions) return *config().simulation.excursions;
    return fallback;
  }
  std::uint64_t cap(std::uint64_t fallback) {
    if (flags.cap) return *flags.cap;
    if (!flags.config.empty() && config().simulation.cap) return *config().simulation.cap;
    return fallback;
  }
  const std::string& require_out() const {
    if (flags.out.empty()) throw ConfigError("--out is required");
    return flags.out;
  }
  const PointedDag& dag() {
    if (!config().dag) throw ConfigError(flags.config + ": this subcommand needs a state space (\"states\")");
    return *config().dag;
  }
  const DiscreteKernel& kernel() {
    dag();
    if (!config().kernel)
      throw ConfigError(flags.config + ": this subcommand needs one of \"kernel\" or \"edge_flows\"");
    return *config().kernel;
  }
  const DiscreteReward& reward() {
    dag();
    if (!config().reward) throw ConfigError(flags.config + ": this subcommand needs \"reward\"");
    return *config().reward;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double v) { return format_number(v); }
std::string num(std::uint64_t v) { return format_number(v); }

double binomial_stderr(double p, std::uint64_t n) {
  return n == 0 ? 0.0 : std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::HypothesisFailure: return "hypothesis_failure";
    case Verdict::ConclusionFailure: return "conclusion_failure";
  }
  return "unknown";
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::Pass: return kPass;
    case Verdict::HypothesisFailure: return kHypothesisFailure;
    case Verdict::ConclusionFailure: return kConclusionFailure;
  }
  return kConfigError;
}

// ---------------------------------------------------------------------------

int cmd_validate(Context& ctx) {
  const RunConfig& cfg = ctx.config();
  if (cfg.dag) {
    const PointedDag& dag = *cfg.dag;
    ctx.out << "states: " << dag.size() << ", edges: " << dag.edges().size()
            << ", terminating: " << dag.terminating().size() << "\n";
    if (cfg.kernel) {
      const auto absorb = check_finitely_absorbing(dag, *cfg.kernel, dag.size());
      ctx.out << "kernel: stochastic, supported on the DAG";
      if (absorb.harris && absorb.steps) ctx.out << ", every excursion returns within " << *absorb.steps << " steps";
      ctx.out << "\n";
    }
    if (cfg.reward) ctx.out << "reward: R(X) = " << num(cfg.reward->total()) << "\n";
  }
  if (cfg.split_discrete)
    ctx.out << "split: discrete, " << cfg.split_discrete->size() << " states, |X| = "
            << cfg.split_discrete->terminating().size() << "\n";
  if (cfg.split_continuous) ctx.out << "split: continuous catalogue instance " << cfg.split_continuous->name << "\n";
  ctx.out << "ok\n";
  return kPass;
}

int cmd_solve_invariant(Context& ctx) {
  const DiscreteKernel& kernel = ctx.kernel();
  const PointedDag& dag = ctx.dag();
  const std::string method = ctx.flags.method.empty() ? "exact" : ctx.flags.method;
  const auto start = Clock::now();
  std::vector<double> lambda, err;
  if (method == "exact") {
    lambda = solve_invariant_exact(kernel).values();
  } else if (method == "power") {
    PowerOptions opts;
    if (ctx.flags.tol) opts.tol = *ctx.flags.tol;
    opts.probe_seed = ctx.seed();
    lambda = solve_invariant_power(kernel, opts).values();
  } else if (method == "occupation") {
    const auto est = estimate_invariant_occupation(kernel, ctx.excursions(kDefaultExcursions), ctx.seed(),
                                                   ctx.flags.workers, ctx.cap(kDefaultStepCap));
    lambda = est.lambda.values();
    err = est.stderr_;
  } else {
    throw ConfigError("--method must be exact, power or occupation");
  }
  CsvWriter csv({"state", "lambda", "stderr"});
  for (StateIndex s = 0; s < dag.size(); ++s)
    csv.row({dag.name(s), num(lambda[s]), err.empty() ? "" : num(err[s])});
  csv.write(ctx.require_out(), ctx.seed());
  ctx.out << "solve-invariant (" << method << "): " << dag.size() << " states in "
          << seconds_since(start) << " s\n";
  return kPass;
}

int cmd_terminating(Context& ctx) {
  const DiscreteKernel& kernel = ctx.kernel();
  const PointedDag& dag = ctx.dag();
  const std::string method = ctx.flags.method.empty() ? "enum" : ctx.flags.method;
  const auto start = Clock::now();
  TerminatingDistribution dist;
  std::uint64_t n = 0;
  if (method == "enum") {
    dist = terminating_by_enumeration(dag, kernel);
  } else if (method == "lemma") {
    dist = terminating_by_lemma(kernel, solve_invariant_exact(kernel));
  } else if (method == "sim") {
    n = ctx.excursions(kDefaultExcursions);
    dist = terminating_by_simulation(kernel, n, ctx.seed(), ctx.flags.workers, ctx.cap(kDefaultStepCap));
  } else {
    throw ConfigError("--method must be enum, lemma or sim");
  }
  CsvWriter csv({"state", "probability", "stderr"});
  for (StateIndex x : dag.terminating())
    csv.row({dag.name(x), num(dist.probs[x]), method == "sim" ? num(binomial_stderr(dist.probs[x], n)) : ""});
  csv.write(ctx.require_out(), ctx.seed());
  ctx.out << "terminating (" << method << "): " << dag.terminating().size() << " states in "
          << seconds_since(start) << " s\n";
  return kPass;
}

int cmd_verify(Context& ctx) {
  const RunConfig& cfg = ctx.config();
  double tol = kDefaultVerifyTol;
  if (ctx.flags.tol) {
    tol = *ctx.flags.tol;
  } else if (auto it = cfg.tolerances.find("verify"); it != cfg.tolerances.end()) {
    tol = it->second;
  }
  json report;
  Verdict verdict;
  if (cfg.dag) {
    const FlowMeasure* flow = cfg.flow ? &*cfg.flow : (cfg.edge_state_flow ? &*cfg.edge_state_flow : nullptr);
    if (!flow) throw ConfigError(ctx.flags.config + ": verify needs \"flow\" or \"edge_flows\"");
    if (flow->size() != ctx.dag().size()) throw ConfigError("flow: size does not match the state space");
    const auto r = verify_theorem1(ctx.dag(), ctx.kernel(), *flow, ctx.reward(), tol);
    verdict = r.verdict;
    report["theorem"] = "finite";
    report["max_invariance_residual"] = r.max_invariance_residual;
    report["max_boundary_residual"] = r.max_boundary_residual;
    report["conclusion_checked"] = r.conclusion_checked;
    if (r.conclusion_checked) report["max_conclusion_error"] = r.max_conclusion_error;
    report["messages"] = r.messages;
  } else if (cfg.split_discrete) {
    if (!cfg.flow || !cfg.split_reward)
      throw ConfigError(ctx.flags.config + ": verify on a split chain needs split.flow and split.reward");
    const auto r = verify_theorem2(*cfg.split_discrete, *cfg.flow, *cfg.split_reward, tol);
    verdict = r.verdict;
    report["theorem"] = "general";
    report["max_invariance_residual"] = r.max_invariance_residual;
    report["max_boundary_residual"] = r.max_boundary_residual;
    report["conclusion_checked"] = r.conclusion_checked;
    if (r.conclusion_checked) report["max_conclusion_error"] = r.conclusion_error;
    report["messages"] = r.messages;
  } else {
    throw ConfigError(ctx.flags.config + ": verify needs a discrete state space or a discrete split chain");
  }
  report["verdict"] = verdict_name(verdict);
  report["tolerance"] = tol;
  const std::string text = report.dump(2) + "\n";
  ctx.out << text;
  if (!ctx.flags.out.empty()) write_file(ctx.flags.out, text);
  return verdict_code(verdict);
}

int cmd_split_simulate(Context& ctx) {
  const RunConfig& cfg = ctx.config();
  const std::uint64_t n = ctx.excursions(kDefaultExcursions);
  const std::uint64_t seed = ctx.seed();
  const std::uint64_t cap = ctx.cap(kDefaultStepCap);
  const auto start = Clock::now();
  if (cfg.split_discrete) {
    const auto& mk = *cfg.split_discrete;
    const auto sim = terminating_general_by_simulation(mk, n, seed, ctx.flags.workers, cap);
    const auto exact = solve_terminating_general_exact(mk);
    CsvWriter csv({"state", "simulated", "stderr", "exact"});
    double worst = 0.0;
    for (StateIndex x : mk.terminating()) {
      const double p = sim.terminating.probs[x];
      const double se = binomial_stderr(p, n);
      csv.row({num(static_cast<std::uint64_t>(x)), num(p), num(se), num(exact.terminating.probs[x])});
      if (se > 0.0) worst = std::max(worst, std::abs(p - exact.terminating.probs[x]) / se);
    }
    csv.write(ctx.require_out(), seed);
    ctx.out << "split-simulate: " << n << " excursions, mean return time " << sim.return_times.mean
            << ", max |simulated - exact| / stderr = " << worst << ", " << seconds_since(start) << " s\n";
    return kPass;
  }
  if (cfg.split_continuous) {
    const auto& mk = *cfg.split_continuous;
    const auto sim = terminating_general_by_simulation(mk, n, seed, ctx.flags.workers, cap);
    const auto oracle = solve_terminating_general_quadrature(mk).terminating_bins(mk, sim.terminating.bins());
    const auto probs = sim.terminating.probabilities();
    CsvWriter csv({"bin", "lo", "hi", "simulated", "oracle"});
    for (std::size_t b = 0; b < probs.size(); ++b)
      csv.row({num(static_cast<std::uint64_t>(b)), num(sim.terminating.bin_lo(b)), num(sim.terminating.bin_hi(b)),
               num(probs[b]), num(oracle[b])});
    csv.write(ctx.require_out(), seed);
    ctx.out << "split-simulate (" << mk.name << "): " << n << " excursions, mean return time "
            << sim.return_times.mean << ", TV to quadrature oracle " << total_variation(probs, oracle) << ", "
            << seconds_since(start) << " s\n";
    return kPass;
  }
  throw ConfigError(ctx.flags.config + ": split-simulate needs a \"split\" section");
}

int cmd_counterexample(Context& ctx) {
  const std::uint64_t n = ctx.excursions(kDefaultCounterexampleExcursions);
  const std::uint64_t cap = ctx.cap(kDefaultCounterexampleCap);
  const std::uint64_t seed = ctx.seed();
  const auto start = Clock::now();
  const auto kernel = build_counterexample_kernel(cap);
  const auto stats = return_time_stats(kernel, n, cap, seed, ctx.flags.workers);
  const auto analytic = counterexample_analytic(cap);

  std::set<std::uint64_t> rows;
  for (std::uint64_t k = 1; k <= std::min<std::uint64_t>(cap, 1000); ++k) rows.insert(k);
  for (double v = 1000.0; v < static_cast<double>(cap); v *= std::pow(10.0, 1.0 / 50.0))
    rows.insert(static_cast<std::uint64_t>(std::llround(v)));
  rows.insert(cap);

  CsvWriter csv({"n", "analytic_cumulative", "simulated_fraction", "stderr"});
  std::uint64_t cumulative = 0;
  std::uint64_t k = 0;
  for (std::uint64_t r : rows) {
    while (k < r) cumulative += stats.histogram[++k];
    const double frac = static_cast<double>(cumulative) / static_cast<double>(n);
    csv.row({num(r), num(analytic.prob_return_by[r - 1]), num(frac), num(binomial_stderr(frac, n))});
  }
  csv.write(ctx.require_out(), seed);
  ctx.out << "counterexample: return fraction " << stats.return_fraction << " +- " << stats.fraction_stderr()
          << " at cap " << cap << " (analytic " << analytic.prob_return_by[cap - 1] << ", limit "
          << analytic.limit << "), " << seconds_since(start) << " s\n";
  return kPass;
}

FitOptions fit_options(Context& ctx) {
  const TrainSettings& t = ctx.config().train;
  FitOptions opts;
  opts.seed = ctx.seed();
  if (ctx.flags.iters) opts.iters = *ctx.flags.iters;
  else if (t.iters) opts.iters = *t.iters;
  if (ctx.flags.step) opts.step_size = *ctx.flags.step;
  else if (t.step) opts.step_size = *t.step;
  if (t.growth) opts.growth = *t.growth;
  if (t.target_loss) opts.target_loss = *t.target_loss;
  return opts;
}

int cmd_train(Context& ctx) {
  const PointedDag& dag = ctx.dag();
  const DiscreteReward& reward = ctx.reward();
  const FitOptions opts = fit_options(ctx);
  const auto start = Clock::now();
  const FitResult result = fit(dag, reward, opts);

  json params;
  params["states"] = dag.names();
  json logits = json::object();
  json log_flow = json::object();
  for (StateIndex s = 0; s < dag.size(); ++s) {
    json row = json::object();
    const auto& ch = dag.children(s);
    for (std::size_t k = 0; k < ch.size(); ++k) row[dag.name(ch[k])] = result.params.logits[s][k];
    logits[dag.name(s)] = row;
    log_flow[dag.name(s)] = result.params.log_flow[s];
  }
  params["logits"] = logits;
  params["log_flow"] = log_flow;
  params["final_loss"] = result.final_loss;
  params["seed"] = opts.seed;
  write_file(ctx.require_out(), params.dump(2) + "\n");

  if (!ctx.flags.history.empty()) {
    CsvWriter csv({"iter", "loss", "step"});
    for (const FitStep& h : result.history)
      csv.row({num(static_cast<std::uint64_t>(h.iter)), num(h.loss), num(h.step)});
    csv.write(ctx.flags.history, opts.seed);
  }

  const auto kernel = kernel_from_params(dag, result.params);
  const auto term = terminating_by_enumeration(dag, kernel);
  const double z = reward.total();
  double worst = 0.0;
  for (StateIndex x : dag.terminating()) worst = std::max(worst, std::abs(term.probs[x] - reward.values[x] / z));
  ctx.out << "train: loss " << result.final_loss << " after " << result.history.size() << " iterations, F(s0) "
          << std::exp(result.params.log_flow[kInitialState]) << " vs R(X) " << z
          << ", max |P(x) - R(x)/Z| " << worst << ", " << seconds_since(start) << " s\n";
  return kPass;
}

int cmd_mcmc_compare(Context& ctx) {
  const PointedDag& dag = ctx.dag();
  const DiscreteReward& reward = ctx.reward();
  const RunConfig& cfg = ctx.config();
  const std::uint64_t seed = ctx.seed();
  const std::uint64_t m_excursions = ctx.excursions(kDefaultMcmcSteps);
  const std::uint64_t steps = ctx.flags.steps ? *ctx.flags.steps : cfg.mcmc.steps.value_or(kDefaultMcmcSteps);
  const std::uint64_t burn_in = std::min<std::uint64_t>(cfg.mcmc.burn_in.value_or(kDefaultBurnIn), steps / 2);

  std::optional<DiscreteKernel> trained;
  if (!cfg.kernel) {
    const auto result = fit(dag, reward, fit_options(ctx));
    ctx.out << "trained sampler: loss " << result.final_loss << "\n";
    trained.emplace(kernel_from_params(dag, result.params));
  }
  const DiscreteKernel& kernel = cfg.kernel ? *cfg.kernel : *trained;

  // The target lives on X, indexed in sorted order.
  const auto& xs = dag.terminating();
  const std::size_t m = xs.size();
  if (m < 2) throw ConfigError("mcmc-compare needs at least two terminating states");
  std::vector<StateIndex> lattice(dag.size(), m);
  std::vector<double> target(m);
  for (std::size_t i = 0; i < m; ++i) {
    lattice[xs[i]] = i;
    target[i] = reward.values[xs[i]];
    if (!(target[i] > 0.0)) throw ConfigError("mcmc-compare needs a positive reward on every terminating state");
  }

  auto t0 = Clock::now();
  const auto raw = sample_terminating_states(kernel, m_excursions, seed, ctx.flags.workers, ctx.cap(kDefaultStepCap));
  const double gfn_time = seconds_since(t0);
  std::vector<StateIndex> gfn(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) gfn[i] = lattice[raw[i]];

  t0 = Clock::now();
  // Chain index m_excursions keeps the MH stream disjoint from the excursions.
  const auto mh_all = metropolis_hastings(target, lattice_walk_proposal(m), steps, seed, 0, m_excursions);
  const double mh_time = seconds_since(t0);
  const std::vector<StateIndex> mh(mh_all.begin() + static_cast<std::ptrdiff_t>(burn_in), mh_all.end());

  auto statistic = [m](StateIndex i) { return i >= m / 2 ? 1.0 : 0.0; };
  auto [g, h] = compare(gfn, mh, target, statistic);

  CsvWriter csv({"metric", "x", "gflownet", "mh"});
  std::map<std::uint64_t, std::pair<std::string, std::string>> tv;
  for (const auto& [count, v] : g.tv_curve) tv[count].first = num(v);
  for (const auto& [count, v] : h.tv_curve) tv[count].second = num(v);
  for (const auto& [count, pair] : tv) csv.row({"tv", num(count), pair.first, pair.second});
  for (std::size_t k = 0; k < g.autocorr.size(); ++k)
    csv.row({"autocorr", num(static_cast<std::uint64_t>(k + 1)), num(g.autocorr[k]), num(h.autocorr[k])});
  csv.row({"ess", "", num(g.ess), num(h.ess)});
  csv.write(ctx.require_out(), seed);

  ctx.out << "mcmc-compare: " << gfn.size() << " GFlowNet samples (" << gfn_time / static_cast<double>(gfn.size())
          << " s/sample, " << gfn_time / std::max(g.ess, 1.0) << " s/effective sample), " << mh.size()
          << " MH samples after burn-in " << burn_in << " (" << mh_time / static_cast<double>(steps)
          << " s/sample, " << mh_time / std::max(h.ess, 1.0) << " s/effective sample)\n"
          << "  lag-1 autocorrelation: gflownet " << g.autocorr[0] << ", mh " << h.autocorr[0] << "\n"
          << "  final TV: gflownet " << g.tv_curve.back().second << ", mh " << h.tv_curve.back().second << "\n";
  return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recurrent Markov chain toolkit for GFlowNets"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Flags flags;
  flags.workers = default_workers();
  using Handler = std::function<int(Context&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;

  auto add = [&](const char* name, const char* help, Handler handler) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", flags.config, "run configuration (JSON)");
    sub->add_option("--out", flags.out, "output artifact path");
    sub->add_option("--seed", flags.seed, "64-bit seed");
    sub->add_option("--workers", flags.workers, "worker threads (default: RGFN_WORKERS or 1)")
        ->check(CLI::PositiveNumber);
    commands.emplace_back(sub, std::move(handler));
    return sub;
  };

  auto sim_flags = [&](CLI::App* sub) {
    sub->add_option("--excursions", flags.excursions, "number of excursions");
    sub->add_option("--cap", flags.cap, "per-excursion step cap");
  };

  add("validate", "check a configuration", cmd_validate);
  auto* solve = add("solve-invariant", "invariant measure with lambda(s0) = 1", cmd_solve_invariant);
  solve->add_option("--method", flags.method, "exact | power | occupation");
  solve->add_option("--tol", flags.tol, "power-iteration tolerance");
  sim_flags(solve);
  auto* term = add("terminating", "terminating-state distribution", cmd_terminating);
  term->add_option("--method", flags.method, "enum | lemma | sim");
  sim_flags(term);
  auto* verify = add("verify", "check the hypotheses and conclusion of the sampling theorem", cmd_verify);
  verify->add_option("--tol", flags.tol, "residual tolerance");
  auto* split = add("split-simulate", "simulate the split chain of a minorized kernel", cmd_split_simulate);
  sim_flags(split);
  auto* ce = add("counterexample", "escape-to-infinity chain: return-time distribution", cmd_counterexample);
  sim_flags(ce);
  auto* train = add("train", "fit a tabular sampler with the flow-matching loss", cmd_train);
  train->add_option("--iters", flags.iters, "gradient steps");
  train->add_option("--step", flags.step, "initial step size");
  train->add_option("--history", flags.history, "loss history CSV");
  auto* mcmc = add("mcmc-compare", "compare sampler draws with a Metropolis-Hastings chain", cmd_mcmc_compare);
  mcmc->add_option("--steps", flags.steps, "Metropolis-Hastings steps");
  mcmc->add_option("--iters", flags.iters, "training steps when the config has no kernel");
  mcmc->add_option("--step", flags.step, "training step size");
  sim_flags(mcmc);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  for (auto& [sub, handler] : commands) {
    if (!sub->parsed()) continue;
    Context ctx{flags, std::nullopt, out, err};
    try {
      return handler(ctx);
    } catch (const ConfigError& e) {
      err << "config error: " << e.what() << "\n";
      return kConfigError;
    } catch (const ValidationError& e) {
      err << "invalid input: " << e.what() << "\n";
      return kConfigError;
    } catch (const SingularSystemError& e) {
      err << "hypothesis failure: " << e.what() << "\n";
      return kHypothesisFailure;
    } catch (const StepCapExceeded& e) {
      err << "tolerance failure: " << e.what() << "\n";
      return kConclusionFailure;
    } catch (const NonConvergenceError& e) {
      err << "tolerance failure: " << e.what() << "\n";
      return kConclusionFailure;
    } catch (const DivergenceError& e) {
      err << "tolerance failure: " << e.what() << "\n";
      return kConclusionFailure;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kConfigError;
    }
  }
  return kConfigError;
}

}  // namespace rgfn::cli
