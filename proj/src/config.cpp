#include "rgfn/config.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rgfn/catalog.hpp"
#include "rgfn/error.hpp"

namespace rgfn {

namespace {

using nlohmann::json;

constexpr const char* kSinkName = "sf";

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  for (const auto& [key, _] : obj.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; }))
      fail(where + ": unknown key \"" + key + "\"");
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where + ": expected a number");
  return v.get<double>();
}

std::uint64_t unsigned_integer(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    if (v.get<std::int64_t>() < 0) fail(where + ": must be non-negative");
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0.0 && d < 1.8e19 && d == static_cast<double>(static_cast<std::uint64_t>(d)))
      return static_cast<std::uint64_t>(d);
  }
  fail(where + ": expected a non-negative integer");
}

std::vector<double> number_array(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<double>> matrix(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) fail(where + ": expected a non-empty array of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < v.size(); ++i) {
    rows.push_back(number_array(v[i], where + "[" + std::to_string(i) + "]"));
    if (rows.back().size() != v.size()) fail(where + ": matrix must be square");
  }
  return rows;
}

/// Rows may be given directly or as {"rows": [...]}.
std::vector<std::vector<double>> kernel_rows(const json& v, const std::string& where) {
  if (v.is_object()) {
    only_keys(v, where, {"rows"});
    if (!v.contains("rows")) fail(where + ": missing \"rows\"");
    return matrix(v["rows"], where + ".rows");
  }
  return matrix(v, where);
}

class Names {
 public:
  explicit Names(std::vector<std::string> names) : names_(std::move(names)) {}

  StateIndex resolve(const json& v, const std::string& where) const {
    if (v.is_string()) {
      const auto it = std::find(names_.begin(), names_.end(), v.get<std::string>());
      if (it == names_.end()) fail(where + ": unknown state \"" + v.get<std::string>() + "\"");
      return static_cast<StateIndex>(it - names_.begin());
    }
    const std::uint64_t i = unsigned_integer(v, where);
    if (i >= names_.size()) fail(where + ": state index " + std::to_string(i) + " out of range");
    return static_cast<StateIndex>(i);
  }

  StateIndex resolve(const std::string& name, const std::string& where) const {
    return resolve(json(name), where);
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& all() const { return names_; }

 private:
  std::vector<std::string> names_;
};

/// Maps a pre-wrap index to the wrapped index; sf goes to s0.
struct Wrapping {
  std::optional<StateIndex> sink;

  StateIndex operator()(StateIndex s) const {
    if (!sink) return s;
    if (s == *sink) return kInitialState;
    return s > *sink ? s - 1 : s;
  }
};

struct ParsedSpace {
  PointedDag dag;
  Names raw;  // names as written, possibly including sf
  Wrapping wrap;
};

ParsedSpace parse_space(const json& root) {
  const json& states = root["states"];
  if (!states.is_array() || states.empty()) fail("states: expected a non-empty array of names");
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!states[i].is_string()) fail("states[" + std::to_string(i) + "]: expected a string");
    names.push_back(states[i].get<std::string>());
    if (!seen.insert(names.back()).second) fail("states: duplicate state \"" + names.back() + "\"");
  }
  Names raw(names);
  if (!root.contains("edges")) fail("missing \"edges\"");
  const json& ej = root["edges"];
  if (!ej.is_array()) fail("edges: expected an array of [from, to] pairs");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < ej.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    if (!ej[i].is_array() || ej[i].size() != 2) fail(where + ": expected [from, to]");
    edges.push_back({raw.resolve(ej[i][0], where), raw.resolve(ej[i][1], where)});
  }

  const auto sink_it = std::find(names.begin(), names.end(), kSinkName);
  if (sink_it != names.end()) {
    if (root.contains("terminating")) fail("terminating: implied by the edges into sf; omit it");
    const auto sink = static_cast<StateIndex>(sink_it - names.begin());
    try {
      PointedDag dag = wrap_pointed_dag(UnwrappedDag{names, edges, sink});
      return {std::move(dag), std::move(raw), Wrapping{sink}};
    } catch (const ValidationError& e) {
      fail(std::string("space: ") + e.what());
    }
  }

  std::vector<StateIndex> terminating;
  if (root.contains("terminating")) {
    const json& tj = root["terminating"];
    if (!tj.is_array()) fail("terminating: expected an array of states");
    for (std::size_t i = 0; i < tj.size(); ++i)
      terminating.push_back(raw.resolve(tj[i], "terminating[" + std::to_string(i) + "]"));
  }
  std::sort(terminating.begin(), terminating.end());
  terminating.erase(std::unique(terminating.begin(), terminating.end()), terminating.end());
  for (StateIndex x : terminating) {
    const Edge wrap_edge{x, kInitialState};
    if (std::find(edges.begin(), edges.end(), wrap_edge) == edges.end()) edges.push_back(wrap_edge);
  }
  try {
    PointedDag dag(names, edges, terminating);
    return {std::move(dag), std::move(raw), Wrapping{}};
  } catch (const ValidationError& e) {
    fail(std::string("space: ") + e.what());
  }
}

/// Per-state values given as {name: value} (missing states are 0) or as an
/// array over the wrapped states.
std::vector<double> state_values(const json& v, const ParsedSpace& space, const std::string& where) {
  const std::size_t n = space.dag.size();
  if (v.is_array()) {
    auto out = number_array(v, where);
    if (out.size() != n) fail(where + ": expected " + std::to_string(n) + " values");
    return out;
  }
  if (!v.is_object()) fail(where + ": expected an object {state: value} or an array");
  std::vector<double> out(n, 0.0);
  for (const auto& [key, value] : v.items()) {
    const StateIndex s = space.wrap(space.raw.resolve(key, where));
    out[s] = number(value, where + "." + key);
  }
  return out;
}

std::map<Edge, double> edge_flows(const json& v, const ParsedSpace& space) {
  std::map<Edge, double> flows;
  auto add = [&](StateIndex a, StateIndex b, double f, const std::string& where) {
    const Edge e{space.wrap(a), space.wrap(b)};
    if (!flows.emplace(e, f).second) fail(where + ": duplicate edge");
  };
  if (v.is_object()) {
    for (const auto& [key, value] : v.items()) {
      const std::string where = "edge_flows." + key;
      const auto arrow = key.find("->");
      if (arrow == std::string::npos) fail(where + ": expected a key of the form \"from->to\"");
      add(space.raw.resolve(key.substr(0, arrow), where), space.raw.resolve(key.substr(arrow + 2), where),
          number(value, where), where);
    }
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string where = "edge_flows[" + std::to_string(i) + "]";
      if (!v[i].is_array() || v[i].size() != 3) fail(where + ": expected [from, to, flow]");
      add(space.raw.resolve(v[i][0], where), space.raw.resolve(v[i][1], where), number(v[i][2], where),
          where);
    }
  } else {
    fail("edge_flows: expected an object or an array");
  }
  return flows;
}

void parse_split(const json& sj, RunConfig& cfg) {
  if (!sj.is_object()) fail("split: expected an object");
  only_keys(sj, "split", {"epsilon", "nu", "base_kernel", "catalog", "params", "terminating", "reward", "flow"});

  std::optional<std::string> catalog;
  std::map<std::string, double> params;
  auto read_params = [&](const json& pj, const std::string& where) {
    if (!pj.is_object()) fail(where + ": expected an object");
    for (const auto& [key, value] : pj.items()) params[key] = number(value, where + "." + key);
  };
  if (sj.contains("catalog")) {
    if (!sj["catalog"].is_string()) fail("split.catalog: expected a string");
    catalog = sj["catalog"].get<std::string>();
    if (sj.contains("params")) read_params(sj["params"], "split.params");
  } else if (sj.contains("params")) {
    fail("split.params: only valid with a catalog instance");
  }
  if (sj.contains("nu") && sj["nu"].is_object()) {
    const json& nj = sj["nu"];
    only_keys(nj, "split.nu", {"catalog", "params"});
    if (catalog) fail("split: catalog given twice");
    if (!nj.contains("catalog") || !nj["catalog"].is_string()) fail("split.nu.catalog: expected a string");
    catalog = nj["catalog"].get<std::string>();
    if (nj.contains("params")) read_params(nj["params"], "split.nu.params");
  }

  if (catalog) {
    if (sj.contains("base_kernel")) fail("split.base_kernel: not allowed with a catalog instance");
    if (sj.contains("epsilon")) {
      const json& ej = sj["epsilon"];
      if (!ej.is_object() || !ej.contains("const"))
        fail("split.epsilon: catalog instances take only {\"const\": b}");
      only_keys(ej, "split.epsilon", {"const"});
      params["epsilon"] = number(ej["const"], "split.epsilon.const");
    }
    try {
      cfg.split_continuous = make_catalog_instance(*catalog, params);
      validate_minorization(*cfg.split_continuous);
    } catch (const ValidationError& e) {
      fail(std::string("split: ") + e.what());
    }
    return;
  }

  if (!sj.contains("base_kernel")) fail("split: missing \"base_kernel\"");
  if (!sj.contains("nu")) fail("split: missing \"nu\"");
  if (!sj.contains("epsilon")) fail("split: missing \"epsilon\"");
  const auto rows = kernel_rows(sj["base_kernel"], "split.base_kernel");
  const std::size_t n = rows.size();
  std::vector<double> eps;
  const json& ej = sj["epsilon"];
  if (ej.is_object()) {
    only_keys(ej, "split.epsilon", {"const"});
    if (!ej.contains("const")) fail("split.epsilon: expected {\"const\": b}");
    eps.assign(n, number(ej["const"], "split.epsilon.const"));
  } else {
    eps = number_array(ej, "split.epsilon");
  }
  const auto nu = number_array(sj["nu"], "split.nu");
  if (eps.size() != n || nu.size() != n) fail("split: epsilon and nu must match the kernel size");
  std::optional<std::vector<StateIndex>> declared;
  if (sj.contains("terminating")) {
    declared.emplace();
    for (double v : number_array(sj["terminating"], "split.terminating")) {
      if (v < 0 || v >= static_cast<double>(n) || v != static_cast<double>(static_cast<StateIndex>(v)))
        fail("split.terminating: invalid state index");
      declared->push_back(static_cast<StateIndex>(v));
    }
    std::sort(declared->begin(), declared->end());
  }
  try {
    cfg.split_discrete.emplace(DiscreteKernel(rows), eps, nu, declared);
    cfg.split_discrete->base().require_stochastic();
  } catch (const ValidationError& e) {
    fail(std::string("split: ") + e.what());
  }
  if (sj.contains("reward")) {
    cfg.split_reward = number_array(sj["reward"], "split.reward");
    if (cfg.split_reward->size() != n) fail("split.reward: expected " + std::to_string(n) + " values");
  }
  if (sj.contains("flow")) {
    auto f = number_array(sj["flow"], "split.flow");
    if (f.size() != n) fail("split.flow: expected " + std::to_string(n) + " values");
    try {
      cfg.flow.emplace(std::move(f), Normalization::FlowUnnormalized);
    } catch (const ValidationError& e) {
      fail(std::string("split.flow: ") + e.what());
    }
  }
}

RunConfig build(const json& root) {
  if (!root.is_object()) fail("top level: expected an object");
  only_keys(root, "top level",
            {"states", "edges", "terminating", "kernel", "edge_flows", "reward", "flow", "split",
             "simulation", "train", "mcmc", "tolerances"});
  RunConfig cfg;

  if (root.contains("simulation")) {
    const json& s = root["simulation"];
    if (!s.is_object()) fail("simulation: expected an object");
    only_keys(s, "simulation", {"excursions", "cap", "seed"});
    if (s.contains("excursions")) cfg.simulation.excursions = unsigned_integer(s["excursions"], "simulation.excursions");
    if (s.contains("cap")) cfg.simulation.cap = unsigned_integer(s["cap"], "simulation.cap");
    if (s.contains("seed")) {
      const json& seed = s["seed"];
      if (!seed.is_number_integer() && !seed.is_number_unsigned())
        fail("simulation.seed: expected a 64-bit unsigned integer");
      cfg.simulation.seed = unsigned_integer(seed, "simulation.seed");
    }
  }
  if (root.contains("train")) {
    const json& t = root["train"];
    if (!t.is_object()) fail("train: expected an object");
    only_keys(t, "train", {"iters", "step", "growth", "target_loss"});
    if (t.contains("iters")) cfg.train.iters = unsigned_integer(t["iters"], "train.iters");
    if (t.contains("step")) cfg.train.step = number(t["step"], "train.step");
    if (t.contains("growth")) cfg.train.growth = number(t["growth"], "train.growth");
    if (t.contains("target_loss")) cfg.train.target_loss = number(t["target_loss"], "train.target_loss");
  }
  if (root.contains("mcmc")) {
    const json& m = root["mcmc"];
    if (!m.is_object()) fail("mcmc: expected an object");
    only_keys(m, "mcmc", {"steps", "burn_in"});
    if (m.contains("steps")) cfg.mcmc.steps = unsigned_integer(m["steps"], "mcmc.steps");
    if (m.contains("burn_in")) cfg.mcmc.burn_in = unsigned_integer(m["burn_in"], "mcmc.burn_in");
  }
  if (root.contains("tolerances")) {
    const json& t = root["tolerances"];
    if (!t.is_object()) fail("tolerances: expected an object");
    for (const auto& [key, value] : t.items()) cfg.tolerances[key] = number(value, "tolerances." + key);
  }

  if (root.contains("kernel") && root.contains("edge_flows"))
    fail("exactly one of \"kernel\" and \"edge_flows\" may be given");

  const bool has_space = root.contains("states");
  if (!has_space) {
    for (const char* key : {"edges", "terminating", "kernel", "edge_flows", "reward"})
      if (root.contains(key)) fail(std::string(key) + ": requires \"states\"");
    if (root.contains("flow") && !root.contains("split")) fail("flow: requires \"states\"");
  }

  if (has_space) {
    ParsedSpace space = parse_space(root);
    const std::size_t n = space.dag.size();
    if (root.contains("kernel")) {
      auto rows = kernel_rows(root["kernel"], "kernel");
      if (rows.size() != n)
        fail("kernel: expected " + std::to_string(n) + " rows (one per state after wrapping)");
      try {
        cfg.kernel.emplace(rows);
      } catch (const ValidationError& e) {
        fail(std::string("kernel: ") + e.what());
      }
      const KernelReport report = validate_kernel(*cfg.kernel, space.dag);
      if (!report.empty()) {
        std::ostringstream msg;
        msg << "kernel:";
        for (const auto& r : report.row_sums)
          msg << " row " << space.dag.name(r.state) << " sums to 1" << (r.deviation >= 0 ? "+" : "")
              << r.deviation << ";";
        for (const auto& s : report.support)
          msg << " mass on non-edge " << space.dag.name(s.from) << "->" << space.dag.name(s.to) << ";";
        for (StateIndex s : report.unreachable) msg << " state " << space.dag.name(s) << " unreachable;";
        if (report.size_mismatch) msg << " " << *report.size_mismatch;
        fail(msg.str());
      }
    }
    if (root.contains("edge_flows")) {
      try {
        auto [kernel, flow] = kernel_from_edge_flows(space.dag, edge_flows(root["edge_flows"], space));
        cfg.kernel.emplace(std::move(kernel));
        cfg.edge_state_flow.emplace(std::move(flow));
      } catch (const ValidationError& e) {
        fail(std::string("edge_flows: ") + e.what());
      }
    }
    if (root.contains("reward")) {
      DiscreteReward reward{state_values(root["reward"], space, "reward")};
      try {
        validate_reward(reward, space.dag);
      } catch (const ValidationError& e) {
        fail(std::string("reward: ") + e.what());
      }
      cfg.reward = std::move(reward);
    }
    if (root.contains("flow")) {
      try {
        cfg.flow.emplace(state_values(root["flow"], space, "flow"), Normalization::FlowUnnormalized);
      } catch (const ValidationError& e) {
        fail(std::string("flow: ") + e.what());
      }
    }
    cfg.dag.emplace(std::move(space.dag));
  }

  if (root.contains("split")) {
    if (has_space && root.contains("flow")) fail("flow: give the split-chain flow as split.flow");
    parse_split(root["split"], cfg);
  }
  return cfg;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    // Recover line and column from the byte offset.
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) +
                      ": malformed JSON: " + e.what());
  }
  try {
    return build(root);
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  } catch (const json::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string());
}

}  // namespace rgfn
