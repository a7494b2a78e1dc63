#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "rgfn/invariant.hpp"
#include "rgfn/kernel.hpp"
#include "rgfn/space.hpp"
#include "rgfn/splitchain.hpp"

namespace rgfn {

struct SimulationSettings {
  std::optional<std::uint64_t> excursions;
  std::optional<std::uint64_t> cap;
  std::optional<std::uint64_t> seed;
};

struct TrainSettings {
  std::optional<std::size_t> iters;
  std::optional<double> step;
  std::optional<double> growth;
  std::optional<double> target_loss;
};

struct McmcSettings {
  std::optional<std::uint64_t> steps;
  std::optional<std::uint64_t> burn_in;
};

/// Parsed and validated run configuration. See README for the schema.
struct RunConfig {
  std::optional<PointedDag> dag;
  std::optional<DiscreteKernel> kernel;
  /// State flow implied by "edge_flows", when given.
  std::optional<FlowMeasure> edge_state_flow;
  std::optional<DiscreteReward> reward;
  /// Candidate flow F ("flow"), unnormalized.
  std::optional<FlowMeasure> flow;
  std::optional<DiscreteMinorizedKernel> split_discrete;
  std::optional<ContinuousMinorizedKernel> split_continuous;
  /// Discrete split instances may carry a reward per state ("split.reward").
  std::optional<std::vector<double>> split_reward;
  SimulationSettings simulation;
  TrainSettings train;
  McmcSettings mcmc;
  std::map<std::string, double> tolerances;
};

/// Throws ConfigError with line/column for malformed JSON and a descriptive
/// message for schema or invariant violations.
RunConfig parse_config(const std::string& text, const std::string& origin = "<config>");
RunConfig load_config(const std::filesystem::path& path);

}  // namespace rgfn
