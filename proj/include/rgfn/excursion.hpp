#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>

#include "rgfn/error.hpp"
#include "rgfn/parallel.hpp"
#include "rgfn/rng.hpp"
#include "rgfn/space.hpp"

namespace rgfn {

inline constexpr std::uint64_t kDefaultStepCap = 1000000;

/// Returned by a chain's sample_next when the state left the represented
/// range; the excursion is treated like a step-cap abort.
inline constexpr StateIndex kEscapedState = std::numeric_limits<StateIndex>::max();

template <class C>
concept SteppableChain = requires(const C& c, StateIndex s, Rng& rng) {
  { c.sample_next(s, rng) } -> std::convertible_to<StateIndex>;
};

template <class C>
std::size_t chain_size_hint(const C& chain) {
  if constexpr (requires { { chain.size() } -> std::convertible_to<std::size_t>; })
    return chain.size();
  else
    return 0;
}

/// One regeneration cycle from s0: return time sigma and the state visited
/// at time sigma - 1.
struct Excursion {
  std::uint64_t length = 0;
  StateIndex last = kInitialState;
};

/// Runs X_0 = s0, X_1, ... until the first k >= 1 with X_k = s0, calling
/// visit(X_j) for j = 0..sigma-1. Returns nullopt if sigma would exceed cap
/// or the chain escaped its represented range.
template <SteppableChain Chain, class Visit>
std::optional<Excursion> run_excursion(const Chain& chain, Rng& rng, std::uint64_t cap,
                                       Visit&& visit) {
  StateIndex current = kInitialState;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    visit(current);
    const StateIndex next = chain.sample_next(current, rng);
    if (next == kEscapedState) return std::nullopt;
    if (next == kInitialState) return Excursion{k, current};
    current = next;
  }
  return std::nullopt;
}

template <SteppableChain Chain>
std::optional<Excursion> run_excursion(const Chain& chain, Rng& rng, std::uint64_t cap) {
  return run_excursion(chain, rng, cap, [](StateIndex) {});
}

}  // namespace rgfn
