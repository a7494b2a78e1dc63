#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rgfn {

/// Input violates a structural invariant (graph shape, kernel support, etc.).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An excursion did not return to its regeneration state within the step
/// cap. Raised instead of hanging on transient or null-recurrent chains.
class StepCapExceeded : public std::runtime_error {
 public:
  StepCapExceeded(std::uint64_t excursion, std::uint64_t cap)
      : std::runtime_error("excursion " + std::to_string(excursion) +
                           " did not return within " + std::to_string(cap) +
                           " steps; chain may not be recurrent"),
        excursion_(excursion),
        cap_(cap) {}

  std::uint64_t excursion() const noexcept { return excursion_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t excursion_;
  std::uint64_t cap_;
};

}  // namespace rgfn
