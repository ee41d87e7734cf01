#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "tpb/schedule.hpp"

namespace tpb {

enum class Mode { Finite, Sphere };
enum class Baseline { Ucb1, Random };
/// What to do when the theory constants cannot be computed.
enum class BoundPolicy { Required, Optional, Off };

struct ScheduleSpec {
  ScheduleKind kind = ScheduleKind::Lls;
  std::uint64_t degree = 0;          ///< Poly only
  std::vector<std::uint64_t> table;  ///< Custom only

  bool operator==(const ScheduleSpec&) const = default;
};

/// Random instance: Gaussian arms (finite mode only), Gaussian preference
/// direction scaled to `preference_norm`.
struct GeneratorSpec {
  std::size_t dimension = 0;
  std::size_t arm_count = 0;  ///< ignored in sphere mode
  std::uint64_t seed = 0;
  double preference_norm = 1.0;
};

/// Experiment description. Text grammar, one `key = value` per line, `#`
/// starts a comment:
///
///   mode            finite | sphere
///   arms            [[row], [row], ...]   n x m, each column is an arm
///   preference      [z1, ..., zn]
///   weights         [w1, ..., wm]          optional, default all ones
///   dimension       n                      generator
///   arm_count       m                      generator, finite only
///   instance_seed   s                      generator
///   preference_norm r                      generator
///   schedule        lls | linear_over_n | poly:K | custom:[g1, g2, ...]
///   horizon         T
///   trials          N                      default 1
///   seed            S                      default 0
///   baselines       ucb1, random | none    finite only
///   checkpoints     [t1, t2, ...]          default {1, 2.5, 5} x 10^k and T
///   bounds          required | optional | off
struct ExperimentConfig {
  Mode mode = Mode::Finite;
  std::optional<Eigen::MatrixXd> arms;
  std::optional<Eigen::VectorXd> preference;
  std::optional<Eigen::VectorXd> weights;
  std::optional<GeneratorSpec> generator;
  std::optional<ScheduleSpec> schedule;
  std::uint64_t horizon = 0;
  std::uint64_t trials = 1;
  std::uint64_t base_seed = 0;
  std::vector<Baseline> baselines;
  std::vector<std::uint64_t> checkpoints;
  BoundPolicy bounds = BoundPolicy::Required;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Parses and validates; throws ConfigError listing every problem found.
ExperimentConfig parse_config(std::string_view text);

/// Checks cross-field invariants (mode/field compatibility, full-rank inline
/// arms, ranges). Throws ConfigError. Called by parse_config and again after
/// command-line overrides.
void validate_config(const ExperimentConfig& config);

/// Canonical text form; parse_config(emit_config(c)) reproduces c.
std::string emit_config(const ExperimentConfig& config);

/// FNV-1a 64 of the canonical text, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

/// Schedule used when the config leaves it unset: lls for finite arms,
/// linear_over_n for the sphere.
ScheduleSpec effective_schedule(const ExperimentConfig& config);
Schedule make_schedule(const ScheduleSpec& spec, std::size_t dimension);

/// Checkpoints used when the config leaves them unset.
std::vector<std::uint64_t> default_checkpoints(std::uint64_t horizon);
std::vector<std::uint64_t> effective_checkpoints(const ExperimentConfig& config);

std::string to_string(Baseline b);
std::string to_string(Mode m);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

}  // namespace tpb
