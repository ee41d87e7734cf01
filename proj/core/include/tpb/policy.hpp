#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "tpb/instance.hpp"
#include "tpb/rng.hpp"
#include "tpb/schedule.hpp"
#include "tpb/trace.hpp"

namespace tpb {

/// The n probe arms Sigma (columns of `matrix`) and a reusable LU
/// factorization of Sigma^T.
struct ProbeSet {
  std::vector<std::size_t> indices;
  Eigen::MatrixXd matrix;
  Eigen::PartialPivLU<Eigen::MatrixXd> transpose_lu;

  std::size_t size() const { return indices.size(); }
};

/// Builds a probe set from explicit column indices of `arms`.
/// Throws std::invalid_argument if the selected columns are not full rank.
ProbeSet make_probe_set(const Eigen::MatrixXd& arms, std::vector<std::size_t> indices);

/// Greedy column-pivoted selection: repeatedly take the column with the
/// largest norm after projecting out the columns already chosen (lowest index
/// on ties). Deterministic; duplicate columns are never both selected.
ProbeSet choose_probe_set(const BanditInstance& instance);

/// Probe set {e_1, ..., e_n} used for the unit-sphere problem.
ProbeSet identity_probe_set(std::size_t n);

struct PreferenceEstimate {
  Eigen::VectorXd z;  ///< zero vector in a bad epoch
  bool good = false;
};

/// Solves Sigma^T z = logit(alpha_hat) when every estimate lies strictly
/// inside (0,1); otherwise reports a bad epoch with z = 0.
PreferenceEstimate estimate_preference(const ProbeSet& probe, const Eigen::VectorXd& estimates);

/// argmax_u w_u f(u^T z_hat), lowest index on ties. With uniform weights this
/// is argmax_u u^T z_hat.
std::size_t select_arm_finite(const BanditInstance& instance, const Eigen::VectorXd& z_hat);

/// z_hat / ||z_hat||, or e_1 when z_hat = 0.
Eigen::VectorXd select_arm_sphere(const Eigen::VectorXd& z_hat);

template <class Arm>
struct EpochState {
  std::uint64_t epoch = 1;
  std::vector<std::uint64_t> success_counts;
  Eigen::VectorXd estimates;   ///< success_counts / epoch
  Eigen::VectorXd z_estimate;  ///< zero vector in a bad epoch
  Arm chosen_arm{};
  bool good = false;
};

/// Replaces the empirical estimates q_u / l, e.g. with exact means to model
/// perfect information. Receives the success counts and the epoch index.
using EstimateOverride =
    std::function<Eigen::VectorXd(const std::vector<std::uint64_t>& counts, std::uint64_t epoch)>;

struct TrialOptions {
  std::vector<std::uint64_t> checkpoints;
  bool keep_steps = false;
  EstimateOverride estimator;
};

/// Runs the Two-Phase Algorithm for T timesteps: epoch l makes one Phase-1
/// pull per probe arm, re-estimates, then g(l) Phase-2 pulls of the estimated
/// best arm. Stops exactly at T, possibly mid-epoch.
RegretTrace run_trial(const BanditInstance& instance, const Schedule& schedule, std::uint64_t horizon,
                      RewardStream& stream, const TrialOptions& options = {});

/// Same, with an explicitly supplied probe set.
RegretTrace run_trial(const BanditInstance& instance, const ProbeSet& probe, const Schedule& schedule,
                      std::uint64_t horizon, RewardStream& stream, const TrialOptions& options = {});

/// Unit-sphere variant with probes e_1..e_n; Phase 2 pulls z_hat / ||z_hat||.
RegretTrace run_trial(const SphereInstance& instance, const Schedule& schedule, std::uint64_t horizon,
                      RewardStream& stream, const TrialOptions& options = {});

}  // namespace tpb
