#include "tpb/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tpb/env.hpp"
#include "tpb/link.hpp"

namespace tpb {

namespace {

// Accumulates Phase-1 successes and forms the per-epoch estimate.
template <class Arm>
class ProbeLearner {
 public:
  ProbeLearner(const ProbeSet& probe, const EstimateOverride& estimator)
      : probe_(probe), estimator_(estimator) {
    state_.success_counts.assign(probe.size(), 0);
  }

  void observe(std::size_t probe_slot, bool success) {
    if (success) ++state_.success_counts[probe_slot];
  }

  const EpochState<Arm>& close_sweep(std::uint64_t epoch) {
    state_.epoch = epoch;
    if (estimator_) {
      state_.estimates = estimator_(state_.success_counts, epoch);
    } else {
      state_.estimates.resize(static_cast<Eigen::Index>(probe_.size()));
      for (std::size_t i = 0; i < probe_.size(); ++i) {
        state_.estimates[static_cast<Eigen::Index>(i)] =
            static_cast<double>(state_.success_counts[i]) / static_cast<double>(epoch);
      }
    }
    auto est = estimate_preference(probe_, state_.estimates);
    state_.z_estimate = std::move(est.z);
    state_.good = est.good;
    return state_;
  }

  void set_choice(Arm arm) { state_.chosen_arm = std::move(arm); }

 private:
  const ProbeSet& probe_;
  const EstimateOverride& estimator_;
  EpochState<Arm> state_;
};

std::uint64_t exploit_length(const Schedule& schedule, std::uint64_t epoch, std::uint64_t remaining) {
  return std::min(schedule.g(epoch), remaining);
}

}  // namespace

ProbeSet make_probe_set(const Eigen::MatrixXd& arms, std::vector<std::size_t> indices) {
  const Eigen::Index n = arms.rows();
  if (static_cast<Eigen::Index>(indices.size()) != n) {
    throw std::invalid_argument("probe set: need exactly n probe arms");
  }
  ProbeSet probe;
  probe.matrix.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto j = indices[static_cast<std::size_t>(i)];
    if (j >= static_cast<std::size_t>(arms.cols())) throw std::invalid_argument("probe set: bad index");
    probe.matrix.col(i) = arms.col(static_cast<Eigen::Index>(j));
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(probe.matrix);
  if (qr.rank() != n) throw std::invalid_argument("probe set: probe arms are not full rank");
  probe.indices = std::move(indices);
  probe.transpose_lu.compute(probe.matrix.transpose());
  return probe;
}

ProbeSet choose_probe_set(const BanditInstance& instance) {
  const Eigen::MatrixXd& arms = instance.arms();
  const Eigen::Index n = arms.rows();
  const Eigen::Index m = arms.cols();
  const double scale = arms.colwise().norm().maxCoeff();
  const double tol = 1e-10 * std::max(scale, 1.0);

  Eigen::MatrixXd residual = arms;
  std::vector<bool> taken(static_cast<std::size_t>(m), false);
  std::vector<std::size_t> chosen;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index best = -1;
    double best_norm = -1.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (taken[static_cast<std::size_t>(j)]) continue;
      const double r = residual.col(j).norm();
      if (r > best_norm) {
        best_norm = r;
        best = j;
      }
    }
    if (best < 0 || best_norm <= tol) {
      throw std::invalid_argument("probe set: arm matrix is rank deficient");
    }
    taken[static_cast<std::size_t>(best)] = true;
    chosen.push_back(static_cast<std::size_t>(best));
    const Eigen::VectorXd q = residual.col(best) / best_norm;
    residual -= q * (q.transpose() * residual);
  }
  return make_probe_set(arms, std::move(chosen));
}

ProbeSet identity_probe_set(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  const auto dim = static_cast<Eigen::Index>(n);
  return make_probe_set(Eigen::MatrixXd::Identity(dim, dim), std::move(idx));
}

PreferenceEstimate estimate_preference(const ProbeSet& probe, const Eigen::VectorXd& estimates) {
  const auto n = static_cast<Eigen::Index>(probe.size());
  if (estimates.size() != n) throw std::invalid_argument("estimate_preference: one estimate per probe arm");
  PreferenceEstimate out;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(estimates[i] > 0.0 && estimates[i] < 1.0)) {
      out.z = Eigen::VectorXd::Zero(n);
      out.good = false;
      return out;
    }
  }
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) rhs[i] = logit(estimates[i]);
  out.z = probe.transpose_lu.solve(rhs);
  out.good = true;
  return out;
}

std::size_t select_arm_finite(const BanditInstance& instance, const Eigen::VectorXd& z_hat) {
  const Eigen::VectorXd beta = instance.arms().transpose() * z_hat;
  const Eigen::Index m = beta.size();
  Eigen::Index best = 0;
  if (instance.uniform_weights()) {
    for (Eigen::Index j = 1; j < m; ++j) {
      if (beta[j] > beta[best]) best = j;
    }
    return static_cast<std::size_t>(best);
  }
  // log-space scores keep arms distinguishable where f saturates
  const auto& w = instance.weights();
  double best_score = std::log(w[0]) + log_logistic(beta[0]);
  for (Eigen::Index j = 1; j < m; ++j) {
    const double s = std::log(w[j]) + log_logistic(beta[j]);
    if (s > best_score) {
      best_score = s;
      best = j;
    }
  }
  return static_cast<std::size_t>(best);
}

Eigen::VectorXd select_arm_sphere(const Eigen::VectorXd& z_hat) {
  const double norm = z_hat.norm();
  if (norm > 0.0) return z_hat / norm;
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(z_hat.size());
  if (e1.size() > 0) e1[0] = 1.0;
  return e1;
}

RegretTrace run_trial(const BanditInstance& instance, const Schedule& schedule, std::uint64_t horizon,
                      RewardStream& stream, const TrialOptions& options) {
  return run_trial(instance, choose_probe_set(instance), schedule, horizon, stream, options);
}

RegretTrace run_trial(const BanditInstance& instance, const ProbeSet& probe, const Schedule& schedule,
                      std::uint64_t horizon, RewardStream& stream, const TrialOptions& options) {
  if (horizon == 0) throw std::invalid_argument("run_trial: horizon must be >= 1");
  RegretTrace trace(horizon, options.checkpoints, options.keep_steps);
  ProbeLearner<std::size_t> learner(probe, options.estimator);
  const std::size_t n = probe.size();
  std::uint64_t t = 0;
  for (std::uint64_t epoch = 1; t < horizon; ++epoch) {
    trace.begin_epoch(epoch);
    for (std::size_t i = 0; i < n; ++i) {
      if (t == horizon) return trace;
      const std::size_t arm = probe.indices[i];
      const double reward = pull(instance, arm, stream);
      learner.observe(i, reward > 0.0);
      trace.record(++t, static_cast<std::int64_t>(arm), Phase::Explore, reward, instance.regret(arm));
    }
    const auto& state = learner.close_sweep(epoch);
    const std::size_t arm = select_arm_finite(instance, state.z_estimate);
    learner.set_choice(arm);
    const double regret = instance.regret(arm);
    trace.annotate_epoch(state.good, static_cast<std::int64_t>(arm), regret);
    const std::uint64_t len = exploit_length(schedule, epoch, horizon - t);
    for (std::uint64_t s = 0; s < len; ++s) {
      const double reward = pull(instance, arm, stream);
      trace.record(++t, static_cast<std::int64_t>(arm), Phase::Exploit, reward, regret);
    }
  }
  return trace;
}

RegretTrace run_trial(const SphereInstance& instance, const Schedule& schedule, std::uint64_t horizon,
                      RewardStream& stream, const TrialOptions& options) {
  if (horizon == 0) throw std::invalid_argument("run_trial: horizon must be >= 1");
  const std::size_t n = instance.dimension();
  const ProbeSet probe = identity_probe_set(n);
  RegretTrace trace(horizon, options.checkpoints, options.keep_steps);
  ProbeLearner<Eigen::VectorXd> learner(probe, options.estimator);

  std::vector<Eigen::VectorXd> basis;
  std::vector<double> basis_regret;
  for (std::size_t i = 0; i < n; ++i) {
    basis.push_back(probe.matrix.col(static_cast<Eigen::Index>(i)));
    basis_regret.push_back(sphere_regret(instance, basis.back()));
  }

  std::uint64_t t = 0;
  for (std::uint64_t epoch = 1; t < horizon; ++epoch) {
    trace.begin_epoch(epoch);
    for (std::size_t i = 0; i < n; ++i) {
      if (t == horizon) return trace;
      const double reward = pull_sphere(instance, basis[i], stream);
      learner.observe(i, reward > 0.0);
      trace.record(++t, static_cast<std::int64_t>(i), Phase::Explore, reward, basis_regret[i]);
    }
    const auto& state = learner.close_sweep(epoch);
    Eigen::VectorXd arm = select_arm_sphere(state.z_estimate);
    const double success = sphere_success_probability(instance, arm);
    const double regret = sphere_regret(instance, arm);
    learner.set_choice(arm);
    trace.annotate_epoch(state.good, -1, regret);
    const std::uint64_t len = exploit_length(schedule, epoch, horizon - t);
    for (std::uint64_t s = 0; s < len; ++s) {
      const double reward = stream.bernoulli(success) ? 1.0 : 0.0;
      trace.record(++t, -1, Phase::Exploit, reward, regret);
    }
  }
  return trace;
}

}  // namespace tpb
