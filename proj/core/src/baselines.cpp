#include "tpb/baselines.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tpb/env.hpp"

namespace tpb {

RegretTrace baseline_ucb1(const BanditInstance& instance, std::uint64_t horizon, RewardStream& stream,
                          const TrialOptions& options) {
  if (horizon == 0) throw std::invalid_argument("baseline_ucb1: horizon must be >= 1");
  RegretTrace trace(horizon, options.checkpoints, options.keep_steps);
  const std::size_t m = instance.arm_count();
  const double scale = instance.weights().maxCoeff();
  std::vector<double> sum(m, 0.0);
  std::vector<double> mean(m, 0.0);
  std::vector<double> inv_sqrt_pulls(m, 0.0);
  std::vector<std::uint64_t> pulls(m, 0);

  for (std::uint64_t t = 1; t <= horizon; ++t) {
    std::size_t arm = 0;
    if (t <= m) {
      arm = static_cast<std::size_t>(t - 1);
    } else {
      // mean_j + sqrt(2 ln(t-1)) / sqrt(n_j)
      const double width = std::sqrt(2.0 * std::log(static_cast<double>(t - 1)));
      double best = -1.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double index = mean[j] + width * inv_sqrt_pulls[j];
        if (index > best) {
          best = index;
          arm = j;
        }
      }
    }
    const double reward = pull(instance, arm, stream);
    sum[arm] += reward / scale;
    ++pulls[arm];
    mean[arm] = sum[arm] / static_cast<double>(pulls[arm]);
    inv_sqrt_pulls[arm] = 1.0 / std::sqrt(static_cast<double>(pulls[arm]));
    trace.record(t, static_cast<std::int64_t>(arm), Phase::Exploit, reward, instance.regret(arm));
  }
  return trace;
}

RegretTrace baseline_random(const BanditInstance& instance, std::uint64_t horizon, RewardStream& stream,
                            const TrialOptions& options) {
  if (horizon == 0) throw std::invalid_argument("baseline_random: horizon must be >= 1");
  RegretTrace trace(horizon, options.checkpoints, options.keep_steps);
  RewardStream chooser(random_policy_seed(stream.seed()));
  const std::uint64_t m = instance.arm_count();
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    const auto arm = static_cast<std::size_t>(chooser.index(m));
    const double reward = pull(instance, arm, stream);
    trace.record(t, static_cast<std::int64_t>(arm), Phase::Exploit, reward, instance.regret(arm));
  }
  return trace;
}

}  // namespace tpb
