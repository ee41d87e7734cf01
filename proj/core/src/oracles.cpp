#include "tpb/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace tpb {

double bad_epoch_probability_exact(const Eigen::VectorXd& probe_means, std::uint64_t l) {
  if (l == 0) throw std::invalid_argument("bad_epoch_probability_exact: l must be >= 1");
  const double power = static_cast<double>(l);
  double log_good = 0.0;
  for (Eigen::Index i = 0; i < probe_means.size(); ++i) {
    const double a = probe_means[i];
    const double agree = std::min(1.0, std::pow(a, power) + std::pow(1.0 - a, power));
    log_good += std::log1p(-agree);
  }
  return -std::expm1(log_good);
}

double bad_epoch_probability_exact(const BanditInstance& instance, const ProbeSet& probe, std::uint64_t l) {
  Eigen::VectorXd means(static_cast<Eigen::Index>(probe.size()));
  for (std::size_t i = 0; i < probe.size(); ++i) {
    means[static_cast<Eigen::Index>(i)] = instance.true_means()[static_cast<Eigen::Index>(probe.indices[i])];
  }
  return bad_epoch_probability_exact(means, l);
}

double binomial_pmf(std::uint64_t l, std::uint64_t k, double alpha) {
  if (k > l) return 0.0;
  const double n = static_cast<double>(l);
  const double x = static_cast<double>(k);
  if (alpha <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (alpha >= 1.0) return k == l ? 1.0 : 0.0;
  const double log_choose = std::lgamma(n + 1.0) - std::lgamma(x + 1.0) - std::lgamma(n - x + 1.0);
  return std::exp(log_choose + x * std::log(alpha) + (n - x) * std::log1p(-alpha));
}

double binomial_deviation_probability(double alpha, std::uint64_t l, double threshold) {
  if (l == 0) throw std::invalid_argument("binomial_deviation_probability: l must be >= 1");
  const double cutoff = threshold * (1.0 - 1e-12);
  double p = 0.0;
  for (std::uint64_t k = 0; k <= l; ++k) {
    const double dev = std::abs(static_cast<double>(k) / static_cast<double>(l) - alpha);
    if (dev >= cutoff) p += binomial_pmf(l, k, alpha);
  }
  return std::min(p, 1.0);
}

double phase2_regret_exact(const BanditInstance& instance, const ProbeSet& probe, std::uint64_t l) {
  if (l == 0) throw std::invalid_argument("phase2_regret_exact: l must be >= 1");
  const std::size_t n = probe.size();
  if (std::pow(static_cast<double>(l + 1), static_cast<double>(n)) > kEnumerationBudget) {
    throw std::length_error("phase2_regret_exact: (l+1)^n exceeds the enumeration budget");
  }
  std::vector<std::vector<double>> pmf(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = instance.true_means()[static_cast<Eigen::Index>(probe.indices[i])];
    pmf[i].resize(l + 1);
    for (std::uint64_t k = 0; k <= l; ++k) pmf[i][k] = binomial_pmf(l, k, a);
  }

  std::vector<std::uint64_t> counts(n, 0);
  Eigen::VectorXd estimates(static_cast<Eigen::Index>(n));
  double expected = 0.0;
  const double epoch = static_cast<double>(l);
  while (true) {
    double prob = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      prob *= pmf[i][counts[i]];
      estimates[static_cast<Eigen::Index>(i)] = static_cast<double>(counts[i]) / epoch;
    }
    if (prob > 0.0) {
      const auto est = estimate_preference(probe, estimates);
      expected += prob * instance.regret(select_arm_finite(instance, est.z));
    }
    std::size_t d = 0;
    while (d < n && counts[d] == l) counts[d++] = 0;
    if (d == n) break;
    ++counts[d];
  }
  return expected;
}

}  // namespace tpb
