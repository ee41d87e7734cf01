#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "tpb/instance.hpp"
#include "tpb/policy.hpp"

namespace tpb {

/// Largest lattice (l + 1)^n that phase2_regret_exact will enumerate.
inline constexpr double kEnumerationBudget = 1e6;

/// P(epoch l is bad) = 1 - prod_u (1 - alpha_u^l - (1 - alpha_u)^l): after l
/// pulls the estimate of arm u leaves (0,1) iff all l outcomes agree.
double bad_epoch_probability_exact(const Eigen::VectorXd& probe_means, std::uint64_t l);
double bad_epoch_probability_exact(const BanditInstance& instance, const ProbeSet& probe, std::uint64_t l);

/// Binomial(l, alpha) probability mass at k.
double binomial_pmf(std::uint64_t l, std::uint64_t k, double alpha);

/// Exact P(|K/l - alpha| >= threshold) for K ~ Binomial(l, alpha). Outcomes
/// within 1e-12 (relative) of the threshold are counted as deviations.
double binomial_deviation_probability(double alpha, std::uint64_t l, double threshold);

/// Exact E[r_{2,l}]: sums the pseudo-regret of the Phase-2 arm over every
/// count vector (q_u) in {0..l}^n weighted by its product-binomial
/// probability. Throws std::length_error when (l+1)^n exceeds the budget.
double phase2_regret_exact(const BanditInstance& instance, const ProbeSet& probe, std::uint64_t l);

}  // namespace tpb
