#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "tpb/instance.hpp"
#include "tpb/rng.hpp"

namespace tpb {

/// Returns w_arm with probability alpha*_arm, else 0. Consumes exactly one
/// draw. Throws std::out_of_range for an invalid arm index.
double pull(const BanditInstance& instance, std::size_t arm, RewardStream& stream);

/// Tolerance on ||arm|| - 1 accepted by pull_sphere.
inline constexpr double kUnitTolerance = 1e-9;

/// Bernoulli reward with success probability f(arm^T z*). Consumes exactly one
/// draw. Throws std::invalid_argument when arm is not a unit vector of the
/// instance dimension.
double pull_sphere(const SphereInstance& instance, const Eigen::VectorXd& arm, RewardStream& stream);

/// Success probability f(arm^T z*) of a sphere arm.
double sphere_success_probability(const SphereInstance& instance, const Eigen::VectorXd& arm);

/// Pseudo-regret f(||z*||) - f(arm^T z*), floored at zero to absorb rounding
/// when arm is the normalized preference itself.
double sphere_regret(const SphereInstance& instance, const Eigen::VectorXd& arm);

}  // namespace tpb
