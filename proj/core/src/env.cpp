#include "tpb/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tpb/link.hpp"

namespace tpb {

double pull(const BanditInstance& instance, std::size_t arm, RewardStream& stream) {
  if (arm >= instance.arm_count()) {
    throw std::out_of_range("pull: arm index " + std::to_string(arm) + " out of range");
  }
  const auto j = static_cast<Eigen::Index>(arm);
  return stream.bernoulli(instance.true_means()[j]) ? instance.weights()[j] : 0.0;
}

double sphere_success_probability(const SphereInstance& instance, const Eigen::VectorXd& arm) {
  if (static_cast<std::size_t>(arm.size()) != instance.dimension()) {
    throw std::invalid_argument("sphere arm: dimension mismatch");
  }
  if (!arm.allFinite() || std::abs(arm.norm() - 1.0) > kUnitTolerance) {
    throw std::invalid_argument("sphere arm: not a unit vector");
  }
  return logistic(arm.dot(instance.preference()));
}

double pull_sphere(const SphereInstance& instance, const Eigen::VectorXd& arm, RewardStream& stream) {
  return stream.bernoulli(sphere_success_probability(instance, arm)) ? 1.0 : 0.0;
}

double sphere_regret(const SphereInstance& instance, const Eigen::VectorXd& arm) {
  return std::max(0.0, instance.best_value() - sphere_success_probability(instance, arm));
}

}  // namespace tpb
