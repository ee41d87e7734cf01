#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace tpb {

/// Finite-arm problem: arms are the columns of an n x m matrix U, the reward
/// of arm u is w_u * Ber(f(u^T z*)).
class BanditInstance {
 public:
  /// Empty `weights` means all ones. Throws std::invalid_argument when
  /// rank(U) < n, m < n, a weight is not strictly positive, or an arm quality
  /// is so large that f(u^T z*) rounds to 0 or 1.
  BanditInstance(Eigen::MatrixXd arms, Eigen::VectorXd preference,
                 Eigen::VectorXd weights = Eigen::VectorXd());

  std::size_t dimension() const { return static_cast<std::size_t>(arms_.rows()); }
  std::size_t arm_count() const { return static_cast<std::size_t>(arms_.cols()); }

  const Eigen::MatrixXd& arms() const { return arms_; }
  const Eigen::VectorXd& preference() const { return preference_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  bool uniform_weights() const { return uniform_weights_; }

  /// beta_u = u^T z*
  const Eigen::VectorXd& qualities() const { return qualities_; }
  /// alpha*_u = f(beta_u)
  const Eigen::VectorXd& true_means() const { return true_means_; }
  /// w_u alpha*_u
  const Eigen::VectorXd& expected_rewards() const { return expected_rewards_; }
  /// V, ascending arm indices.
  const std::vector<std::size_t>& best_set() const { return best_set_; }
  /// w_V alpha*_V
  double best_value() const { return best_value_; }

  bool is_best(std::size_t arm) const;
  /// w_V alpha*_V - w_u alpha*_u, exactly 0 for arms in V.
  double regret(std::size_t arm) const { return regrets_[static_cast<Eigen::Index>(arm)]; }
  const Eigen::VectorXd& regrets() const { return regrets_; }

 private:
  Eigen::MatrixXd arms_;
  Eigen::VectorXd preference_;
  Eigen::VectorXd weights_;
  bool uniform_weights_ = true;
  Eigen::VectorXd qualities_;
  Eigen::VectorXd true_means_;
  Eigen::VectorXd expected_rewards_;
  Eigen::VectorXd regrets_;
  std::vector<std::size_t> best_set_;
  double best_value_ = 0.0;
};

/// Every unit vector in R^n is an arm; the standard basis serves as probes.
class SphereInstance {
 public:
  /// Throws std::invalid_argument when n < 2 or z* = 0.
  explicit SphereInstance(Eigen::VectorXd preference);

  std::size_t dimension() const { return static_cast<std::size_t>(preference_.size()); }
  const Eigen::VectorXd& preference() const { return preference_; }
  double preference_norm() const { return norm_; }
  /// n x n identity.
  Eigen::MatrixXd probe_arms() const;
  /// f(||z*||), reward of the best arm z*/||z*||.
  double best_value() const { return best_value_; }

 private:
  Eigen::VectorXd preference_;
  double norm_ = 0.0;
  double best_value_ = 0.0;
};

/// Gaussian arm matrix (redrawn until full rank) and a Gaussian preference
/// direction scaled to `preference_norm`. Unit weights.
BanditInstance random_instance(std::size_t n, std::size_t m, std::uint64_t seed,
                               double preference_norm);

/// Uniformly random preference direction scaled to `preference_norm`.
SphereInstance random_sphere_instance(std::size_t n, std::uint64_t seed, double preference_norm);

}  // namespace tpb
