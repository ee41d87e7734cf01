#include "tpb/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tpb/link.hpp"
#include "tpb/rng.hpp"

namespace tpb {

namespace {

// f(beta) is representable strictly inside (0,1) for beta up to about 36.7.
constexpr double kMaxQuality = 36.0;

Eigen::Index matrix_rank(const Eigen::MatrixXd& m) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  return qr.rank();
}

Eigen::VectorXd gaussian_vector(RewardStream& rng, std::size_t n) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.normal();
  return v;
}

}  // namespace

BanditInstance::BanditInstance(Eigen::MatrixXd arms, Eigen::VectorXd preference,
                               Eigen::VectorXd weights)
    : arms_(std::move(arms)), preference_(std::move(preference)), weights_(std::move(weights)) {
  const Eigen::Index n = arms_.rows();
  const Eigen::Index m = arms_.cols();
  if (n == 0 || m == 0) throw std::invalid_argument("instance: empty arm matrix");
  if (preference_.size() != n) {
    throw std::invalid_argument("instance: preference has " + std::to_string(preference_.size()) +
                                " entries, arms have dimension " + std::to_string(n));
  }
  if (m < n) throw std::invalid_argument("instance: need at least n arms (m >= n)");
  if (!arms_.allFinite() || !preference_.allFinite()) {
    throw std::invalid_argument("instance: non-finite arm or preference entry");
  }
  if (matrix_rank(arms_) != n) throw std::invalid_argument("instance: arm matrix is not full rank");

  if (weights_.size() == 0) weights_ = Eigen::VectorXd::Ones(m);
  if (weights_.size() != m) throw std::invalid_argument("instance: one weight per arm required");
  for (Eigen::Index j = 0; j < m; ++j) {
    if (!(weights_[j] > 0.0) || !std::isfinite(weights_[j])) {
      throw std::invalid_argument("instance: weights must be finite and strictly positive");
    }
  }
  uniform_weights_ = (weights_.array() == weights_[0]).all();

  qualities_ = arms_.transpose() * preference_;
  if (qualities_.cwiseAbs().maxCoeff() > kMaxQuality) {
    throw std::invalid_argument("instance: |u^T z*| exceeds 36, success probability rounds to 0/1");
  }
  true_means_.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) true_means_[j] = logistic(qualities_[j]);
  expected_rewards_ = weights_.cwiseProduct(true_means_);

  best_value_ = expected_rewards_.maxCoeff();
  for (Eigen::Index j = 0; j < m; ++j) {
    if (expected_rewards_[j] == best_value_) best_set_.push_back(static_cast<std::size_t>(j));
  }
  regrets_ = (Eigen::VectorXd::Constant(m, best_value_) - expected_rewards_).cwiseMax(0.0);
}

bool BanditInstance::is_best(std::size_t arm) const {
  return std::binary_search(best_set_.begin(), best_set_.end(), arm);
}

SphereInstance::SphereInstance(Eigen::VectorXd preference) : preference_(std::move(preference)) {
  if (preference_.size() < 2) throw std::invalid_argument("sphere: dimension must be >= 2");
  if (!preference_.allFinite()) throw std::invalid_argument("sphere: non-finite preference");
  norm_ = preference_.norm();
  if (!(norm_ > 0.0)) throw std::invalid_argument("sphere: preference must be nonzero");
  if (norm_ > kMaxQuality) throw std::invalid_argument("sphere: ||z*|| exceeds 36");
  best_value_ = logistic(norm_);
}

Eigen::MatrixXd SphereInstance::probe_arms() const {
  const auto n = static_cast<Eigen::Index>(dimension());
  return Eigen::MatrixXd::Identity(n, n);
}

BanditInstance random_instance(std::size_t n, std::size_t m, std::uint64_t seed,
                               double preference_norm) {
  if (n == 0 || m < n) throw std::invalid_argument("random_instance: need 1 <= n <= m");
  if (!(preference_norm > 0.0)) throw std::invalid_argument("random_instance: norm must be > 0");
  RewardStream rng(seed);
  Eigen::MatrixXd arms(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  do {
    for (Eigen::Index j = 0; j < arms.cols(); ++j) arms.col(j) = gaussian_vector(rng, n);
  } while (matrix_rank(arms) != static_cast<Eigen::Index>(n));
  Eigen::VectorXd z = gaussian_vector(rng, n);
  z *= preference_norm / z.norm();
  return BanditInstance(std::move(arms), std::move(z));
}

SphereInstance random_sphere_instance(std::size_t n, std::uint64_t seed, double preference_norm) {
  if (!(preference_norm > 0.0)) throw std::invalid_argument("random_sphere_instance: norm must be > 0");
  RewardStream rng(seed);
  Eigen::VectorXd z = gaussian_vector(rng, n);
  z *= preference_norm / z.norm();
  return SphereInstance(std::move(z));
}

}  // namespace tpb
