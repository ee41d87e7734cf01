#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tpb/instance.hpp"
#include "tpb/policy.hpp"
#include "tpb/schedule.hpp"

namespace tpb {

class TheoryError : public std::runtime_error {
 public:
  enum class Code { DegenerateRegion, NonAdmissibleSchedule, InvalidArgument };
  TheoryError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

/// D(p || q) between Bernoulli distributions, with 0 log 0 = 0.
/// p in [0,1], q in (0,1); throws std::domain_error otherwise.
double kl_bernoulli(double p, double q);

struct RegionDelta {
  /// Half-width of the parallelotope {z : ||Sigma^T (z - z*)||_inf < delta}
  /// certified to select into V. +inf when every arm is in V, 0 on a tie.
  double value = 0.0;
  /// True when `value` is the largest such width. With uniform weights and
  /// |V| = 1 the closed form is exact; otherwise it is a certified lower bound.
  bool exact = false;
};

/// Uniform weights: delta = max_{v in V} min_{u not in V}
///   (v - u)^T z* / ||Sigma^{-1} (v - u)||_1.
/// Non-uniform weights: for each pair the largest delta with
///   w_v f(v^T z* - delta ||Sigma^{-1} v||_1) >= w_u f(u^T z* + delta ||Sigma^{-1} u||_1),
/// found by bisection.
RegionDelta compute_region_delta(const BanditInstance& instance, const ProbeSet& probe);

struct TheoryConstants {
  std::size_t dimension = 0;
  double best_value = 0.0;  ///< w_V alpha*_V
  double delta = 0.0;
  bool delta_exact = false;
  std::vector<double> alpha_lower;  ///< f(f^{-1}(alpha*_u) - delta), per probe arm
  std::vector<double> alpha_upper;  ///< f(f^{-1}(alpha*_u) + delta), per probe arm
  double gamma = 0.0;
  double k1 = 0.0;
  std::uint64_t L_prime = 0;
  double k2 = 0.0;
  double k3 = 0.0;
};

inline constexpr std::uint64_t kLPrimeQuietWindow = 64;
inline constexpr std::uint64_t kLPrimeScanCap = 1'000'000;

/// k1 = 2 f(-max_{u in Sigma} ||u|| * ||z*||)
double bad_epoch_rate(const ProbeSet& probe, const Eigen::VectorXd& preference);

/// k3 = (16 / pi^2) ||z*|| f'(2 ||z*||)^2
double sphere_rate(double preference_norm);

/// [e^{-gamma l} + e^{-k1 l}] g(l), evaluated in log space.
double lprime_term(double gamma, double k1, const Schedule& schedule, std::uint64_t l);

/// Fills every constant of the finite-arm analysis. Throws TheoryError when
/// delta = 0 (gamma undefined) or when the L' term has not settled below 1/2
/// for 64 consecutive epochs within 10^6 epochs.
TheoryConstants compute_constants(const BanditInstance& instance, const ProbeSet& probe,
                                  const Schedule& schedule);

/// Constants of the unit-sphere analysis with probes e_1..e_n.
struct SphereConstants {
  std::size_t dimension = 0;
  double preference_norm = 0.0;
  double best_value = 0.0;  ///< f(||z*||)
  double k1 = 0.0;
  double k3 = 0.0;
};
SphereConstants compute_sphere_constants(const SphereInstance& instance);

/// min(1, 2n e^{-k1 l})
double bad_epoch_bound(double k1, std::size_t n, std::uint64_t l);

/// 2 w_V alpha*_V n (k2 + g^{-1}(T) + 1)
double bound_finite(const TheoryConstants& constants, const Schedule& schedule, std::uint64_t horizon);

/// sum_{l >= 1} l e^{-k1 l} = e^{-k1} / (1 - e^{-k1})^2
double geometric_tail(double k1);

/// (alpha*_V + 2/k3)(sqrt(2 n^3 T) + n) + 2 e^{-k1} / (1 - e^{-k1})^2.
/// Throws TheoryError for n < 2 or non-positive rates.
double bound_infinite(double best_value, double k1, double k3, std::size_t n, double horizon);
double bound_infinite(const SphereConstants& constants, std::uint64_t horizon);

/// Central angle between z_hat and z*, pi when z_hat = 0. Throws
/// TheoryError when z* = 0.
double central_angle(const Eigen::VectorXd& z_hat, const Eigen::VectorXd& z_star);

/// Numerical evaluation of the three implications linking sphere regret,
/// central angle, coordinate deviation of z_hat and deviation of alpha_hat.
struct LemmaChainReport {
  double theta = 0.0;
  double regret = 0.0;           ///< f(||z*||) - f(cos(theta) ||z*||)
  double angle_threshold = 0.0;  ///< sqrt(8 delta / ||z*||)

  // (i) regret > delta  =>  theta > angle_threshold
  bool regret_exceeds = false;
  bool regret_to_angle_holds = true;

  // (ii) theta > angle_threshold  =>  max_i |z_hat_i - z*_i| >= angle_threshold / (pi sqrt n) ||z*||
  bool angle_exceeds = false;
  double coordinate_deviation = 0.0;
  double required_deviation = 0.0;
  bool angle_to_deviation_holds = true;

  // (iii) |z_hat_i - z*_i| >= delta2 ||z*||  =>  |f(z_hat_i) - f(z*_i)| >= delta2 ||z*|| f'(2 ||z*||)
  double delta2 = 0.0;
  double alpha_deviation = 0.0;
  double alpha_deviation_bound = 0.0;
  bool deviation_to_alpha_holds = true;

  bool consistent() const {
    return regret_to_angle_holds && angle_to_deviation_holds && deviation_to_alpha_holds;
  }
};

/// Probes are the standard basis. Requires z* != 0 and delta in (0, 1].
LemmaChainReport lemma_chain_check(const Eigen::VectorXd& z_hat, const Eigen::VectorXd& z_star,
                                   double delta);

}  // namespace tpb
