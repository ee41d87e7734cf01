#include "tpb/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tpb/link.hpp"

namespace tpb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double shifted_mean(double beta, double shift) {
  const double x = beta + shift;
  if (x == kInf) return 1.0;
  if (x == -kInf) return 0.0;
  return logistic(x);
}

// Largest delta >= 0 with
//   log w_v + log f(beta_v - a delta) >= log w_u + log f(beta_u + b delta).
double weighted_pair_delta(double log_wv, double beta_v, double a, double log_wu, double beta_u,
                           double b) {
  auto margin = [&](double d) {
    return (log_wv + log_logistic(beta_v - a * d)) - (log_wu + log_logistic(beta_u + b * d));
  };
  if (margin(0.0) <= 0.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (margin(hi) >= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) return kInf;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (margin(mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

double kl_bernoulli(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("kl_bernoulli: p outside [0,1]");
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("kl_bernoulli: q outside (0,1)");
  double d = 0.0;
  if (p > 0.0) d += p * std::log(p / q);
  if (p < 1.0) d += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  return std::max(d, 0.0);
}

RegionDelta compute_region_delta(const BanditInstance& instance, const ProbeSet& probe) {
  const auto& best = instance.best_set();
  const std::size_t m = instance.arm_count();
  if (best.size() == m) return {kInf, true};

  Eigen::PartialPivLU<Eigen::MatrixXd> sigma_lu(probe.matrix);
  const Eigen::MatrixXd& arms = instance.arms();
  const Eigen::VectorXd& beta = instance.qualities();

  RegionDelta out;
  out.value = 0.0;
  out.exact = instance.uniform_weights() && best.size() == 1;

  if (instance.uniform_weights()) {
    for (const std::size_t v : best) {
      double dv = kInf;
      for (std::size_t u = 0; u < m; ++u) {
        if (instance.is_best(u)) continue;
        const auto vi = static_cast<Eigen::Index>(v);
        const auto ui = static_cast<Eigen::Index>(u);
        const Eigen::VectorXd coeffs = sigma_lu.solve(Eigen::VectorXd(arms.col(vi) - arms.col(ui)));
        const double gap = beta[vi] - beta[ui];
        dv = std::min(dv, std::max(gap, 0.0) / coeffs.lpNorm<1>());
      }
      out.value = std::max(out.value, dv);
    }
    return out;
  }

  const Eigen::VectorXd& w = instance.weights();
  for (const std::size_t v : best) {
    const auto vi = static_cast<Eigen::Index>(v);
    const double a = sigma_lu.solve(Eigen::VectorXd(arms.col(vi))).lpNorm<1>();
    double dv = kInf;
    for (std::size_t u = 0; u < m; ++u) {
      if (instance.is_best(u)) continue;
      const auto ui = static_cast<Eigen::Index>(u);
      const double b = sigma_lu.solve(Eigen::VectorXd(arms.col(ui))).lpNorm<1>();
      dv = std::min(dv, weighted_pair_delta(std::log(w[vi]), beta[vi], a, std::log(w[ui]), beta[ui], b));
    }
    out.value = std::max(out.value, dv);
  }
  return out;
}

double bad_epoch_rate(const ProbeSet& probe, const Eigen::VectorXd& preference) {
  const double max_norm = probe.matrix.colwise().norm().maxCoeff();
  return 2.0 * logistic(-max_norm * preference.norm());
}

double sphere_rate(double preference_norm) {
  const double slope = logistic_derivative(2.0 * preference_norm);
  return 16.0 / (std::numbers::pi * std::numbers::pi) * preference_norm * slope * slope;
}

double lprime_term(double gamma, double k1, const Schedule& schedule, std::uint64_t l) {
  const double log_g = schedule.log_g(l);
  if (log_g == -kInf) return 0.0;
  const double x = static_cast<double>(l);
  const double lo = std::min(gamma, k1);
  const double hi = std::max(gamma, k1);
  const double log_term = log_g - lo * x + std::log1p(std::exp(-(hi - lo) * x));
  return std::exp(log_term);
}

TheoryConstants compute_constants(const BanditInstance& instance, const ProbeSet& probe,
                                  const Schedule& schedule) {
  TheoryConstants c;
  c.dimension = instance.dimension();
  c.best_value = instance.best_value();

  const RegionDelta region = compute_region_delta(instance, probe);
  c.delta = region.value;
  c.delta_exact = region.exact;
  if (!(c.delta > 0.0)) {
    throw TheoryError(TheoryError::Code::DegenerateRegion,
                      "region half-width delta is 0: a non-best arm ties the best arm, so gamma is "
                      "undefined; perturb the preference vector or the arm set");
  }

  c.gamma = kInf;
  for (const std::size_t idx : probe.indices) {
    const double beta = instance.qualities()[static_cast<Eigen::Index>(idx)];
    const double mean = instance.true_means()[static_cast<Eigen::Index>(idx)];
    const double lower = shifted_mean(beta, -c.delta);
    const double upper = shifted_mean(beta, c.delta);
    c.alpha_lower.push_back(lower);
    c.alpha_upper.push_back(upper);
    c.gamma = std::min({c.gamma, kl_bernoulli(lower, mean), kl_bernoulli(upper, mean)});
  }

  c.k1 = bad_epoch_rate(probe, instance.preference());
  c.k3 = sphere_rate(instance.preference().norm());

  // The term need not be monotone, so scan until it stays <= 1/2 for a full
  // quiet window.
  std::uint64_t last_above = 0;
  std::uint64_t quiet = 0;
  std::uint64_t l = 1;
  for (; l <= kLPrimeScanCap && quiet < kLPrimeQuietWindow; ++l) {
    if (lprime_term(c.gamma, c.k1, schedule, l) > 0.5) {
      last_above = l;
      quiet = 0;
    } else {
      ++quiet;
    }
  }
  if (quiet < kLPrimeQuietWindow) {
    throw TheoryError(TheoryError::Code::NonAdmissibleSchedule,
                      "schedule " + schedule.describe() + " is not admissible for gamma=" +
                          std::to_string(c.gamma) + ", k1=" + std::to_string(c.k1) +
                          ": [e^{-gamma l} + e^{-k1 l}] g(l) does not settle below 1/2 within " +
                          std::to_string(kLPrimeScanCap) + " epochs");
  }
  c.L_prime = last_above;
  c.k2 = 0.0;
  for (std::uint64_t j = 1; j <= c.L_prime; ++j) c.k2 += lprime_term(c.gamma, c.k1, schedule, j);
  return c;
}

SphereConstants compute_sphere_constants(const SphereInstance& instance) {
  SphereConstants c;
  c.dimension = instance.dimension();
  c.preference_norm = instance.preference_norm();
  c.best_value = instance.best_value();
  c.k1 = 2.0 * logistic(-c.preference_norm);  // probes are unit vectors
  c.k3 = sphere_rate(c.preference_norm);
  return c;
}

double bad_epoch_bound(double k1, std::size_t n, std::uint64_t l) {
  return std::min(1.0, 2.0 * static_cast<double>(n) * std::exp(-k1 * static_cast<double>(l)));
}

double bound_finite(const TheoryConstants& constants, const Schedule& schedule, std::uint64_t horizon) {
  const double epochs = static_cast<double>(schedule.g_inverse(horizon));
  return 2.0 * constants.best_value * static_cast<double>(constants.dimension) *
         (constants.k2 + epochs + 1.0);
}

double geometric_tail(double k1) {
  const double r = std::exp(-k1);
  const double denom = -std::expm1(-k1);
  return r / (denom * denom);
}

double bound_infinite(double best_value, double k1, double k3, std::size_t n, double horizon) {
  if (n < 2) {
    throw TheoryError(TheoryError::Code::InvalidArgument,
                      "bound_infinite: the unit-sphere analysis needs n >= 2");
  }
  if (!(k1 > 0.0) || !(k3 > 0.0)) {
    throw TheoryError(TheoryError::Code::InvalidArgument, "bound_infinite: k1 and k3 must be positive");
  }
  const double dim = static_cast<double>(n);
  return (best_value + 2.0 / k3) * (std::sqrt(2.0 * dim * dim * dim * horizon) + dim) +
         2.0 * geometric_tail(k1);
}

double bound_infinite(const SphereConstants& constants, std::uint64_t horizon) {
  return bound_infinite(constants.best_value, constants.k1, constants.k3, constants.dimension,
                        static_cast<double>(horizon));
}

double central_angle(const Eigen::VectorXd& z_hat, const Eigen::VectorXd& z_star) {
  const double star_norm = z_star.norm();
  if (!(star_norm > 0.0)) {
    throw TheoryError(TheoryError::Code::InvalidArgument, "central_angle: z* must be nonzero");
  }
  if (z_hat.size() != z_star.size()) {
    throw TheoryError(TheoryError::Code::InvalidArgument, "central_angle: dimension mismatch");
  }
  const double hat_norm = z_hat.norm();
  if (hat_norm == 0.0) return std::numbers::pi;
  const double cosine = std::clamp(z_hat.dot(z_star) / (hat_norm * star_norm), -1.0, 1.0);
  return std::acos(cosine);
}

LemmaChainReport lemma_chain_check(const Eigen::VectorXd& z_hat, const Eigen::VectorXd& z_star,
                                   double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw TheoryError(TheoryError::Code::InvalidArgument, "lemma_chain_check: delta must lie in (0,1]");
  }
  LemmaChainReport r;
  const double norm = z_star.norm();
  const double n = static_cast<double>(z_star.size());
  r.theta = central_angle(z_hat, z_star);
  r.regret = logistic(norm) - logistic(std::cos(r.theta) * norm);
  r.angle_threshold = std::sqrt(8.0 * delta / norm);

  r.regret_exceeds = r.regret > delta;
  r.angle_exceeds = r.theta > r.angle_threshold;
  r.regret_to_angle_holds = !r.regret_exceeds || r.angle_exceeds;

  const Eigen::VectorXd diff = (z_hat - z_star).cwiseAbs();
  Eigen::Index worst = 0;
  r.coordinate_deviation = diff.maxCoeff(&worst);
  r.required_deviation = r.angle_threshold / (std::numbers::pi * std::sqrt(n)) * norm;
  r.angle_to_deviation_holds = !r.angle_exceeds || r.coordinate_deviation >= r.required_deviation;

  r.delta2 = std::min(1.0, r.coordinate_deviation / norm);
  if (r.delta2 > 0.0) {
    r.alpha_deviation = std::abs(logistic(z_hat[worst]) - logistic(z_star[worst]));
    r.alpha_deviation_bound = r.delta2 * norm * logistic_derivative(2.0 * norm);
    r.deviation_to_alpha_holds = r.alpha_deviation >= r.alpha_deviation_bound;
  }
  return r;
}

}  // namespace tpb
