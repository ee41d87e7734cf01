#pragma once

// Logistic link between arm quality and Bernoulli success probability,
// plus the iterated logarithm used by the near-logarithmic schedule.

namespace tpb {

/// f(beta) = 1 / (1 + exp(-beta)). Throws std::domain_error on non-finite input.
double logistic(double beta);

/// Inverse of the logistic link. p must lie strictly inside (0, 1); values on
/// or outside the boundary throw std::domain_error and are never clamped,
/// since (0,1)-membership is exactly the good-epoch predicate.
double logit(double p);

/// f'(beta) = f(beta) (1 - f(beta)); maximal value 1/4 at beta = 0.
double logistic_derivative(double beta);

/// log f(beta), accurate in both tails.
double log_logistic(double beta);

/// Number of natural-log applications needed to bring x to a value <= 1.
int iterated_log(double x);

}  // namespace tpb
