#include "tpb/link.hpp"

#include <cmath>
#include <stdexcept>

namespace tpb {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::domain_error(std::string(what) + ": non-finite argument");
  }
}

}  // namespace

double logistic(double beta) {
  require_finite(beta, "logistic");
  if (beta >= 0.0) {
    return 1.0 / (1.0 + std::exp(-beta));
  }
  const double e = std::exp(beta);
  return e / (1.0 + e);
}

double logit(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("logit: probability outside (0,1)");
  }
  return std::log(p) - std::log1p(-p);
}

double logistic_derivative(double beta) {
  require_finite(beta, "logistic_derivative");
  // f(b) f(-b) avoids the cancellation in f(b)(1 - f(b)) for large |b|.
  return logistic(beta) * logistic(-beta);
}

double log_logistic(double beta) {
  require_finite(beta, "log_logistic");
  // log f(b) = -softplus(-b)
  if (beta >= 0.0) {
    return -std::log1p(std::exp(-beta));
  }
  return beta - std::log1p(std::exp(beta));
}

int iterated_log(double x) {
  if (std::isnan(x)) {
    throw std::domain_error("iterated_log: NaN argument");
  }
  if (std::isinf(x)) {
    throw std::domain_error("iterated_log: infinite argument");
  }
  int count = 0;
  while (x > 1.0) {
    x = std::log(x);
    ++count;
  }
  return count;
}

}  // namespace tpb
