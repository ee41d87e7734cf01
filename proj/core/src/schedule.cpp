#include "tpb/schedule.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tpb/link.hpp"

namespace tpb {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
constexpr double kExactLimit = 9007199254740992.0;  // 2^53

// Natural log of the tower boundaries E_0 = 1, E_1 = e, E_2 = e^e, ...
// The iterated log of t equals k exactly when log t lies in
// (kLogTower[k-1], kLogTower[k]].
const std::array<double, 6>& log_tower() {
  static const std::array<double, 6> tower = [] {
    std::array<double, 6> v{};
    v[0] = 0.0;
    for (std::size_t k = 1; k < v.size(); ++k) {
      v[k] = std::exp(v[k - 1]);
    }
    return v;
  }();
  return tower;
}

// Largest log t (continuous) with log(t) * log*(t) <= l.
double lls_log_bound(double l) {
  const auto& tower = log_tower();
  double best = 0.0;  // t = 1 always qualifies
  for (std::size_t k = 1; k < tower.size(); ++k) {
    const double lo = tower[k - 1];
    const double cap = l / static_cast<double>(k);
    if (lo >= cap) break;
    best = std::max(best, std::min(cap, tower[k]));
  }
  return best;
}

std::uint64_t lls_g(std::uint64_t l) {
  const double level = static_cast<double>(l);
  const double log_bound = lls_log_bound(level);
  const double approx = std::exp(log_bound);
  if (approx >= 18446744073709551615.0) return kSaturated;
  auto t = static_cast<std::uint64_t>(std::floor(approx));
  if (t < 1) t = 1;
  if (approx < kExactLimit) {
    while (t > 1 && lls_level(t) > level) --t;
    while (lls_level(t + 1) <= level) ++t;
  }
  return t;
}

std::uint64_t saturating_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > kSaturated / base) return kSaturated;
    r *= base;
  }
  return r;
}

}  // namespace

double lls_level(std::uint64_t t) {
  if (t <= 1) return 0.0;
  const double x = static_cast<double>(t);
  return std::log(x) * iterated_log(x);
}

std::uint64_t lls_inverse_closed_form(std::uint64_t t) {
  return static_cast<std::uint64_t>(std::floor(lls_level(t)));
}

Schedule Schedule::lls() { return Schedule(ScheduleKind::Lls, 0); }

Schedule Schedule::linear_over_n(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("linear_over_n: n must be positive");
  return Schedule(ScheduleKind::LinearOverN, n);
}

Schedule Schedule::poly(unsigned degree) {
  if (degree == 0) throw std::invalid_argument("poly: degree must be >= 1 (g must be unbounded)");
  return Schedule(ScheduleKind::Poly, degree);
}

Schedule Schedule::custom(std::vector<std::uint64_t> table) {
  if (table.empty()) throw std::invalid_argument("custom schedule: empty table");
  for (std::size_t i = 1; i < table.size(); ++i) {
    if (table[i] < table[i - 1]) {
      throw std::invalid_argument("custom schedule: table must be non-decreasing");
    }
  }
  return Schedule(ScheduleKind::Custom, 0, std::move(table));
}

std::uint64_t Schedule::g(std::uint64_t l) const {
  if (l == 0) throw std::invalid_argument("schedule: epoch index must be >= 1");
  switch (kind_) {
    case ScheduleKind::Lls:
      return lls_g(l);
    case ScheduleKind::LinearOverN:
      return l / param_;
    case ScheduleKind::Poly:
      return saturating_pow(l, static_cast<unsigned>(param_));
    case ScheduleKind::Custom: {
      if (l <= table_.size()) return table_[l - 1];
      const std::uint64_t extra = l - table_.size();
      const std::uint64_t last = table_.back();
      return last > kSaturated - extra ? kSaturated : last + extra;
    }
  }
  throw std::logic_error("schedule: unknown kind");
}

double Schedule::log_g(std::uint64_t l) const {
  if (l == 0) throw std::invalid_argument("schedule: epoch index must be >= 1");
  switch (kind_) {
    case ScheduleKind::Lls: {
      const double bound = lls_log_bound(static_cast<double>(l));
      if (std::exp(bound) < kExactLimit) return std::log(static_cast<double>(lls_g(l)));
      return bound;
    }
    case ScheduleKind::Poly:
      return static_cast<double>(param_) * std::log(static_cast<double>(l));
    case ScheduleKind::LinearOverN:
    case ScheduleKind::Custom: {
      const std::uint64_t v = g(l);
      return v == 0 ? -std::numeric_limits<double>::infinity() : std::log(static_cast<double>(v));
    }
  }
  throw std::logic_error("schedule: unknown kind");
}

std::uint64_t Schedule::g_inverse(std::uint64_t t) const {
  if (g(1) > t) return 1;
  if (t == kSaturated) throw std::overflow_error("schedule: g_inverse argument saturates g");
  // g(lo) <= t < g(hi)
  std::uint64_t lo = 1;
  std::uint64_t hi = 2;
  while (g(hi) <= t) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (g(mid) <= t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::string Schedule::describe() const {
  switch (kind_) {
    case ScheduleKind::Lls:
      return "lls";
    case ScheduleKind::LinearOverN:
      return "linear_over_n(" + std::to_string(param_) + ")";
    case ScheduleKind::Poly:
      return "poly:" + std::to_string(param_);
    case ScheduleKind::Custom:
      return "custom[" + std::to_string(table_.size()) + "]";
  }
  return "?";
}

}  // namespace tpb
