#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tpb {

enum class ScheduleKind { Lls, LinearOverN, Poly, Custom };

/// Exploitation-length function g: epoch index l >= 1 -> Phase-2 length,
/// together with its extended inverse
///   g_inverse(t) = max({1} U {l >= 1 : g(l) <= t}).
///
/// Every schedule is non-decreasing and unbounded. Strict monotonicity is not
/// required: floor(l/n) is constant over runs of n epochs, and g_LLS has
/// plateaus where the iterated logarithm steps up.
class Schedule {
 public:
  /// g(l) = max{t >= 1 : log(t) * log*(t) <= l}, natural logarithms.
  static Schedule lls();
  /// g(l) = floor(l / n).
  static Schedule linear_over_n(std::uint64_t n);
  /// g(l) = l^degree, degree >= 1.
  static Schedule poly(unsigned degree);
  /// g(l) = table[l-1] for l <= size; past the table g grows by one per epoch
  /// so the schedule stays unbounded. The table must be non-decreasing.
  static Schedule custom(std::vector<std::uint64_t> table);

  ScheduleKind kind() const { return kind_; }
  std::uint64_t parameter() const { return param_; }
  const std::vector<std::uint64_t>& table() const { return table_; }

  /// Saturates at UINT64_MAX. Throws std::invalid_argument for l == 0.
  std::uint64_t g(std::uint64_t l) const;

  /// Natural log of g(l) without saturation (-inf when g(l) == 0). Exact up to
  /// rounding while g(l) < 2^53; past that the floor is ignored.
  double log_g(std::uint64_t l) const;

  /// Extended inverse; always >= 1.
  std::uint64_t g_inverse(std::uint64_t t) const;

  std::string describe() const;

 private:
  Schedule(ScheduleKind kind, std::uint64_t param, std::vector<std::uint64_t> table = {})
      : kind_(kind), param_(param), table_(std::move(table)) {}

  ScheduleKind kind_;
  std::uint64_t param_;
  std::vector<std::uint64_t> table_;
};

/// log(t) * log*(t), the function whose sublevel sets define g_LLS.
double lls_level(std::uint64_t t);

/// Closed form floor(log(t) * log*(t)) from the g_LLS corollary; t >= 1.
std::uint64_t lls_inverse_closed_form(std::uint64_t t);

}  // namespace tpb
