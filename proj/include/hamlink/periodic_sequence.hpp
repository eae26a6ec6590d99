#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hamlink {

/// Minimum admissible period. Smaller periods are rejected at construction.
inline constexpr long kMinPeriod = 5;

/**
 * An element of E_M: M real values with implicit period-M wraparound.
 *
 * Indices are 1-based externally; access at any integer n (including
 * n <= 0 and n > M) resolves to the representative in 1..M. Values are
 * immutable after construction, so sequences are safe to share across
 * threads.
 */
class PeriodicSequence {
public:
  explicit PeriodicSequence(std::vector<double> values)
      : values_(std::move(values)) {
    if (static_cast<long>(values_.size()) < kMinPeriod) {
      throw std::invalid_argument("PeriodicSequence: period must be >= 5");
    }
  }

  static PeriodicSequence zeros(long m) {
    return PeriodicSequence(std::vector<double>(check_period(m), 0.0));
  }

  static PeriodicSequence constant(long m, double c) {
    return PeriodicSequence(std::vector<double>(check_period(m), c));
  }

  /// Unit vector e_j (1-based j).
  static PeriodicSequence unit(long m, long j) {
    std::vector<double> v(check_period(m), 0.0);
    v[static_cast<std::size_t>(wrap_index(j, m))] = 1.0;
    return PeriodicSequence(std::move(v));
  }

  long period() const { return static_cast<long>(values_.size()); }

  /// u[n] for any integer n; u[n] == u[n + M] exactly.
  double operator[](long n) const {
    return values_[static_cast<std::size_t>(wrap_index(n, period()))];
  }

  const std::vector<double>& values() const { return values_; }

private:
  static long check_period(long m) {
    if (m < kMinPeriod) {
      throw std::invalid_argument("PeriodicSequence: period must be >= 5");
    }
    return m;
  }

  // 1-based n -> 0-based storage offset in [0, m).
  static long wrap_index(long n, long m) {
    long r = (n - 1) % m;
    return r < 0 ? r + m : r;
  }

  std::vector<double> values_;
};

/// (Δu)[n] = u[n+1] − u[n], with wraparound at the seam.
inline PeriodicSequence forward_difference(const PeriodicSequence& u) {
  const long m = u.period();
  std::vector<double> d(static_cast<std::size_t>(m));
  for (long n = 1; n <= m; ++n) {
    d[static_cast<std::size_t>(n - 1)] = u[n + 1] - u[n];
  }
  return PeriodicSequence(std::move(d));
}

/// Δ²u_{n−1} evaluated at position n: u[n+1] − 2u[n] + u[n−1].
inline PeriodicSequence second_difference(const PeriodicSequence& u) {
  const long m = u.period();
  std::vector<double> d(static_cast<std::size_t>(m));
  for (long n = 1; n <= m; ++n) {
    d[static_cast<std::size_t>(n - 1)] = u[n + 1] - 2.0 * u[n] + u[n - 1];
  }
  return PeriodicSequence(std::move(d));
}

}  // namespace hamlink
