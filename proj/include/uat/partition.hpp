#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace uat {

/// N+2 equally spaced points covering [a - h, b] with h = (b-a)/N:
/// points[k] = a + (k-1) h, so points[0] = a - h, points[1] = a, points[N+1] = b.
class UniformPartition {
 public:
  UniformPartition(double a, double b, std::size_t n_intervals);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double h() const noexcept { return h_; }
  std::size_t n_intervals() const noexcept { return n_; }
  std::span<const double> points() const noexcept { return points_; }
  double operator[](std::size_t k) const { return points_[k]; }

  /// Largest i in {1..N} with points[i] <= x, so x lies in [points[i], points[i+1]].
  /// Throws InvalidArgument for x outside [a, b].
  std::size_t select_index(double x) const;

 private:
  double a_;
  double b_;
  double h_;
  std::size_t n_;
  std::vector<double> points_;
};

inline UniformPartition unif_part(double a, double b, std::size_t n) { return {a, b, n}; }

inline std::size_t select_index(const UniformPartition& p, double x) { return p.select_index(x); }

}  // namespace uat
