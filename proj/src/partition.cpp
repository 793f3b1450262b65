#include "uat/partition.hpp"

#include <cmath>

#include "uat/error.hpp"

namespace uat {

UniformPartition::UniformPartition(double a, double b, std::size_t n_intervals)
    : a_(a), b_(b), h_(0.0), n_(n_intervals) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw InvalidArgument("unif_part: requires finite a < b");
  }
  if (n_intervals == 0) throw InvalidArgument("unif_part: N must be >= 1");
  h_ = (b - a) / double(n_);
  points_.resize(n_ + 2);
  for (std::size_t k = 0; k < points_.size(); ++k) {
    points_[k] = a + (double(k) - 1.0) * h_;
  }
  // The closed formula lands within an ulp of b; pin the endpoint so f is
  // never sampled outside [a, b].
  points_[n_ + 1] = b;
}

std::size_t UniformPartition::select_index(double x) const {
  if (!(x >= a_ && x <= b_)) throw InvalidArgument("select_index: x outside [a, b]");
  const double guess = std::floor((x - a_) / h_) + 1.0;
  std::size_t i = guess < 1.0 ? 1 : (guess > double(n_) ? n_ : static_cast<std::size_t>(guess));
  while (i > 1 && points_[i] > x) --i;
  while (i < n_ && points_[i + 1] <= x) ++i;
  return i;
}

}  // namespace uat
