#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace uat {

using BigInt = boost::multiprecision::cpp_int;

/// Lower-triangular table of Stirling numbers of the second kind,
/// S(n,k) for 0 <= k <= n <= max_n, built bottom-up from
/// S(n+1,k) = k*S(n,k) + S(n,k-1).
class StirlingTable {
 public:
  explicit StirlingTable(std::size_t max_n = 0);

  std::size_t max_n() const noexcept { return rows_.size() - 1; }

  /// S(n,k); zero when k > n. Requires n <= max_n().
  const BigInt& at(std::size_t n, std::size_t k) const;
  const std::vector<BigInt>& row(std::size_t n) const;

  /// Appends rows up to new_max_n (no-op if already present).
  void extend(std::size_t new_max_n);

 private:
  std::vector<std::vector<BigInt>> rows_;
};

/// S(n,k), exact. Backed by a process-wide memoized table that grows on
/// demand; concurrent callers are serialized only while a row is appended.
BigInt stirling2(std::size_t n, std::size_t k);

/// Row n of the shared table: S(n,0), ..., S(n,n).
std::vector<BigInt> stirling2_row(std::size_t n);

BigInt factorial(std::size_t n);

}  // namespace uat
