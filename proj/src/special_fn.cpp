#include "uat/special_fn.hpp"

#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace uat {

StirlingTable::StirlingTable(std::size_t max_n) {
  rows_.push_back({BigInt{1}});
  extend(max_n);
}

const BigInt& StirlingTable::at(std::size_t n, std::size_t k) const {
  static const BigInt zero{0};
  if (n >= rows_.size()) throw std::out_of_range("StirlingTable: row not built");
  if (k > n) return zero;
  return rows_[n][k];
}

const std::vector<BigInt>& StirlingTable::row(std::size_t n) const {
  if (n >= rows_.size()) throw std::out_of_range("StirlingTable: row not built");
  return rows_[n];
}

void StirlingTable::extend(std::size_t new_max_n) {
  rows_.reserve(new_max_n + 1);
  while (rows_.size() <= new_max_n) {
    const auto& prev = rows_.back();
    const std::size_t n = rows_.size();
    std::vector<BigInt> next(n + 1);
    next[0] = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      const BigInt carried = k < prev.size() ? prev[k] * k : BigInt{0};
      next[k] = carried + prev[k - 1];
    }
    rows_.push_back(std::move(next));
  }
}

namespace {

struct SharedTable {
  std::shared_mutex mutex;
  StirlingTable table{32};
};

SharedTable& shared_table() {
  static SharedTable instance;
  return instance;
}

template <typename Read>
auto with_row(std::size_t n, Read read) {
  auto& shared = shared_table();
  {
    std::shared_lock lock(shared.mutex);
    if (n <= shared.table.max_n()) return read(shared.table);
  }
  std::unique_lock lock(shared.mutex);
  shared.table.extend(n);
  return read(shared.table);
}

}  // namespace

BigInt stirling2(std::size_t n, std::size_t k) {
  if (k > n) return BigInt{0};
  return with_row(n, [&](const StirlingTable& t) { return t.at(n, k); });
}

std::vector<BigInt> stirling2_row(std::size_t n) {
  return with_row(n, [&](const StirlingTable& t) { return t.row(n); });
}

BigInt factorial(std::size_t n) {
  BigInt result{1};
  for (std::size_t i = 2; i <= n; ++i) result *= i;
  return result;
}

}  // namespace uat
