#pragma once

// Independent reference computations used by the test suites. Nothing here
// calls into the library's numeric paths.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

/// counts[k] = number of partitions of an n-set into k blocks, by walking
/// every restricted growth string of length n.
inline std::vector<unsigned long long> enumerate_partitions(std::size_t n) {
  std::vector<unsigned long long> counts(n + 1, 0);
  if (n == 0) {
    counts[0] = 1;
    return counts;
  }
  std::vector<std::size_t> a(n, 0), running_max(n, 0);
  while (true) {
    counts[running_max[n - 1] + 1]++;
    std::size_t i = n - 1;
    while (i > 0 && a[i] == running_max[i - 1] + 1) --i;
    if (i == 0) break;
    ++a[i];
    running_max[i] = std::max(running_max[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      running_max[j] = running_max[i];
    }
  }
  return counts;
}

/// Bell numbers from the Bell triangle.
inline std::vector<boost::multiprecision::cpp_int> bell_numbers(std::size_t max_n) {
  using boost::multiprecision::cpp_int;
  std::vector<cpp_int> bell{1};
  std::vector<cpp_int> row{1};
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::vector<cpp_int> next{row.back()};
    for (const auto& v : row) next.push_back(next.back() + v);
    row = std::move(next);
    bell.push_back(row.front());
  }
  return bell;
}

inline long double logistic_ld(long double x) { return 1.0L / (1.0L + std::exp(-x)); }

/// Central difference applied n times: (2h)^-n sum_j (-1)^j C(n,j) f(x + (n-2j)h).
inline long double nested_central(unsigned n, long double x, long double h,
                                  const std::function<long double(long double)>& f) {
  long double sum = 0.0L, binom = 1.0L;
  for (unsigned j = 0; j <= n; ++j) {
    sum += (j % 2 == 0 ? binom : -binom) * f(x + (static_cast<long double>(n) - 2.0L * j) * h);
    binom = binom * (n - j) / (j + 1);
  }
  return sum / std::pow(2.0L * h, static_cast<long double>(n));
}

/// Richardson extrapolation of a second-order-accurate estimate D(h),
/// three levels (h, h/2, h/4), leaving an O(h^6) error.
template <typename Estimate>
long double richardson3(Estimate d, long double h) {
  const long double d1 = d(h), d2 = d(h / 2), d3 = d(h / 4);
  const long double r1 = (4 * d2 - d1) / 3, r2 = (4 * d3 - d2) / 3;
  return (16 * r2 - r1) / 15;
}

/// n-th derivative of the logistic function by nested central differences
/// in extended precision.
inline double sigmoid_derivative_fd(unsigned n, double x) {
  return static_cast<double>(richardson3(
      [&](long double h) { return nested_central(n, x, h, logistic_ld); }, 0.05L));
}

/// First derivative of a double-valued function by central differences with
/// Richardson extrapolation.
inline double derivative_fd(const std::function<double(double)>& f, double x, double h = 1e-2) {
  return static_cast<double>(richardson3(
      [&](long double step) {
        const double s = static_cast<double>(step);
        return static_cast<long double>((f(x + s) - f(x - s)) / (2.0 * s));
      },
      h));
}

inline double ulp(double v) {
  v = std::abs(v);
  return std::nextafter(v, std::numeric_limits<double>::infinity()) - v;
}

/// Relative error, with the denominator floored for reference values that
/// vanish analytically.
using Rational = boost::multiprecision::cpp_rational;

/// Neuron count floor(max(3, 2 width / delta, 1 / eta)) + 1 in exact rational
/// arithmetic, with eta = eps / (M_f + 2 M_sigma + 2) and delta = eta / L.
inline std::size_t neuron_count_exact(const Rational& eps, const Rational& M_f,
                                      const Rational& M_sigma, const Rational& L,
                                      const Rational& width) {
  const Rational eta = eps / (M_f + 2 * M_sigma + 2);
  const Rational delta = eta / L;
  const Rational mesh = 2 * width / delta;
  const Rational inverse_eta = 1 / eta;
  Rational m = 3;
  if (mesh > m) m = mesh;
  if (inverse_eta > m) m = inverse_eta;
  const boost::multiprecision::cpp_int fl = numerator(m) / denominator(m);
  return static_cast<std::size_t>(fl) + 1;
}

/// Decimal literal as an exact rational: "6.855" -> 6855/1000.
inline Rational decimal(const char* text) {
  Rational value = 0;
  Rational scale = 1;
  bool frac = false;
  for (const char* p = text; *p; ++p) {
    if (*p == '.') {
      frac = true;
      continue;
    }
    value = value * 10 + (*p - '0');
    if (frac) scale *= 10;
  }
  return value / scale;
}

/// pi lies strictly between these two 20-digit truncations.
inline Rational pi_lower() { return decimal("3.14159265358979323846"); }
inline Rational pi_upper() { return decimal("3.14159265358979323847"); }

inline double rel_err(double got, double want, double floor = 1e-4) {
  return std::abs(got - want) / std::max(std::abs(want), floor);
}

}  // namespace oracle
