#include "uat/sigmoid.hpp"

#include <array>
#include <string>
#include <vector>

#include "uat/error.hpp"
#include "uat/special_fn.hpp"

namespace uat {

namespace {

void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) throw InvalidArgument(std::string(who) + ": argument must be finite");
}

// Signed coefficients (-1)^{k+1} (k-1)! S(n+1,k) for k = 1..n+1.
std::vector<double> derivative_coefficients(unsigned n) {
  const auto row = stirling2_row(n + 1);
  std::vector<double> out;
  out.reserve(n + 1);
  BigInt fact{1};
  for (unsigned k = 1; k <= n + 1; ++k) {
    if (k > 1) fact *= (k - 1);
    const double magnitude = static_cast<double>(fact * row[k]);
    out.push_back(k % 2 == 1 ? magnitude : -magnitude);
  }
  return out;
}

using CoefficientCache = std::array<std::vector<double>, kDefaultMaxDerivativeOrder + 1>;

const CoefficientCache& cached_coefficients() {
  static const CoefficientCache cache = [] {
    CoefficientCache c;
    for (unsigned n = 0; n <= kDefaultMaxDerivativeOrder; ++n) c[n] = derivative_coefficients(n);
    return c;
  }();
  return cache;
}

}  // namespace

double sigmoid(double x) {
  require_finite(x, "sigmoid");
  return detail::logistic(x);
}

double sigmoid_complement(double x) {
  require_finite(x, "sigmoid_complement");
  return detail::logistic(-x);
}

double sigmoid_deriv1(double x) {
  require_finite(x, "sigmoid_deriv1");
  // 1 - sigma(x) taken as sigma(-x): exact symmetry and no cancellation.
  return detail::logistic(x) * detail::logistic(-x);
}

double sigmoid_deriv2(double x) {
  require_finite(x, "sigmoid_deriv2");
  const double p = detail::logistic(x);
  const double q = detail::logistic(-x);
  return p * q * (q - p);
}

double sigmoid_nth_derivative(DerivativeOrder order, double x, unsigned max_order) {
  require_finite(x, "sigmoid_nth_derivative");
  if (order.n > max_order) {
    throw InvalidArgument("sigmoid_nth_derivative: order " + std::to_string(order.n) +
                          " exceeds the maximum of " + std::to_string(max_order));
  }
  const std::vector<double> computed =
      order.n <= kDefaultMaxDerivativeOrder ? std::vector<double>{} : derivative_coefficients(order.n);
  const std::vector<double>& coeffs =
      order.n <= kDefaultMaxDerivativeOrder ? cached_coefficients()[order.n] : computed;

  const double s = detail::logistic(x);
  double power = 1.0;
  double sum = 0.0;
  for (double c : coeffs) {
    power *= s;
    sum += c * power;
  }
  return sum;
}

}  // namespace uat
