#pragma once

#include <cmath>
#include <cstddef>

namespace uat {

/// Order of differentiation; 0 is the function itself.
struct DerivativeOrder {
  unsigned n = 0;
};

inline constexpr unsigned kDefaultMaxDerivativeOrder = 30;

/// In double precision the logistic function rounds to exactly 1.0 for
/// arguments >= kSaturatedHigh and to exactly 0.0 for arguments <= kSaturatedLow.
inline constexpr double kSaturatedHigh = 37.0;
inline constexpr double kSaturatedLow = -746.0;

namespace detail {

// Unchecked evaluation shared by every caller that needs bit-identical
// values. Non-negative arguments use 1/(1+e^-x), negative ones e^x/(1+e^x),
// so exp never sees a large positive argument.
inline double logistic(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace detail

/// Logistic sigmoid e^x/(1+e^x). Throws InvalidArgument on non-finite x.
double sigmoid(double x);

/// 1 - sigmoid(x), evaluated as sigmoid(-x) so it keeps full relative
/// precision when sigmoid(x) is close to 1.
double sigmoid_complement(double x);

/// sigma(x) * (1 - sigma(x)).
double sigmoid_deriv1(double x);

/// sigma(x) * (1 - sigma(x)) * (1 - 2 sigma(x)).
double sigmoid_deriv2(double x);

/// n-th derivative through the alternating Stirling sum
///   sum_{k=1}^{n+1} (-1)^{k+1} (k-1)! S(n+1,k) sigma(x)^k.
/// Coefficients are exact integers rounded once to double; the sum runs in
/// ascending k with plain accumulation. Orders above max_order throw
/// InvalidArgument.
double sigmoid_nth_derivative(DerivativeOrder order, double x,
                              unsigned max_order = kDefaultMaxDerivativeOrder);

}  // namespace uat
