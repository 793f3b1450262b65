#include "uat/limits.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uat/error.hpp"

namespace uat {

namespace {

void require_unit_epsilon(double epsilon, const char* who) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidArgument(std::string(who) + ": epsilon must lie in (0, 1)");
  }
}

}  // namespace

LimitWitness sigmoid_witness_at_top(double epsilon) {
  require_unit_epsilon(epsilon, "sigmoid_witness_at_top");
  return {epsilon, std::log(1.0 / epsilon), LimitDirection::AtTop, 1.0};
}

LimitWitness sigmoid_witness_at_bot(double epsilon) {
  require_unit_epsilon(epsilon, "sigmoid_witness_at_bot");
  return {epsilon, -std::log(1.0 / epsilon), LimitDirection::AtBot, 0.0};
}

std::optional<double> falsify_limit(const std::function<double(double)>& f, double limit_value,
                                    double epsilon, double threshold, LimitDirection direction,
                                    std::size_t sample_count) {
  if (sample_count < 2) throw InvalidArgument("falsify_limit: sample_count must be >= 2");
  if (!(epsilon > 0.0)) throw InvalidArgument("falsify_limit: epsilon must be positive");

  constexpr double kFirstOffset = 1e-6;
  constexpr double kLastOffset = 1e3;
  const double sign = direction == LimitDirection::AtTop ? 1.0 : -1.0;
  const double ratio = std::log(kLastOffset / kFirstOffset);

  for (std::size_t j = 0; j < sample_count; ++j) {
    double offset = 0.0;
    if (j > 0) {
      const double frac = sample_count == 2 ? 1.0 : double(j - 1) / double(sample_count - 2);
      offset = kFirstOffset * std::exp(ratio * frac);
    }
    const double x = threshold + sign * offset;
    const double y = f(x);
    if (!std::isfinite(y) || !(std::abs(y - limit_value) < epsilon)) return x;
  }
  return std::nullopt;
}

SaturationSlope saturation_slope(double h, double tol, const LimitWitness& top,
                                 const LimitWitness& bot) {
  if (!(h > 0.0)) throw InvalidArgument("saturation_slope: h must be positive");
  if (!(tol > 0.0)) throw InvalidArgument("saturation_slope: tol must be positive");
  if (top.direction != LimitDirection::AtTop || bot.direction != LimitDirection::AtBot) {
    throw InvalidArgument("saturation_slope: expected one at_top and one at_bot witness");
  }
  if (top.epsilon != tol || bot.epsilon != tol) {
    throw InvalidArgument("saturation_slope: witness tolerances do not match tol");
  }
  const double omega = std::max({1.0, top.threshold / h, -bot.threshold / h});
  return {omega, h, tol};
}

SaturationSlope sigmoid_saturation_slope(double h, std::size_t n) {
  if (n < 3) throw InvalidArgument("sigmoid_saturation_slope: N must be >= 3");
  if (!(h > 0.0)) throw InvalidArgument("sigmoid_saturation_slope: h must be positive");
  return {std::log(double(n - 1)) / h, h, 1.0 / double(n)};
}

}  // namespace uat
