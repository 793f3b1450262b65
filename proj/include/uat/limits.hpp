#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace uat {

enum class LimitDirection { AtTop, AtBot };

/// Explicit epsilon-N threshold: for AtTop every x >= threshold satisfies
/// |f(x) - limit_value| < epsilon; for AtBot the same holds for x <= threshold.
struct LimitWitness {
  double epsilon = 0.0;
  double threshold = 0.0;
  LimitDirection direction = LimitDirection::AtTop;
  double limit_value = 0.0;
};

/// Slope omega such that any w >= omega keeps sigma(w t) within tol of 1 for
/// t >= h and within tol of 0 for t <= -h.
struct SaturationSlope {
  double omega = 0.0;
  double h = 0.0;
  double tol = 0.0;
};

/// threshold = ln(1/epsilon), limit 1. Uses 1 - sigma(x) = 1/(1+e^x) < e^-x.
LimitWitness sigmoid_witness_at_top(double epsilon);

/// threshold = -ln(1/epsilon), limit 0 (mirror through sigma(x) = 1 - sigma(-x)).
LimitWitness sigmoid_witness_at_bot(double epsilon);

/// Probes the witness claim numerically. Sampling can only refute: returns the
/// first sampled x with |f(x) - limit_value| >= epsilon (or a non-finite f(x)).
/// Samples are the threshold itself plus offsets spaced geometrically from
/// 1e-6 out to 1e3 past it (mirrored for AtBot).
std::optional<double> falsify_limit(const std::function<double(double)>& f, double limit_value,
                                    double epsilon, double threshold, LimitDirection direction,
                                    std::size_t sample_count);

/// omega = max(1, top.threshold / h, -bot.threshold / h). Both witnesses must
/// carry tolerance tol.
SaturationSlope saturation_slope(double h, double tol, const LimitWitness& top,
                                 const LimitWitness& bot);

/// Logistic-specific sharp slope omega = ln(N-1)/h with tol = 1/N; at t = h the
/// residual 1 - sigma(omega h) equals 1/N.
SaturationSlope sigmoid_saturation_slope(double h, std::size_t n);

}  // namespace uat
