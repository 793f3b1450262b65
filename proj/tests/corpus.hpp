#pragma once

// Target functions on [0, 1] with analytically known Lipschitz constants and
// sup bounds.

#include <numbers>
#include <string>
#include <vector>

namespace corpus {

struct Target {
  std::string name;
  std::string text;
  double lipschitz;
  double sup;
};

inline constexpr const char* kComposite = "abs(x-0.3) + 0.3*sin(6*pi*x) + 0.2*x*(1-x)";

/// max |f'| of the composite: 1 + 0.3 * 6 pi + 0.2.
inline double composite_lipschitz() { return 1.0 + 1.8 * std::numbers::pi + 0.2; }

inline std::vector<Target> targets() {
  return {
      {"identity", "x", 1.0, 1.0},
      {"square", "x^2", 2.0, 1.0},
      {"kink", "abs(x-0.3)", 1.0, 0.7},
      {"oscillation", "sin(6*pi*x)", 6.0 * std::numbers::pi, 1.0},
      // Any positive L is valid for a constant.
      {"constant", "3", 1.0, 3.0},
      {"composite", kComposite, composite_lipschitz(), 1.05},
  };
}

}  // namespace corpus
