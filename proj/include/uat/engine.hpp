#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uat/expr.hpp"
#include "uat/limits.hpp"
#include "uat/partition.hpp"

namespace uat {

/// A bounded sigmoidal activation: tends to 1 at +inf and 0 at -inf, with
/// sup |sigma| <= sup_bound and epsilon-N witnesses for both limits.
struct Activation {
  std::string name;
  std::function<double(double)> fn;
  double sup_bound = 1.0;
  std::function<LimitWitness(double)> witness_top;
  std::function<LimitWitness(double)> witness_bot;
  bool is_logistic = false;

  static Activation logistic();
};

enum class BoundSource { Supplied, Estimated };

const char* to_string(BoundSource s);

/// The three quantities whose floor (plus one) gives N.
struct CountOperands {
  double minimum = 3.0;
  double mesh = 0.0;         // 2(b-a)/delta
  double inverse_eta = 0.0;  // 1/eta
};

/// Certified parameters of the construction.
struct Recipe {
  double a = 0.0;
  double b = 1.0;
  double epsilon = 0.0;
  double M_f = 0.0;
  double M_sigma = 1.0;
  double eta = 0.0;
  double delta = 0.0;
  std::optional<double> lipschitz;  // absent when delta was supplied directly
  std::size_t N = 0;
  double h = 0.0;
  double w = 0.0;
  CountOperands operands;
  BoundSource lipschitz_source = BoundSource::Supplied;
  BoundSource sup_source = BoundSource::Supplied;
  bool delta_supplied = false;
};

struct RecipeOptions {
  std::size_t max_units = 10'000'000;
  std::size_t estimator_samples = 10'000;
};

/// eta = epsilon / (M_f + 2 M_sigma + 2).
double compute_eta(double epsilon, double M_f, double M_sigma);

/// delta = eta / L (or the supplied modulus override),
/// N = floor(max(3, 2(b-a)/delta, 1/eta)) + 1, h = (b-a)/N, w = ln(N-1)/h.
/// Missing L or M_f are estimated from the expression and flagged as such.
Recipe compute_recipe(const FunctionSpec& spec, double epsilon, double M_sigma = 1.0,
                      const RecipeOptions& options = {});

/// General activation: w comes from saturation_slope at tolerance 1/N.
Recipe compute_recipe(const FunctionSpec& spec, double epsilon, const Activation& activation,
                      const RecipeOptions& options = {});

/// G(x) = f(a) sigma(w(x - x_0)) + sum_{k=2}^{N+1} (f(x_k) - f(x_{k-1})) sigma(w(x - x_k)).
///
/// Hidden unit u = 0 sits at x_0; unit u >= 1 sits at x_{u+1}.
class SigmoidApproximant {
 public:
  SigmoidApproximant(UniformPartition partition, double w, double coeff0,
                     std::vector<double> coeffs, Recipe recipe,
                     Activation activation = Activation::logistic());

  double w() const noexcept { return w_; }
  const UniformPartition& partition() const noexcept { return partition_; }
  double coeff0() const noexcept { return coeff0_; }
  /// coeffs()[k-2] = f(x_k) - f(x_{k-1}) for k = 2..N+1.
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::size_t unit_count() const noexcept { return coeffs_.size() + 1; }
  const Recipe& recipe() const noexcept { return recipe_; }
  const Activation& activation() const noexcept { return activation_; }

  double unit_center(std::size_t u) const { return partition_[u == 0 ? 0 : u + 1]; }
  double unit_coefficient(std::size_t u) const { return u == 0 ? coeff0_ : coeffs_[u - 1]; }
  /// Running sums of unit coefficients in evaluation order.
  std::span<const double> prefix_sums() const noexcept { return prefix_; }

 private:
  UniformPartition partition_;
  double w_;
  double coeff0_;
  std::vector<double> coeffs_;
  std::vector<double> prefix_;
  Recipe recipe_;
  Activation activation_;
};

SigmoidApproximant build_approximant(const FunctionSpec& spec, const Recipe& recipe,
                                     const Activation& activation = Activation::logistic());

/// Ascending-unit sum. For the logistic activation, units whose argument is
/// past the double saturation points are skipped; the result is bit-identical
/// to evaluate_naive.
double evaluate(const SigmoidApproximant& g, double x);
double evaluate_naive(const SigmoidApproximant& g, double x);

struct ErrorReport {
  std::size_t grid_size = 0;
  double sup_error = 0.0;
  double argmax_x = 0.0;
  double target_epsilon = 0.0;
  bool pass = false;
};

/// n equally spaced points on [a, b]; the last one is exactly b.
std::vector<double> uniform_grid(double a, double b, std::size_t n);

/// Uniform grid of grid_size points plus every partition point in [a, b],
/// ascending, without duplicates.
std::vector<double> validation_points(const SigmoidApproximant& g, std::size_t grid_size);

/// max(10001, 10 N).
std::size_t default_grid_size(const Recipe& recipe);

/// sup |G - f| over validation_points(g, grid_size). With threads > 1 the
/// points are split into contiguous chunks; the reduction keeps the largest
/// error and, among ties, the leftmost point, so the report matches the
/// single-threaded one exactly.
ErrorReport validate(const SigmoidApproximant& g, const FunctionSpec& spec, double epsilon,
                     std::size_t grid_size, unsigned threads = 1);

/// Same measurement over caller-supplied points.
ErrorReport validate_points(const SigmoidApproximant& g, const FunctionSpec& spec, double epsilon,
                            std::span<const double> points, unsigned threads = 1);

/// Local surrogate that treats every unit left of x_i as fully on and every
/// unit right of x_{i+1} as off. Defined for 3 <= i <= N, x in [x_i, x_{i+1}].
double surrogate_L(const SigmoidApproximant& g, std::size_t i, double x);

struct DecompositionReport {
  double x = 0.0;
  std::size_t index_i = 0;
  double approximant = 0.0;
  double target = 0.0;
  double I1 = 0.0;  // |G(x) - L_i(x)|
  double I2 = 0.0;  // |L_i(x) - f(x)|
  double I1_bound = 0.0;  // (1 + M_f) eta
  double I2_bound = 0.0;  // (2 M_sigma + 1) eta
  bool I1_within = false;
  bool I2_within = false;
};

/// Empty when x falls in a cell with i < 3, where the surrogate is not defined.
std::optional<DecompositionReport> error_decomposition(const SigmoidApproximant& g,
                                                       const FunctionSpec& spec, double x);

}  // namespace uat
