#include "uat/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "uat/error.hpp"
#include "uat/numfmt.hpp"
#include "uat/sigmoid.hpp"

namespace uat {

Activation Activation::logistic() {
  return {"sigmoid", [](double z) { return detail::logistic(z); }, 1.0, sigmoid_witness_at_top,
          sigmoid_witness_at_bot, true};
}

const char* to_string(BoundSource s) {
  return s == BoundSource::Supplied ? "supplied" : "estimated";
}

double compute_eta(double epsilon, double M_f, double M_sigma) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("compute_eta: epsilon must be positive");
  }
  if (!(M_f >= 0.0) || !(M_sigma >= 0.0)) {
    throw InvalidArgument("compute_eta: bounds must be non-negative");
  }
  return epsilon / (M_f + 2.0 * M_sigma + 2.0);
}

namespace {

Recipe recipe_skeleton(const FunctionSpec& spec, double epsilon, double M_sigma,
                       const RecipeOptions& options) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("compute_recipe: epsilon must be positive");
  }
  const double a = spec.interval.a;
  const double b = spec.interval.b;
  if (!(a < b)) throw InvalidArgument("compute_recipe: interval requires a < b");

  Recipe r;
  r.a = a;
  r.b = b;
  r.epsilon = epsilon;
  r.M_sigma = M_sigma;

  if (spec.sup_bound) {
    r.M_f = *spec.sup_bound;
    r.sup_source = BoundSource::Supplied;
  } else {
    r.M_f = estimate_sup(spec, options.estimator_samples);
    r.sup_source = BoundSource::Estimated;
  }
  r.eta = compute_eta(epsilon, r.M_f, M_sigma);

  if (spec.modulus_override) {
    r.delta = *spec.modulus_override;
    r.delta_supplied = true;
    r.lipschitz = spec.lipschitz;
  } else {
    double L = 0.0;
    if (spec.lipschitz) {
      L = *spec.lipschitz;
      r.lipschitz_source = BoundSource::Supplied;
    } else {
      L = estimate_lipschitz(spec, options.estimator_samples);
      r.lipschitz_source = BoundSource::Estimated;
    }
    if (!(L > 0.0)) throw InvalidArgument("compute_recipe: Lipschitz constant must be positive");
    r.lipschitz = L;
    r.delta = r.eta / L;
  }
  if (!(r.delta > 0.0)) throw InvalidArgument("compute_recipe: delta must be positive");

  r.operands.mesh = 2.0 * (b - a) / r.delta;
  r.operands.inverse_eta = 1.0 / r.eta;
  const double m = std::max({r.operands.minimum, r.operands.mesh, r.operands.inverse_eta});
  const double required = std::floor(m) + 1.0;
  if (!(required <= double(options.max_units))) {
    throw CapacityError("compute_recipe: the construction needs N = " + format_double(required) +
                            " hidden units, above the cap of " +
                            std::to_string(options.max_units) +
                            "; epsilon is too small for desk-scale validation",
                        required);
  }
  r.N = static_cast<std::size_t>(required);
  r.h = (b - a) / double(r.N);
  return r;
}

}  // namespace

Recipe compute_recipe(const FunctionSpec& spec, double epsilon, double M_sigma,
                      const RecipeOptions& options) {
  Recipe r = recipe_skeleton(spec, epsilon, M_sigma, options);
  r.w = sigmoid_saturation_slope(r.h, r.N).omega;
  return r;
}

Recipe compute_recipe(const FunctionSpec& spec, double epsilon, const Activation& activation,
                      const RecipeOptions& options) {
  if (activation.is_logistic) return compute_recipe(spec, epsilon, activation.sup_bound, options);
  Recipe r = recipe_skeleton(spec, epsilon, activation.sup_bound, options);
  const double tol = 1.0 / double(r.N);
  r.w = saturation_slope(r.h, tol, activation.witness_top(tol), activation.witness_bot(tol)).omega;
  return r;
}

SigmoidApproximant::SigmoidApproximant(UniformPartition partition, double w, double coeff0,
                                       std::vector<double> coeffs, Recipe recipe,
                                       Activation activation)
    : partition_(std::move(partition)),
      w_(w),
      coeff0_(coeff0),
      coeffs_(std::move(coeffs)),
      recipe_(std::move(recipe)),
      activation_(std::move(activation)) {
  if (coeffs_.size() != partition_.n_intervals()) {
    throw InvalidArgument("SigmoidApproximant: expected N output coefficients");
  }
  if (!(w_ > 0.0) || !std::isfinite(w_)) throw InvalidArgument("SigmoidApproximant: w must be positive");
  prefix_.resize(unit_count());
  prefix_[0] = coeff0_;
  for (std::size_t u = 1; u < prefix_.size(); ++u) prefix_[u] = prefix_[u - 1] + coeffs_[u - 1];
}

SigmoidApproximant build_approximant(const FunctionSpec& spec, const Recipe& recipe,
                                     const Activation& activation) {
  if (spec.interval.a != recipe.a || spec.interval.b != recipe.b) {
    throw InvalidArgument("build_approximant: recipe interval does not match the target interval");
  }
  UniformPartition p(recipe.a, recipe.b, recipe.N);
  const std::size_t n = p.n_intervals();
  std::vector<double> values(n + 2);
  for (std::size_t k = 1; k <= n + 1; ++k) {
    try {
      values[k] = spec(p[k]);
    } catch (const DomainError& e) {
      throw DomainError("build_approximant: f is undefined at partition point x_" +
                            std::to_string(k) + " = " + format_double(p[k]) + ": " + e.what(),
                        p[k]);
    }
  }
  std::vector<double> coeffs(n);
  for (std::size_t k = 2; k <= n + 1; ++k) coeffs[k - 2] = values[k] - values[k - 1];
  return SigmoidApproximant(std::move(p), recipe.w, values[1], std::move(coeffs), recipe,
                            activation);
}

namespace {

void require_finite_x(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("evaluate: x must be finite");
}

}  // namespace

double evaluate_naive(const SigmoidApproximant& g, double x) {
  require_finite_x(x);
  const auto& act = g.activation();
  const double w = g.w();
  double s = g.coeff0() * (act.is_logistic ? detail::logistic(w * (x - g.unit_center(0)))
                                           : act.fn(w * (x - g.unit_center(0))));
  for (std::size_t u = 1; u < g.unit_count(); ++u) {
    const double z = w * (x - g.unit_center(u));
    s += g.unit_coefficient(u) * (act.is_logistic ? detail::logistic(z) : act.fn(z));
  }
  return s;
}

double evaluate(const SigmoidApproximant& g, double x) {
  if (!g.activation().is_logistic) return evaluate_naive(g, x);
  require_finite_x(x);
  const double w = g.w();
  const std::size_t n = g.unit_count();
  auto z = [&](std::size_t u) { return w * (x - g.unit_center(u)); };

  // z(u) is non-increasing in u, so both saturated groups are contiguous.
  auto first_below = [&](double level, auto strict) {
    std::size_t lo = 0, hi = n;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      const double v = z(mid);
      if (strict ? v > level : v >= level) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return lo;
  };
  // Units [0, on) have sigma == 1.0 exactly; units [off, n) have sigma == 0.0.
  const std::size_t on = first_below(kSaturatedHigh, false);
  const std::size_t off = first_below(kSaturatedLow, true);

  double s;
  std::size_t u;
  if (on == 0) {
    s = g.coeff0() * detail::logistic(z(0));
    u = 1;
  } else {
    s = g.prefix_sums()[on - 1];
    u = on;
  }
  for (; u < off; ++u) s += g.unit_coefficient(u) * detail::logistic(z(u));
  // Adding c * 0.0 leaves s unchanged unless s is a signed zero.
  if (s == 0.0) {
    for (; u < n; ++u) s += g.unit_coefficient(u) * detail::logistic(z(u));
  }
  return s;
}

std::vector<double> uniform_grid(double a, double b, std::size_t n) {
  if (n < 2) throw InvalidArgument("uniform_grid: need at least 2 points");
  std::vector<double> pts(n);
  for (std::size_t j = 0; j + 1 < n; ++j) pts[j] = a + (b - a) * (double(j) / double(n - 1));
  pts[n - 1] = b;
  return pts;
}

std::vector<double> validation_points(const SigmoidApproximant& g, std::size_t grid_size) {
  const auto& p = g.partition();
  std::vector<double> pts = uniform_grid(p.a(), p.b(), grid_size);
  for (double xk : p.points()) {
    if (xk >= p.a() && xk <= p.b()) pts.push_back(xk);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::size_t default_grid_size(const Recipe& recipe) {
  return std::max<std::size_t>(10'001, 10 * recipe.N);
}

namespace {

struct ChunkMax {
  double err = -1.0;
  std::size_t index = 0;
};

ChunkMax scan(const SigmoidApproximant& g, const FunctionSpec& spec, std::span<const double> pts,
              std::size_t begin, std::size_t end) {
  ChunkMax best;
  for (std::size_t j = begin; j < end; ++j) {
    const double e = std::abs(evaluate(g, pts[j]) - spec(pts[j]));
    if (std::isnan(e)) throw DomainError("validate: non-finite error at x = " + format_double(pts[j]), pts[j]);
    if (e > best.err) best = {e, j};
  }
  return best;
}

}  // namespace

ErrorReport validate_points(const SigmoidApproximant& g, const FunctionSpec& spec, double epsilon,
                            std::span<const double> points, unsigned threads) {
  if (points.size() < 2) throw InvalidArgument("validate: need at least 2 points");
  if (!(epsilon > 0.0)) throw InvalidArgument("validate: epsilon must be positive");
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, points.size());

  ChunkMax best;
  if (workers == 1) {
    best = scan(g, spec, points, 0, points.size());
  } else {
    std::vector<ChunkMax> partial(workers);
    std::vector<std::exception_ptr> failures(workers);
    std::vector<std::thread> pool;
    const std::size_t chunk = (points.size() + workers - 1) / workers;
    for (std::size_t t = 0; t < workers; ++t) {
      const std::size_t begin = std::min(points.size(), t * chunk);
      const std::size_t end = std::min(points.size(), begin + chunk);
      pool.emplace_back([&, t, begin, end] {
        try {
          partial[t] = scan(g, spec, points, begin, end);
        } catch (...) {
          failures[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
    // Chunks are in ascending order; strict > keeps the leftmost maximum.
    for (const auto& c : partial) {
      if (c.err > best.err) best = c;
    }
  }

  ErrorReport r;
  r.grid_size = points.size();
  r.sup_error = best.err;
  r.argmax_x = points[best.index];
  r.target_epsilon = epsilon;
  r.pass = r.sup_error < epsilon;
  return r;
}

ErrorReport validate(const SigmoidApproximant& g, const FunctionSpec& spec, double epsilon,
                     std::size_t grid_size, unsigned threads) {
  if (grid_size < 2) throw InvalidArgument("validate: grid_size must be >= 2");
  const auto pts = validation_points(g, grid_size);
  return validate_points(g, spec, epsilon, pts, threads);
}

double surrogate_L(const SigmoidApproximant& g, std::size_t i, double x) {
  const auto& p = g.partition();
  const std::size_t n = p.n_intervals();
  if (i < 3) throw InvalidArgument("surrogate_L: only defined for i >= 3");
  if (i > n) throw InvalidArgument("surrogate_L: i exceeds N");
  if (!(x >= p[i] && x <= p[i + 1])) throw InvalidArgument("surrogate_L: x outside [x_i, x_{i+1}]");

  const auto& act = g.activation();
  const auto coeffs = g.coeffs();
  double settled = g.coeff0();
  for (std::size_t k = 2; k <= i - 1; ++k) settled += coeffs[k - 2];
  const double left = act.fn(g.w() * (x - p[i]));
  const double right = act.fn(g.w() * (x - p[i + 1]));
  return settled + coeffs[i - 2] * left + coeffs[i - 1] * right;
}

std::optional<DecompositionReport> error_decomposition(const SigmoidApproximant& g,
                                                       const FunctionSpec& spec, double x) {
  const std::size_t i = g.partition().select_index(x);
  if (i < 3) return std::nullopt;
  DecompositionReport r;
  r.x = x;
  r.index_i = i;
  r.approximant = evaluate(g, x);
  r.target = spec(x);
  const double surrogate = surrogate_L(g, i, x);
  r.I1 = std::abs(r.approximant - surrogate);
  r.I2 = std::abs(surrogate - r.target);
  const auto& rec = g.recipe();
  r.I1_bound = (1.0 + rec.M_f) * rec.eta;
  r.I2_bound = (2.0 * rec.M_sigma + 1.0) * rec.eta;
  r.I1_within = r.I1 < r.I1_bound;
  r.I2_within = r.I2 < r.I2_bound;
  return r;
}

}  // namespace uat
