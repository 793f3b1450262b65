#include "uat/cli.hpp"

#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "uat/engine.hpp"
#include "uat/error.hpp"
#include "uat/export_io.hpp"
#include "uat/expr.hpp"
#include "uat/limits.hpp"
#include "uat/numfmt.hpp"
#include "uat/sigmoid.hpp"
#include "uat/special_fn.hpp"

namespace uat {

namespace {

using nlohmann::json;

struct FunctionFlags {
  std::string fn;
  double a = 0.0;
  double b = 1.0;
  double eps = 0.0;
  std::optional<double> lipschitz;
  std::optional<double> sup;
  std::optional<double> delta;
  std::size_t max_units = RecipeOptions{}.max_units;
};

void add_function_flags(CLI::App* cmd, FunctionFlags& f) {
  cmd->add_option("--fn", f.fn, "target function of x (see: uat grammar)")->required();
  cmd->add_option("--a", f.a, "left end of the interval")->required();
  cmd->add_option("--b", f.b, "right end of the interval")->required();
  cmd->add_option("--eps", f.eps, "target sup-norm error")->required();
  cmd->add_option("--lipschitz", f.lipschitz, "Lipschitz constant of f on [a,b] (estimated if absent)");
  cmd->add_option("--sup", f.sup, "bound on sup |f| over [a,b] (estimated if absent)");
  cmd->add_option("--delta", f.delta, "modulus of continuity for eta, bypassing L");
  cmd->add_option("--max-units", f.max_units, "refuse recipes needing more hidden units");
}

std::string fmt(double v) { return format_double(v); }

json recipe_json(const Recipe& r) {
  json j = {{"a", r.a},
            {"b", r.b},
            {"epsilon", r.epsilon},
            {"M_f", r.M_f},
            {"M_f_source", to_string(r.sup_source)},
            {"M_sigma", r.M_sigma},
            {"eta", r.eta},
            {"delta", r.delta},
            {"delta_source", r.delta_supplied ? "supplied" : "eta/L"},
            {"N", r.N},
            {"units", r.N + 1},
            {"h", r.h},
            {"w", r.w},
            {"N_operands", {r.operands.minimum, r.operands.mesh, r.operands.inverse_eta}}};
  if (r.lipschitz) {
    j["L"] = *r.lipschitz;
    j["L_source"] = to_string(r.lipschitz_source);
  } else {
    j["L"] = nullptr;
  }
  return j;
}

void print_recipe(const Recipe& r, std::ostream& out) {
  out << "epsilon: " << fmt(r.epsilon) << '\n';
  out << "M_f: " << fmt(r.M_f) << " (" << to_string(r.sup_source) << ")\n";
  out << "M_sigma: " << fmt(r.M_sigma) << '\n';
  if (r.lipschitz) {
    out << "L: " << fmt(*r.lipschitz) << " (" << to_string(r.lipschitz_source) << ")\n";
  } else {
    out << "L: none\n";
  }
  out << "eta: " << fmt(r.eta) << '\n';
  out << "delta: " << fmt(r.delta) << (r.delta_supplied ? " (supplied)" : " (eta/L)") << '\n';
  out << "N operands: " << fmt(r.operands.minimum) << ", " << fmt(r.operands.mesh) << ", "
      << fmt(r.operands.inverse_eta) << '\n';
  out << "N: " << r.N << '\n';
  out << "hidden units: " << r.N + 1 << '\n';
  out << "h: " << fmt(r.h) << '\n';
  out << "w: " << fmt(r.w) << '\n';
}

json report_json(const ErrorReport& r) {
  return {{"grid_size", r.grid_size},
          {"sup_error", r.sup_error},
          {"argmax_x", r.argmax_x},
          {"target_epsilon", r.target_epsilon},
          {"pass", r.pass}};
}

void print_report(const ErrorReport& r, std::ostream& out) {
  out << "grid points: " << r.grid_size << '\n';
  out << "sup error: " << fmt(r.sup_error) << '\n';
  out << "argmax x: " << fmt(r.argmax_x) << '\n';
  out << "target epsilon: " << fmt(r.target_epsilon) << '\n';
  out << "certificate: " << (r.pass ? "PASS" : "FAIL") << '\n';
}

FunctionSpec spec_from(const FunctionFlags& f) {
  return make_function_spec(f.fn, f.a, f.b, f.lipschitz, f.sup, f.delta);
}

// Central difference applied n times with step h, in extended precision.
long double nested_difference(unsigned n, long double x, long double h) {
  long double sum = 0.0L;
  long double binom = 1.0L;
  for (unsigned j = 0; j <= n; ++j) {
    const long double t = x + (static_cast<long double>(n) - 2.0L * j) * h;
    const long double s = 1.0L / (1.0L + std::exp(-t));
    sum += (j % 2 == 0 ? binom : -binom) * s;
    binom = binom * (n - j) / (j + 1);
  }
  return sum / std::pow(2.0L * h, static_cast<long double>(n));
}

// Two Richardson steps on the nested difference (errors in h^2 and h^4).
double finite_difference_oracle(unsigned n, double x) {
  if (n == 0) return static_cast<double>(1.0L / (1.0L + std::exp(-static_cast<long double>(x))));
  const long double h = 0.05L;
  const long double d1 = nested_difference(n, x, h);
  const long double d2 = nested_difference(n, x, h / 2);
  const long double d3 = nested_difference(n, x, h / 4);
  const long double r1 = (4 * d2 - d1) / 3;
  const long double r2 = (4 * d3 - d2) / 3;
  return static_cast<double>((16 * r2 - r1) / 15);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constructive sigmoid approximation with sup-norm certificates", "uat"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  FunctionFlags recipe_flags;
  bool verbose = false;
  auto* recipe_cmd = app.add_subcommand("recipe", "compute eta, delta, N, h and w");
  add_function_flags(recipe_cmd, recipe_flags);
  recipe_cmd->add_flag("--json", as_json, "machine-readable output");
  recipe_cmd->add_flag("--verbose", verbose, "also print the partition points");

  FunctionFlags approx_flags;
  std::optional<std::string> out_network;
  std::optional<std::string> out_samples;
  std::optional<std::size_t> grid;
  std::size_t sample_rows = 1001;
  unsigned threads = 1;
  auto* approx_cmd = app.add_subcommand("approximate", "build the network and validate it");
  add_function_flags(approx_cmd, approx_flags);
  approx_cmd->add_flag("--json", as_json, "machine-readable output");
  approx_cmd->add_option("--out-network", out_network, "write the network document (JSON)");
  approx_cmd->add_option("--out-samples", out_samples, "write x,f,g,abs_err samples (CSV)");
  approx_cmd->add_option("--grid", grid, "validation grid size (default max(10001, 10 N))")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  approx_cmd->add_option("--sample-rows", sample_rows, "rows in the samples file")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  approx_cmd->add_option("--threads", threads, "validation worker threads")
      ->check(CLI::Range(1u, 1024u));

  unsigned deriv_n = 0;
  double deriv_x = 0.0;
  bool deriv_check = false;
  auto* deriv_cmd = app.add_subcommand("derivative", "n-th derivative of the sigmoid");
  deriv_cmd->add_option("--n", deriv_n, "derivative order (<= 30)")->required();
  deriv_cmd->add_option("--x", deriv_x, "evaluation point")->required();
  deriv_cmd->add_flag("--check", deriv_check, "compare with a finite-difference estimate");
  deriv_cmd->add_flag("--json", as_json, "machine-readable output");

  std::size_t stir_n = 0;
  std::optional<std::size_t> stir_k;
  auto* stir_cmd = app.add_subcommand("stirling", "Stirling numbers of the second kind");
  stir_cmd->add_option("--n", stir_n, "set size")->required();
  stir_cmd->add_option("--k", stir_k, "block count (whole row if omitted)");
  stir_cmd->add_flag("--json", as_json, "machine-readable output");

  double sat_h = 0.0;
  std::optional<std::size_t> sat_n;
  std::optional<double> sat_tol;
  std::optional<double> sat_top;
  std::optional<double> sat_bot;
  auto* sat_cmd = app.add_subcommand("saturation", "slope forcing saturation outside a +-h collar");
  // --h is taken, so help is long-form only here.
  sat_cmd->set_help_flag("--help", "print this help message and exit");
  sat_cmd->add_option("--h", sat_h, "collar half-width")->required();
  sat_cmd->add_option("--n", sat_n, "unit count N (sigmoid-specific slope ln(N-1)/h)");
  sat_cmd->add_option("--tol", sat_tol, "tolerance shared by explicit witnesses");
  sat_cmd->add_option("--top", sat_top, "explicit at_top witness threshold");
  sat_cmd->add_option("--bot", sat_bot, "explicit at_bot witness threshold");
  sat_cmd->add_flag("--json", as_json, "machine-readable output");

  app.add_subcommand("grammar", "print the expression grammar");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("grammar")) {
      out << help_text();
      return kExitOk;
    }

    if (recipe_cmd->parsed()) {
      const FunctionSpec spec = spec_from(recipe_flags);
      const Recipe r = compute_recipe(spec, recipe_flags.eps, 1.0, {recipe_flags.max_units});
      if (as_json) {
        json j = recipe_json(r);
        if (verbose) j["partition"] = unif_part(r.a, r.b, r.N).points();
        out << j.dump(2) << '\n';
      } else {
        print_recipe(r, out);
        if (verbose) {
          const auto p = unif_part(r.a, r.b, r.N);
          for (std::size_t k = 0; k < p.points().size(); ++k) {
            out << "x_" << k << ": " << fmt(p[k]) << '\n';
          }
        }
      }
      return kExitOk;
    }

    if (approx_cmd->parsed()) {
      const FunctionSpec spec = spec_from(approx_flags);
      const Recipe r = compute_recipe(spec, approx_flags.eps, 1.0, {approx_flags.max_units});
      const SigmoidApproximant g = build_approximant(spec, r);
      const ErrorReport report =
          validate(g, spec, approx_flags.eps, grid.value_or(default_grid_size(r)), threads);
      if (out_network) write_network_document(to_network_document(g, r, spec), *out_network);
      if (out_samples) write_samples(g, spec, sample_rows, std::filesystem::path(*out_samples));
      if (as_json) {
        out << json{{"recipe", recipe_json(r)}, {"report", report_json(report)}}.dump(2) << '\n';
      } else {
        print_recipe(r, out);
        print_report(report, out);
      }
      return report.pass ? kExitOk : kExitCertificateFailed;
    }

    if (deriv_cmd->parsed()) {
      const double value = sigmoid_nth_derivative({deriv_n}, deriv_x);
      json j = {{"n", deriv_n}, {"x", deriv_x}, {"value", value}};
      std::ostringstream text;
      text << "sigma^(" << deriv_n << ")(" << fmt(deriv_x) << "): " << fmt(value) << '\n';
      if (deriv_check) {
        const double oracle = finite_difference_oracle(deriv_n, deriv_x);
        const double rel = std::abs(value - oracle) / std::max(std::abs(oracle), 1e-300);
        j["finite_difference"] = oracle;
        j["relative_error"] = rel;
        text << "finite difference: " << fmt(oracle) << '\n';
        text << "relative error: " << fmt(rel) << '\n';
      }
      out << (as_json ? j.dump(2) + "\n" : text.str());
      return kExitOk;
    }

    if (stir_cmd->parsed()) {
      if (stir_k) {
        const std::string v = stirling2(stir_n, *stir_k).str();
        if (as_json) {
          out << json{{"n", stir_n}, {"k", *stir_k}, {"value", v}}.dump(2) << '\n';
        } else {
          out << v << '\n';
        }
      } else {
        const auto row = stirling2_row(stir_n);
        json values = json::array();
        std::string line;
        for (std::size_t k = 0; k < row.size(); ++k) {
          values.push_back(row[k].str());
          line += (k ? "," : "") + row[k].str();
        }
        if (as_json) {
          out << json{{"n", stir_n}, {"row", values}}.dump(2) << '\n';
        } else {
          out << line << '\n';
        }
      }
      return kExitOk;
    }

    if (sat_cmd->parsed()) {
      SaturationSlope s;
      if (sat_n) {
        s = sigmoid_saturation_slope(sat_h, *sat_n);
      } else if (sat_tol && sat_top && sat_bot) {
        s = saturation_slope(sat_h, *sat_tol, {*sat_tol, *sat_top, LimitDirection::AtTop, 1.0},
                             {*sat_tol, *sat_bot, LimitDirection::AtBot, 0.0});
      } else {
        err << "saturation: give --n, or all of --tol --top --bot\n";
        return kExitUsage;
      }
      const double residual = 1.0 - sigmoid(s.omega * s.h);
      if (as_json) {
        out << json{{"h", s.h}, {"tol", s.tol}, {"omega", s.omega}, {"boundary_residual", residual}}
                   .dump(2)
            << '\n';
      } else {
        out << "omega: " << fmt(s.omega) << '\n';
        out << "tol: " << fmt(s.tol) << '\n';
        out << "boundary residual 1 - sigma(omega h): " << fmt(residual) << '\n';
      }
      return kExitOk;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace uat
