#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "uat/engine.hpp"

namespace uat {

/// One hidden unit read as c * sigma(weight * x + bias).
struct NetworkUnit {
  double hidden_weight = 0.0;
  double hidden_bias = 0.0;
  double output_coefficient = 0.0;
};

struct NetworkMetadata {
  double a = 0.0;
  double b = 0.0;
  std::size_t N = 0;
  double epsilon = 0.0;
  double eta = 0.0;
  double delta = 0.0;
  double L = 0.0;  // 0 when delta was supplied directly
  double M_f = 0.0;
  double M_sigma = 1.0;
  std::string source_expression;
};

/// Flat single-hidden-layer network: the x_0 unit first, then k = 2..N+1.
struct NetworkDocument {
  std::string format_version = "1";
  std::string activation = "sigmoid";
  std::vector<NetworkUnit> units;
  NetworkMetadata metadata;
};

NetworkDocument to_network_document(const SigmoidApproximant& g, const Recipe& recipe,
                                    const FunctionSpec& spec);

nlohmann::json to_json(const NetworkDocument& doc);
NetworkDocument network_document_from_json(const nlohmann::json& j);

/// Rebuilds the approximant. Centers come from unif_part(a, b, N), the same
/// computation that produced them, so evaluation reproduces the original
/// exactly; each stored bias must equal -w * x_k bit for bit.
SigmoidApproximant approximant_from_document(const NetworkDocument& doc);

void write_network_document(const NetworkDocument& doc, const std::filesystem::path& path);
NetworkDocument read_network_document(const std::filesystem::path& path);

/// CSV with header "x,f,g,abs_err" and grid_size rows, x ascending over
/// uniform_grid(a, b, grid_size). Returns the number of data rows.
std::size_t write_samples(const SigmoidApproximant& g, const FunctionSpec& spec,
                          std::size_t grid_size, std::ostream& out);
std::size_t write_samples(const SigmoidApproximant& g, const FunctionSpec& spec,
                          std::size_t grid_size, const std::filesystem::path& path);

}  // namespace uat
