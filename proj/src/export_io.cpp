#include "uat/export_io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "uat/error.hpp"
#include "uat/numfmt.hpp"

namespace uat {

NetworkDocument to_network_document(const SigmoidApproximant& g, const Recipe& recipe,
                                    const FunctionSpec& spec) {
  NetworkDocument doc;
  doc.activation = g.activation().name;
  doc.units.reserve(g.unit_count());
  for (std::size_t u = 0; u < g.unit_count(); ++u) {
    doc.units.push_back({g.w(), -g.w() * g.unit_center(u), g.unit_coefficient(u)});
  }
  auto& m = doc.metadata;
  m.a = g.partition().a();
  m.b = g.partition().b();
  m.N = g.partition().n_intervals();
  m.epsilon = recipe.epsilon;
  m.eta = recipe.eta;
  m.delta = recipe.delta;
  m.L = recipe.lipschitz.value_or(0.0);
  m.M_f = recipe.M_f;
  m.M_sigma = recipe.M_sigma;
  m.source_expression = spec.source;
  return doc;
}

nlohmann::json to_json(const NetworkDocument& doc) {
  nlohmann::json units = nlohmann::json::array();
  for (const auto& u : doc.units) {
    units.push_back({{"hidden_weight", u.hidden_weight},
                     {"hidden_bias", u.hidden_bias},
                     {"output_coefficient", u.output_coefficient}});
  }
  const auto& m = doc.metadata;
  return {{"format_version", doc.format_version},
          {"activation", doc.activation},
          {"units", std::move(units)},
          {"metadata",
           {{"a", m.a},
            {"b", m.b},
            {"N", m.N},
            {"epsilon", m.epsilon},
            {"eta", m.eta},
            {"delta", m.delta},
            {"L", m.L},
            {"M_f", m.M_f},
            {"M_sigma", m.M_sigma},
            {"source_expression", m.source_expression}}}};
}

NetworkDocument network_document_from_json(const nlohmann::json& j) {
  NetworkDocument doc;
  try {
    doc.format_version = j.at("format_version").get<std::string>();
    if (doc.format_version != "1") {
      throw InvalidArgument("network document: unsupported format_version " + doc.format_version);
    }
    doc.activation = j.at("activation").get<std::string>();
    for (const auto& u : j.at("units")) {
      doc.units.push_back({u.at("hidden_weight").get<double>(), u.at("hidden_bias").get<double>(),
                           u.at("output_coefficient").get<double>()});
    }
    const auto& m = j.at("metadata");
    auto& out = doc.metadata;
    out.a = m.at("a").get<double>();
    out.b = m.at("b").get<double>();
    out.N = m.at("N").get<std::size_t>();
    out.epsilon = m.at("epsilon").get<double>();
    out.eta = m.at("eta").get<double>();
    out.delta = m.at("delta").get<double>();
    out.L = m.at("L").get<double>();
    out.M_f = m.at("M_f").get<double>();
    out.M_sigma = m.at("M_sigma").get<double>();
    out.source_expression = m.at("source_expression").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("network document: ") + e.what());
  }
  return doc;
}

SigmoidApproximant approximant_from_document(const NetworkDocument& doc) {
  if (doc.activation != "sigmoid") {
    throw InvalidArgument("network document: only the logistic sigmoid can be rebuilt");
  }
  const auto& m = doc.metadata;
  if (doc.units.size() != m.N + 1) {
    throw InvalidArgument("network document: expected N+1 units");
  }
  UniformPartition p(m.a, m.b, m.N);
  const double w = doc.units.front().hidden_weight;
  std::vector<double> coeffs;
  coeffs.reserve(m.N);
  for (std::size_t u = 0; u < doc.units.size(); ++u) {
    const auto& unit = doc.units[u];
    const double center = p[u == 0 ? 0 : u + 1];
    if (unit.hidden_weight != w || unit.hidden_bias != -w * center) {
      throw InvalidArgument("network document: unit " + std::to_string(u) +
                            " does not match the uniform partition");
    }
    if (u > 0) coeffs.push_back(unit.output_coefficient);
  }
  Recipe r;
  r.a = m.a;
  r.b = m.b;
  r.epsilon = m.epsilon;
  r.M_f = m.M_f;
  r.M_sigma = m.M_sigma;
  r.eta = m.eta;
  r.delta = m.delta;
  if (m.L > 0.0) r.lipschitz = m.L;
  r.N = m.N;
  r.h = p.h();
  r.w = w;
  return SigmoidApproximant(std::move(p), w, doc.units.front().output_coefficient,
                            std::move(coeffs), r);
}

void write_network_document(const NetworkDocument& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << to_json(doc).dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

NetworkDocument read_network_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return network_document_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("network document: ") + e.what());
  }
}

std::size_t write_samples(const SigmoidApproximant& g, const FunctionSpec& spec,
                          std::size_t grid_size, std::ostream& out) {
  if (grid_size < 2) throw InvalidArgument("write_samples: grid_size must be >= 2");
  const auto pts = uniform_grid(g.partition().a(), g.partition().b(), grid_size);
  out << "x,f,g,abs_err\n";
  for (double x : pts) {
    const double fx = spec(x);
    const double gx = evaluate(g, x);
    out << format_double(x) << ',' << format_double(fx) << ',' << format_double(gx) << ','
        << format_double(std::abs(gx - fx)) << '\n';
  }
  if (!out) throw std::runtime_error("write_samples: write failed");
  return pts.size();
}

std::size_t write_samples(const SigmoidApproximant& g, const FunctionSpec& spec,
                          std::size_t grid_size, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return write_samples(g, spec, grid_size, out);
}

}  // namespace uat
