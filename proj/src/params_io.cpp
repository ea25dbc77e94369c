#include "liqsched/params_io.hpp"

#include <fstream>

#include "liqsched/errors.hpp"

namespace liqsched {

namespace {

using nlohmann::json;

const json& require_key(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw ValidationError(std::string("market document is missing key '") +
                          key + "'");
  }
  return *it;
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ValidationError(where + " must be a number");
  return v.get<double>();
}

Vector as_vector(const json& v, const char* key) {
  if (!v.is_array()) {
    throw ValidationError(std::string("'") + key + "' must be an array");
  }
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) =
        as_number(v[i], std::string(key) + "[" + std::to_string(i) + "]");
  }
  return out;
}

Matrix as_matrix(const json& v, const char* key, std::size_t n) {
  if (!v.is_array() || v.size() != n) {
    throw DimensionError(std::string("'") + key + "' must have " +
                         std::to_string(n) + " rows");
  }
  Matrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = v[i];
    if (!row.is_array() || row.size() != n) {
      throw DimensionError(std::string("'") + key + "' row " +
                           std::to_string(i + 1) + " must have " +
                           std::to_string(n) + " entries");
    }
    for (std::size_t j = 0; j < n; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          as_number(row[j], std::string(key) + "[" + std::to_string(i) + "][" +
                                std::to_string(j) + "]");
    }
  }
  return out;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

MarketDocument market_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("market document must be an object");
  Vector s0 = as_vector(require_key(doc, "s0"), "s0");
  const auto n = static_cast<std::size_t>(s0.size());
  if (n == 0) throw DimensionError("'s0' must not be empty");
  Vector x0 = as_vector(require_key(doc, "x0"), "x0");
  Vector eta = as_vector(require_key(doc, "eta"), "eta");
  Matrix sigma = as_matrix(require_key(doc, "sigma"), "sigma", n);
  Matrix gamma = as_matrix(require_key(doc, "gamma"), "gamma", n);
  double p = kDefaultConfidence;
  if (auto it = doc.find("p"); it != doc.end()) p = as_number(*it, "'p'");
  return MarketDocument{
      MarketParams(std::move(s0), std::move(x0), std::move(sigma),
                   std::move(gamma), std::move(eta)),
      RiskLevel::from_probability(p)};
}

json market_to_json(const MarketParams& params, const RiskLevel& risk) {
  return json{{"s0", vector_json(params.s0())},
              {"x0", vector_json(params.x0())},
              {"sigma", matrix_json(params.sigma())},
              {"gamma", matrix_json(params.gamma())},
              {"eta", vector_json(params.eta())},
              {"p", risk.p()}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

MarketDocument load_market(const std::filesystem::path& path) {
  return market_from_json(read_json_file(path));
}

}  // namespace liqsched
