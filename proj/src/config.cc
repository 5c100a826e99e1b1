#include "privlqg/config.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace privlqg {
namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "A",       "B",         "C",          "Q",
    "R",       "W",         "U",          "x0_mean",
    "x0_cov",  "t_min",     "t_max",      "alpha",
    "sim_period", "horizon", "trials",    "seed",
    "burn_in", "trace_horizon", "output_dir", "fixed_point_tol",
    "rank_tol"};

[[noreturn]] void Fail(const std::string& key, const std::string& what) {
  throw ConfigError("config key \"" + key + "\": " + what);
}

Matrix ReadMatrix(const json& doc, const std::string& key) {
  if (!doc.contains(key)) {
    throw ConfigError("config is missing required key \"" + key + "\"");
  }
  const json& node = doc.at(key);
  if (node.is_number()) return Matrix::Constant(1, 1, node.get<double>());
  if (!node.is_array() || node.empty()) {
    Fail(key, "expected a number or a non-empty array of rows");
  }
  const std::size_t rows = node.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!node[i].is_array() || node[i].empty()) {
      Fail(key, "row " + std::to_string(i) + " is not a non-empty array");
    }
    if (i == 0) cols = node[i].size();
    if (node[i].size() != cols) Fail(key, "rows have different lengths");
  }
  Matrix M(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (!node[i][j].is_number()) Fail(key, "non-numeric entry");
      M(i, j) = node[i][j].get<double>();
    }
  }
  return M;
}

Vector ReadVector(const json& node, const std::string& key) {
  if (node.is_number()) return Vector::Constant(1, node.get<double>());
  if (!node.is_array()) Fail(key, "expected an array of numbers");
  Vector v(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_number()) Fail(key, "non-numeric entry");
    v[i] = node[i].get<double>();
  }
  return v;
}

template <typename Int>
Int ReadInt(const json& doc, const std::string& key, Int fallback) {
  if (!doc.contains(key)) return fallback;
  const json& node = doc.at(key);
  if (!node.is_number_integer()) Fail(key, "expected an integer");
  if constexpr (std::is_unsigned_v<Int>) {
    if (node.is_number_unsigned()) return node.get<Int>();
    Fail(key, "expected a non-negative integer");
  }
  return node.get<Int>();
}

double ReadDouble(const json& doc, const std::string& key, double fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_number()) Fail(key, "expected a number");
  return doc.at(key).get<double>();
}

std::vector<double> ReadAlphas(const json& node) {
  if (node.is_number()) return {node.get<double>()};
  if (node.is_array()) {
    std::vector<double> alphas;
    for (const auto& v : node) {
      if (!v.is_number()) Fail("alpha", "non-numeric entry");
      alphas.push_back(v.get<double>());
    }
    return alphas;
  }
  if (node.is_object()) {
    for (const char* part : {"start", "stop", "step"}) {
      if (!node.contains(part) || !node.at(part).is_number()) {
        Fail("alpha", std::string("grid needs numeric \"") + part + "\"");
      }
    }
    const double step = node.at("step").get<double>();
    if (!(step > 0.0)) Fail("alpha", "grid step must be positive");
    return AlphaGrid(node.at("start").get<double>(),
                     node.at("stop").get<double>(), step);
  }
  Fail("alpha", "expected a number, an array or a {start, stop, step} grid");
}

json MatrixJson(const Matrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

RunConfig ParseConfig(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config syntax error: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& item : doc.items()) {
    if (!kKnownKeys.contains(item.key())) {
      throw ConfigError("config has unknown key \"" + item.key() + "\"");
    }
  }

  Matrix A = ReadMatrix(doc, "A");
  Matrix B = ReadMatrix(doc, "B");
  Matrix C = ReadMatrix(doc, "C");
  Matrix Q = ReadMatrix(doc, "Q");
  Matrix R = ReadMatrix(doc, "R");
  Matrix W = ReadMatrix(doc, "W");
  Matrix U = ReadMatrix(doc, "U");
  const auto n = A.rows();
  Vector x0_mean = doc.contains("x0_mean")
                       ? ReadVector(doc.at("x0_mean"), "x0_mean")
                       : Vector::Zero(n);
  Matrix x0_cov = doc.contains("x0_cov") ? ReadMatrix(doc, "x0_cov")
                                         : Matrix::Identity(n, n);

  RunConfig config{SystemModel::Create(A, B, C, Q, R, W, U, x0_mean, x0_cov)};
  config.t_min = ReadInt<int>(doc, "t_min", config.t_min);
  config.t_max = ReadInt<int>(doc, "t_max", config.t_max);
  if (doc.contains("alpha")) config.alphas = ReadAlphas(doc.at("alpha"));
  config.sim_period = ReadInt<int>(doc, "sim_period", config.sim_period);
  config.horizon = ReadInt<int>(doc, "horizon", config.horizon);
  config.trials = ReadInt<int>(doc, "trials", config.trials);
  config.seed = ReadInt<std::uint64_t>(doc, "seed", config.seed);
  config.burn_in = ReadInt<int>(doc, "burn_in", config.burn_in);
  config.trace_horizon =
      ReadInt<int>(doc, "trace_horizon", config.trace_horizon);
  if (doc.contains("output_dir")) {
    if (!doc.at("output_dir").is_string()) Fail("output_dir", "expected a string");
    config.output_dir = doc.at("output_dir").get<std::string>();
  }
  config.fixed_point_tol =
      ReadDouble(doc, "fixed_point_tol", config.fixed_point_tol);
  config.rank_tol = ReadDouble(doc, "rank_tol", config.rank_tol);

  if (config.t_min < 1 || config.t_max < config.t_min) {
    throw ConfigError("config keys \"t_min\"/\"t_max\": need 1 <= t_min <= t_max");
  }
  if (config.sim_period < 1) Fail("sim_period", "must be >= 1");
  if (config.trials < 1) Fail("trials", "must be >= 1");
  if (config.horizon < 1) Fail("horizon", "must be >= 1");
  if (config.trace_horizon < 1) Fail("trace_horizon", "must be >= 1");
  if (!(config.fixed_point_tol > 0.0)) Fail("fixed_point_tol", "must be > 0");
  if (!(config.rank_tol > 0.0)) Fail("rank_tol", "must be > 0");
  return config;
}

RunConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseConfig(text.str());
}

RunConfig ExampleConfig() {
  RunConfig config{ExampleModel()};
  config.t_min = 1;
  config.t_max = 10;
  config.alphas = AlphaGrid(7.0, 27.0, 0.5);
  config.sim_period = 3;
  return config;
}

std::string CanonicalConfig(const RunConfig& config) {
  const SystemModel& m = config.model;
  json doc;
  doc["A"] = MatrixJson(m.A);
  doc["B"] = MatrixJson(m.B);
  doc["C"] = MatrixJson(m.C);
  doc["Q"] = MatrixJson(m.Q);
  doc["R"] = MatrixJson(m.R);
  doc["W"] = MatrixJson(m.W);
  doc["U"] = MatrixJson(m.U);
  doc["x0_mean"] = std::vector<double>(m.x0_mean.data(),
                                       m.x0_mean.data() + m.x0_mean.size());
  doc["x0_cov"] = MatrixJson(m.x0_cov);
  doc["t_min"] = config.t_min;
  doc["t_max"] = config.t_max;
  doc["alpha"] = config.alphas;
  doc["sim_period"] = config.sim_period;
  doc["horizon"] = config.horizon;
  doc["trials"] = config.trials;
  doc["seed"] = config.seed;
  doc["burn_in"] = config.burn_in;
  doc["trace_horizon"] = config.trace_horizon;
  doc["fixed_point_tol"] = config.fixed_point_tol;
  doc["rank_tol"] = config.rank_tol;
  return doc.dump();
}

std::string ConfigHash(const RunConfig& config) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : CanonicalConfig(config)) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

std::vector<double> AlphaGrid(double start, double stop, double step) {
  std::vector<double> grid;
  for (long long i = 0;; ++i) {
    const double value = start + static_cast<double>(i) * step;
    if (value > stop + 1e-9 * step) break;
    grid.push_back(value);
  }
  return grid;
}

}  // namespace privlqg
