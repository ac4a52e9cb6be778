#ifndef BJET_TOOLS_CONFIG_HPP_
#define BJET_TOOLS_CONFIG_HPP_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bjet/bergman.hpp"
#include "bjet/lemma_lab.hpp"

namespace bjet::cli {

using Json = nlohmann::json;

/// One lemma-lab battery entry parsed from the config.
struct LemmaCheckSpec {
  enum class Type { KernelLimit, Averaging, Compare } type = Type::KernelLimit;
  std::string label;
  // kernel_limit
  OneDFunction f;
  double c = 1.0;
  double q = 2.0;
  std::vector<double> s_grid;
  double tol = 1e-3;
  // averaging
  OneDFunction p_fn;
  std::vector<double> u_grid;
  // compare
  std::vector<int> monomial;
  int p = 2;
  double s = -4.0;
  std::vector<double> t_schedule;
  double c_bound = 1.0;
};

struct RunConfig {
  ModelContext ctx;
  int p = 2;
  JetSection jet;
  BasisTruncation trunc;
  QuadratureConfig quad;

  // cmd metric
  std::vector<double> t_schedule{-20.0, -25.0, -30.0};
  std::vector<Complex> base_point;
  double agreement_tol = 1e-4;

  // cmd extend
  double bound_tol = 5e-3;

  // cmd sweep
  std::vector<double> q_grid{2.0, 3.0, 5.0};
  std::vector<double> s_grid;
  double sweep_check_tol = 1e-5;
  double limit_tol = 1e-4;

  // cmd lemmas
  std::vector<LemmaCheckSpec> checks;
};

/// Parses and validates the JSON config; throws ConfigError with a
/// diagnostic on any schema violation.
RunConfig parse_config(const Json& j);

RunConfig load_config_file(const std::string& path);

}  // namespace bjet::cli

#endif  // BJET_TOOLS_CONFIG_HPP_
