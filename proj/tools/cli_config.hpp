#ifndef LAYERLEARN_TOOLS_CLI_CONFIG_HPP
#define LAYERLEARN_TOOLS_CLI_CONFIG_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "layerlearn/graph_io.hpp"
#include "layerlearn/pipeline.hpp"
#include "layerlearn/synth.hpp"

namespace layerlearn::cli {

// Resolved tool configuration: experiment settings plus the synth and
// optimizer groups. Every output file echoes the resolved form so a run can be
// reproduced from its artifacts alone.
struct CliConfig {
  std::string method = "BINOM";
  int n_folds = 5;
  int n_starts = 10;
  std::uint64_t seed = 0;
  bool stratified = true;
  int threads = 0;
  std::string duplicate_policy = "max";  // orientation-pair rule: max | sum

  FwConfig opt;
  double prop_tol = 1e-10;
  int prop_max_iter = 10000;
  double alpha_box = 20.0;
  double lambda_min = 0.1;
  double lambda_max = 10.0;

  SynthSpec synth;

  // Unknown keys anywhere in the document are rejected.
  static CliConfig from_json(const nlohmann::json& j);
  static CliConfig load_file(const std::string& path);

  nlohmann::json to_json() const;
  ExperimentConfig experiment_config() const;
  PairPolicy pair_policy() const;
};

}  // namespace layerlearn::cli

#endif
