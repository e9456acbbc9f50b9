#ifndef LAYERLEARN_TOOLS_COMMANDS_HPP
#define LAYERLEARN_TOOLS_COMMANDS_HPP

#include <string>
#include <vector>

#include "cli_config.hpp"

namespace layerlearn::cli {

// Writes edges.tsv, labels_known.tsv, labels_truth.tsv and spec.json for the
// configured synthetic instance. Byte-identical for identical inputs.
void cmd_synth(const CliConfig& cfg, const std::string& out_dir);

struct RunPaths {
  std::string graph;
  std::string labels;
  std::string truth;  // optional, empty = no accuracy
  std::string out_dir;
};

// Trains/evaluates one method on files; writes result.json, predictions.tsv
// and (for learned methods) trace.csv.
void cmd_run(const CliConfig& cfg, const RunPaths& paths);

// Synthetic benchmark grid (3 settings x 4 std levels x all methods) over
// `samples` seeds; writes an aggregate CSV with per-cell mean/stdev plus APR
// and AR summary rows.
void cmd_bench(const CliConfig& cfg, const std::string& suite, int samples,
               const std::string& out_dir);

// Times each method end-to-end on 3-community instances of the given sizes
// (generation excluded, three runs each); writes a timing CSV.
void cmd_scaling(const CliConfig& cfg, const std::vector<int>& sizes,
                 const std::vector<std::string>& methods, const std::string& out_dir);

}  // namespace layerlearn::cli

#endif
