#ifndef LAYERLEARN_PIPELINE_HPP
#define LAYERLEARN_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "layerlearn/aggregate.hpp"
#include "layerlearn/frank_wolfe.hpp"
#include "layerlearn/labels.hpp"
#include "layerlearn/multilayer.hpp"

namespace layerlearn {

enum class Method { Multi, Binom, Min, Geom, Arit, Harm, Max };

const char* method_name(Method m);
Method parse_method(const std::string& name);
bool is_fixed_mean(Method m);

struct ExperimentConfig {
  int n_folds = 5;
  int n_starts = 10;
  std::uint64_t seed = 0;
  bool stratified = true;
  int threads = 0;  // 0 = hardware concurrency
  FwConfig opt;
  double prop_tol = 1e-10;
  int prop_max_iter = 10000;
  double alpha_box = 20.0;  // feasible-set bounds
  double lambda_min = 0.1;
  double lambda_max = 10.0;
};

// One learned theta plus its provenance: which (fold, start) run won and the
// full test-loss table across all runs (NaN marks failed runs).
struct LearnedParams {
  Theta theta;
  double loss = 0.0;
  int fold = 0;
  int start = 0;
  OptTrace trace;
  std::vector<std::vector<double>> loss_table;  // [fold][start]
};

struct MethodResult {
  Method method = Method::Arit;
  std::vector<LearnedParams> learned;  // 1 for MULTI, one per class for BINOM, none fixed
  std::vector<int> predictions;        // class index per node, all N nodes
  std::optional<double> accuracy;      // on the held-out (initially unlabeled) set
  int degenerate_rows = 0;             // all-zero score rows seen at classification
  std::vector<std::string> warnings;
  double seconds = 0.0;
};

// Multiclass protocol: per fold, multistart-minimize the MULTI objective; the
// (fold, start) pair with the lowest test loss wins (ties to lower fold, then
// lower start). The winner's theta re-propagates every known label and the
// held-out nodes are classified by row argmax.
MethodResult run_multi(const MultilayerGraph& g, const LabelMatrix& known,
                       const std::vector<int>* truth, const ExperimentConfig& cfg);

// One-vs-all protocol: the same fold/start sweep per class with the binomial
// objective; each class's score column is propagated under its own theta and
// nodes take the argmax across columns.
MethodResult run_binom(const MultilayerGraph& g, const LabelMatrix& known,
                       const std::vector<int>* truth, const ExperimentConfig& cfg);

// Fixed aggregation baselines with lambda = 1 and uniform beta. No label split
// is taken, so the baselines cannot see any test fold by construction.
MethodResult run_fixed_mean(const MultilayerGraph& g, const LabelMatrix& known,
                            const std::vector<int>* truth, Method method,
                            double prop_tol = 1e-10, int prop_max_iter = 10000);

MethodResult run_method(const MultilayerGraph& g, const LabelMatrix& known,
                        const std::vector<int>* truth, Method method,
                        const ExperimentConfig& cfg);

// Fixed-rule aggregated operator used by the baselines: arithmetic/harmonic at
// alpha = +-1, exact limits for min/geometric/max. The harmonic baseline
// averages each pair over the layers that carry it (pairs missing from a layer
// would otherwise vanish from the support and the baseline would degenerate to
// the minimum rule).
AggregatedOperator fixed_mean_operator(const MultilayerGraph& g, Method method);

}  // namespace layerlearn

#endif
