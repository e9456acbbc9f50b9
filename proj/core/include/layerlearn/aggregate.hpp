#ifndef LAYERLEARN_AGGREGATE_HPP
#define LAYERLEARN_AGGREGATE_HPP

#include <Eigen/Core>
#include <cstddef>

#include "layerlearn/multilayer.hpp"
#include "layerlearn/sparse_sym.hpp"
#include "layerlearn/theta.hpp"

namespace layerlearn {

// Dense node-by-class panel. Row-major so a node's row is contiguous during
// sparse row traversals.
using Panel = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Below this |alpha| the entrywise mean is evaluated as the weighted geometric
// mean in log domain (the alpha -> 0 limit); 1/alpha is unusable there.
inline constexpr double kAlphaSwitch = 1e-6;

// Entrywise generalized power mean of one support row: values[k] are the K
// layer weights at a pair, beta the layer weights. Layers with beta_k = 0 are
// excluded before any zero test; for alpha <= 0 a zero entry in any remaining
// layer annihilates the result (the analytic limit), for alpha > 0 zero
// entries simply contribute nothing. Evaluated in scaled form so |alpha| up to
// the box bound cannot overflow.
double power_mean_entry(const double* values, const double* beta, int k, double alpha);

// The aggregated operator A(theta) restricted to the union support, plus its
// degree vector. `values` is aligned with graph.support().pairs; dropped
// entries hold exact zero.
struct AggregatedOperator {
  const MultilayerGraph* graph = nullptr;
  Theta theta;
  Eigen::VectorXd values;
  Eigen::VectorXd deg;
  std::vector<double> slot_values;  // values expanded to directed CSR slots
  std::size_t positive_entries = 0;

  int nodes() const { return graph->nodes(); }

  // Recomputes deg, positive_entries and slot_values from `values`. Must be
  // called after filling `values` by hand.
  void finalize_from_values();

  // out = A * x over the support (both orientations).
  void apply_adjacency(const Panel& x, Panel& out) const;

  // Materializes the positive entries as a SparseSym (for export/inspection).
  SparseSym adjacency() const;
};

// A(theta) per the entrywise generalized mean. beta may sit off the simplex
// (finite-difference probes do this); it is evaluated literally, never
// renormalized. Negative beta components are rejected.
AggregatedOperator aggregate(const MultilayerGraph& g, const Theta& theta);

// Exact limiting aggregations. Min and max ignore the beta values and act on
// layers with beta_k > 0; geometric is the beta-weighted geometric mean.
enum class LimitMean { Min, Geometric, Max };
AggregatedOperator aggregate_limit(const MultilayerGraph& g, LimitMean which,
                                   const Eigen::VectorXd& beta);

// Label-propagation operator pair: the map P x = lambda * (I + lambda D)^{-1} A x
// and the diagonal scaling b_map = (I + lambda D)^{-1}, kept as composable
// actions. The fixed point of x -> P x + b_map y solves (I + lambda L) x = y.
struct PropagationOperator {
  const AggregatedOperator* agg = nullptr;
  double lambda = 1.0;
  Eigen::VectorXd bmap;  // 1 / (1 + lambda * deg_i)

  int nodes() const { return agg->nodes(); }

  // out = lambda * bmap .* (A x)
  void apply(const Panel& x, Panel& out) const;
};

PropagationOperator propagation_operator(const AggregatedOperator& agg, double lambda);

}  // namespace layerlearn

#endif
