#ifndef LAYERLEARN_MULTILAYER_HPP
#define LAYERLEARN_MULTILAYER_HPP

#include <string>
#include <utility>
#include <vector>

#include "layerlearn/sparse_sym.hpp"

namespace layerlearn {

// Union support of all layers, with per-pair layer values gathered into a
// dense K-slot row and a CSR view of the symmetrized pattern. Built once per
// graph; every aggregation reuses it, only the per-pair values change.
struct AggregationSupport {
  int n = 0;
  int k = 0;
  std::vector<std::pair<int, int>> pairs;  // sorted, i < j
  std::vector<double> layer_values;        // pairs.size() * k, pair-major
  std::vector<int> adj_offsets;            // n + 1, directed slots
  std::vector<int> adj_nbr;                // neighbor per directed slot
  std::vector<int> adj_pair;               // pair index per directed slot

  static AggregationSupport build(const std::vector<SparseSym>& layers, int n);
};

// A multiplex graph: K sparse symmetric layers over one shared node set,
// node indices 0..N-1.
class MultilayerGraph {
 public:
  MultilayerGraph() = default;
  explicit MultilayerGraph(std::vector<SparseSym> layers,
                           std::vector<std::string> layer_names = {});

  int nodes() const { return n_; }
  int layer_count() const { return static_cast<int>(layers_.size()); }
  const SparseSym& layer(int k) const { return layers_.at(static_cast<std::size_t>(k)); }
  const std::vector<SparseSym>& layers() const { return layers_; }
  const std::vector<std::string>& layer_names() const { return names_; }
  const AggregationSupport& support() const { return support_; }

 private:
  int n_ = 0;
  std::vector<SparseSym> layers_;
  std::vector<std::string> names_;
  AggregationSupport support_;
};

}  // namespace layerlearn

#endif
