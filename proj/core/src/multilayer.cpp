#include "layerlearn/multilayer.hpp"

#include <algorithm>
#include <stdexcept>

namespace layerlearn {

AggregationSupport AggregationSupport::build(const std::vector<SparseSym>& layers, int n) {
  AggregationSupport s;
  s.n = n;
  s.k = static_cast<int>(layers.size());

  for (const auto& layer : layers) {
    for (const auto& e : layer.entries()) s.pairs.emplace_back(e.i, e.j);
  }
  std::sort(s.pairs.begin(), s.pairs.end());
  s.pairs.erase(std::unique(s.pairs.begin(), s.pairs.end()), s.pairs.end());

  const std::size_t np = s.pairs.size();
  s.layer_values.assign(np * static_cast<std::size_t>(s.k), 0.0);
  for (int k = 0; k < s.k; ++k) {
    for (const auto& e : layers[static_cast<std::size_t>(k)].entries()) {
      const auto it = std::lower_bound(s.pairs.begin(), s.pairs.end(),
                                       std::pair<int, int>(e.i, e.j));
      const auto p = static_cast<std::size_t>(it - s.pairs.begin());
      s.layer_values[p * static_cast<std::size_t>(s.k) + static_cast<std::size_t>(k)] = e.w;
    }
  }

  // CSR over the symmetrized pattern: every pair yields two directed slots.
  std::vector<int> counts(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [i, j] : s.pairs) {
    ++counts[static_cast<std::size_t>(i) + 1];
    ++counts[static_cast<std::size_t>(j) + 1];
  }
  s.adj_offsets.resize(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 0; v < n; ++v) {
    s.adj_offsets[static_cast<std::size_t>(v) + 1] =
        s.adj_offsets[static_cast<std::size_t>(v)] + counts[static_cast<std::size_t>(v) + 1];
  }
  s.adj_nbr.resize(2 * np);
  s.adj_pair.resize(2 * np);
  std::vector<int> cursor(s.adj_offsets.begin(), s.adj_offsets.end() - 1);
  for (std::size_t p = 0; p < np; ++p) {
    const auto [i, j] = s.pairs[p];
    auto& ci = cursor[static_cast<std::size_t>(i)];
    s.adj_nbr[static_cast<std::size_t>(ci)] = j;
    s.adj_pair[static_cast<std::size_t>(ci)] = static_cast<int>(p);
    ++ci;
    auto& cj = cursor[static_cast<std::size_t>(j)];
    s.adj_nbr[static_cast<std::size_t>(cj)] = i;
    s.adj_pair[static_cast<std::size_t>(cj)] = static_cast<int>(p);
    ++cj;
  }
  return s;
}

MultilayerGraph::MultilayerGraph(std::vector<SparseSym> layers,
                                 std::vector<std::string> layer_names)
    : layers_(std::move(layers)), names_(std::move(layer_names)) {
  if (layers_.empty()) throw std::invalid_argument("multilayer graph needs K >= 1 layers");
  n_ = layers_.front().nodes();
  for (const auto& l : layers_) {
    if (l.nodes() != n_)
      throw std::invalid_argument("all layers must share the same node count");
  }
  if (names_.empty()) {
    names_.reserve(layers_.size());
    for (std::size_t k = 0; k < layers_.size(); ++k)
      names_.push_back("layer" + std::to_string(k));
  }
  if (names_.size() != layers_.size())
    throw std::invalid_argument("layer_names size must match layer count");
  support_ = AggregationSupport::build(layers_, n_);
}

}  // namespace layerlearn
