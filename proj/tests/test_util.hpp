#ifndef LAYERLEARN_TESTS_TEST_UTIL_HPP
#define LAYERLEARN_TESTS_TEST_UTIL_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "layerlearn/aggregate.hpp"
#include "layerlearn/frank_wolfe.hpp"
#include "layerlearn/multilayer.hpp"
#include "layerlearn/rng.hpp"
#include "layerlearn/sparse_sym.hpp"

namespace testutil {

using namespace layerlearn;

// Random multilayer instance. Every potential pair joins each layer
// independently with probability p; weights are uniform in [w_lo, w_hi].
// At least one edge per layer is guaranteed.
inline MultilayerGraph random_graph(Rng& rng, int n, int k, double p, double w_lo,
                                    double w_hi) {
  std::vector<std::vector<SparseSym::Entry>> per_layer(static_cast<std::size_t>(k));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int l = 0; l < k; ++l) {
        if (rng.uniform() < p) {
          per_layer[static_cast<std::size_t>(l)].push_back({i, j, rng.uniform(w_lo, w_hi)});
        }
      }
    }
  }
  for (int l = 0; l < k; ++l) {
    if (per_layer[static_cast<std::size_t>(l)].empty()) {
      per_layer[static_cast<std::size_t>(l)].push_back({0, 1, rng.uniform(w_lo, w_hi)});
    }
  }
  std::vector<SparseSym> layers;
  layers.reserve(static_cast<std::size_t>(k));
  for (auto& entries : per_layer) {
    layers.push_back(SparseSym::from_entries(n, std::move(entries)));
  }
  return MultilayerGraph(std::move(layers));
}

// Variant where the pair set is shared and every layer carries every pair.
inline MultilayerGraph random_graph_full(Rng& rng, int n, int k, double p, double w_lo,
                                         double w_hi) {
  std::vector<std::vector<SparseSym::Entry>> per_layer(static_cast<std::size_t>(k));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform() >= p) continue;
      for (int l = 0; l < k; ++l) {
        per_layer[static_cast<std::size_t>(l)].push_back({i, j, rng.uniform(w_lo, w_hi)});
      }
    }
  }
  for (int l = 0; l < k; ++l) {
    if (per_layer[static_cast<std::size_t>(l)].empty()) {
      per_layer[static_cast<std::size_t>(l)].push_back({0, 1, rng.uniform(w_lo, w_hi)});
    }
  }
  std::vector<SparseSym> layers;
  for (auto& entries : per_layer) {
    layers.push_back(SparseSym::from_entries(n, std::move(entries)));
  }
  return MultilayerGraph(std::move(layers));
}

inline Eigen::MatrixXd dense_adjacency(const AggregatedOperator& agg) {
  const auto& s = agg.graph->support();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(s.n, s.n);
  for (std::size_t p = 0; p < s.pairs.size(); ++p) {
    const double w = agg.values(static_cast<Eigen::Index>(p));
    a(s.pairs[p].first, s.pairs[p].second) = w;
    a(s.pairs[p].second, s.pairs[p].first) = w;
  }
  return a;
}

inline Eigen::MatrixXd dense_laplacian(const AggregatedOperator& agg) {
  const Eigen::MatrixXd a = dense_adjacency(agg);
  Eigen::MatrixXd l = -a;
  l.diagonal() += a.rowwise().sum();
  return l;
}

// Spectral radius by power iteration on a dense nonnegative matrix.
inline double power_iteration_radius(const Eigen::MatrixXd& m, int iters = 300) {
  Eigen::VectorXd x = Eigen::VectorXd::Ones(m.rows());
  double radius = 0.0;
  for (int r = 0; r < iters; ++r) {
    Eigen::VectorXd next = m * x;
    const double norm = next.norm();
    if (norm == 0.0) return 0.0;
    radius = norm / x.norm();
    x = next / norm;
  }
  return radius;
}

// Random theta in S (same draw pattern as FeasibleSet::random_point).
inline Theta random_theta(const FeasibleSet& set, Rng& rng) {
  return set.random_point(rng.next_u64());
}

}  // namespace testutil

#endif
