#ifndef LAYERLEARN_BILEVEL_HPP
#define LAYERLEARN_BILEVEL_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "layerlearn/aggregate.hpp"
#include "layerlearn/frank_wolfe.hpp"
#include "layerlearn/labels.hpp"
#include "layerlearn/multilayer.hpp"

namespace layerlearn {

// Outer objective of the bilevel problem: aggregate at theta, propagate the
// train labels through (I + lambda L(theta))^{-1}, score the test rows with
// the mode's cross-entropy. Pure in theta over shared read-only data, so
// concurrent evaluation is safe.
struct BilevelProblem {
  enum class Mode { Multi, BinomClass };

  const MultilayerGraph* graph = nullptr;
  Mode mode = Mode::Multi;
  Panel y_train;                        // N x m one-hot (Multi) or N x 1 (Binom)
  std::vector<int> test_rows;
  std::vector<int> test_class;          // Multi: class index per test row
  std::vector<std::uint8_t> test_y01;   // Binom: one-vs-all target per test row
  double prop_tol = 1e-10;
  int prop_max_iter = 10000;

  double operator()(const Theta& theta) const;
};

// Multiclass objective for one train/test split.
ObjectiveFn make_multi_objective(const MultilayerGraph& g, const LabelMatrix& labels,
                                 const LabelSplit& split, double prop_tol = 1e-10,
                                 int prop_max_iter = 10000);

// One-vs-all binomial objective for class k on one split.
ObjectiveFn make_binom_objective(const MultilayerGraph& g, const LabelMatrix& labels,
                                 const LabelSplit& split, int k, double prop_tol = 1e-10,
                                 int prop_max_iter = 10000);

}  // namespace layerlearn

#endif
