#ifndef LAYERLEARN_PROPAGATE_HPP
#define LAYERLEARN_PROPAGATE_HPP

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

#include "layerlearn/aggregate.hpp"

namespace layerlearn {

struct PropagateResult {
  Panel x;
  int iterations = 0;
  bool converged = false;
  double last_diff = 0.0;
};

// Fixed-point label propagation x <- P x + b_map y starting from x0 = b_map y.
// Converges to the solution of (I + lambda L) x = y since the spectral radius
// of P is below one by construction. All columns advance together. Stops when
// the max-norm step falls to tol or max_iter is hit (flagged, not an error).
// Throws NumericError if non-finite values appear.
PropagateResult propagate(const PropagationOperator& op, const Panel& y,
                          double tol = 1e-10, int max_iter = 10000);

// Multiclass cross-entropy over the given rows: rows are normalized to a
// distribution, the probability of the true class is floored at 1e-12. An
// all-zero row contributes log of the floor and counts as degenerate.
double multiclass_loss(const Panel& x, std::span<const int> rows,
                       std::span<const int> row_class, int* degenerate_rows = nullptr);

// Binomial cross-entropy over the given rows; x entries are clamped to
// [1e-12, 1 - 1e-12] before the logs.
double binomial_loss(const Eigen::VectorXd& x, std::span<const int> rows,
                     std::span<const std::uint8_t> y01);

// Per-node argmax; ties and all-zero rows resolve to the smallest class index.
std::vector<int> classify(const Panel& x, int* zero_rows = nullptr);

// Fraction of eval_set nodes with pred == truth.
double accuracy(std::span<const int> pred, std::span<const int> truth,
                std::span<const int> eval_set);

}  // namespace layerlearn

#endif
