#include "layerlearn/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "layerlearn/errors.hpp"

namespace layerlearn {

namespace {
constexpr double kLogFloor = 1e-12;
}

PropagateResult propagate(const PropagationOperator& op, const Panel& y,
                          double tol, int max_iter) {
  if (tol <= 0.0) throw std::invalid_argument("propagate: tol must be > 0");

  PropagateResult res;
  Panel b = y;
  b.array().colwise() *= op.bmap.array();

  res.x = b;
  Panel ax(y.rows(), y.cols());
  const auto n = static_cast<std::size_t>(y.rows());
  const auto m = static_cast<std::size_t>(y.cols());
  for (int r = 0; r < max_iter; ++r) {
    op.agg->apply_adjacency(res.x, ax);
    // fused update: ax <- lambda * bmap .* ax + b, tracking the step size
    double diff = 0.0;
    double* a = ax.data();
    const double* bd = b.data();
    const double* xd = res.x.data();
    for (std::size_t i = 0; i < n; ++i) {
      const double scale = op.lambda * op.bmap(static_cast<Eigen::Index>(i));
      for (std::size_t c = 0; c < m; ++c) {
        const std::size_t t = i * m + c;
        const double v = scale * a[t] + bd[t];
        diff = std::max(diff, std::abs(v - xd[t]));
        a[t] = v;
      }
    }
    res.x.swap(ax);
    res.iterations = r + 1;
    res.last_diff = diff;
    if (!std::isfinite(diff)) {
      throw NumericError("propagate: non-finite update at iteration " + std::to_string(r));
    }
    if (diff <= tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

double multiclass_loss(const Panel& x, std::span<const int> rows,
                       std::span<const int> row_class, int* degenerate_rows) {
  if (rows.empty()) throw std::invalid_argument("multiclass_loss: empty test set");
  int degenerate = 0;
  double loss = 0.0;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const int i = rows[t];
    const double denom = x.row(i).sum();
    double p = 0.0;
    if (denom > 0.0) {
      p = x(i, row_class[t]) / denom;
    } else {
      ++degenerate;
    }
    loss -= std::log(std::max(p, kLogFloor));
  }
  if (degenerate_rows) *degenerate_rows = degenerate;
  return loss / static_cast<double>(rows.size());
}

double binomial_loss(const Eigen::VectorXd& x, std::span<const int> rows,
                     std::span<const std::uint8_t> y01) {
  if (rows.empty()) throw std::invalid_argument("binomial_loss: empty test set");
  double loss = 0.0;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const double v = std::clamp(x(rows[t]), kLogFloor, 1.0 - kLogFloor);
    loss -= y01[t] ? std::log(v) : std::log1p(-v);
  }
  return loss / static_cast<double>(rows.size());
}

std::vector<int> classify(const Panel& x, int* zero_rows) {
  std::vector<int> labels(static_cast<std::size_t>(x.rows()));
  int zeros = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    int best = 0;
    double best_v = x(i, 0);
    for (Eigen::Index j = 1; j < x.cols(); ++j) {
      if (x(i, j) > best_v) {
        best_v = x(i, j);
        best = static_cast<int>(j);
      }
    }
    if (x.row(i).sum() == 0.0) ++zeros;
    labels[static_cast<std::size_t>(i)] = best;
  }
  if (zero_rows) *zero_rows = zeros;
  return labels;
}

double accuracy(std::span<const int> pred, std::span<const int> truth,
                std::span<const int> eval_set) {
  if (eval_set.empty()) throw std::domain_error("accuracy: empty evaluation set");
  std::size_t correct = 0;
  for (int i : eval_set) {
    if (pred[static_cast<std::size_t>(i)] == truth[static_cast<std::size_t>(i)]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(eval_set.size());
}

}  // namespace layerlearn
