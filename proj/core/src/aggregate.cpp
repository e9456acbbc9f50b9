#include "layerlearn/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace layerlearn {

double power_mean_entry(const double* values, const double* beta, int k, double alpha) {
  if (std::abs(alpha) < kAlphaSwitch) {
    // Weighted geometric mean in log domain. A zero entry in any layer with
    // beta_k > 0 annihilates the product.
    double beta_sum = 0.0;
    double log_sum = 0.0;
    for (int i = 0; i < k; ++i) {
      if (beta[i] <= 0.0) continue;
      if (values[i] <= 0.0) return 0.0;
      beta_sum += beta[i];
      log_sum += beta[i] * std::log(values[i]);
    }
    if (beta_sum <= 0.0) return 0.0;
    return std::exp(log_sum / beta_sum);
  }

  if (alpha == 1.0) {
    double s = 0.0;
    for (int i = 0; i < k; ++i) {
      if (beta[i] > 0.0) s += beta[i] * values[i];
    }
    return s;
  }

  if (alpha > 0.0) {
    // Scale by the largest contributing entry; (a/m)^alpha <= 1.
    double m = 0.0;
    for (int i = 0; i < k; ++i) {
      if (beta[i] > 0.0 && values[i] > m) m = values[i];
    }
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (int i = 0; i < k; ++i) {
      if (beta[i] <= 0.0 || values[i] <= 0.0) continue;
      s += beta[i] * std::pow(values[i] / m, alpha);
    }
    return m * std::pow(s, 1.0 / alpha);
  }

  // alpha < 0: an absent entry in any contributing layer annihilates (the
  // analytic limit of the formula). Scale by the smallest entry, (a/m)^alpha <= 1.
  double m = std::numeric_limits<double>::infinity();
  bool any = false;
  for (int i = 0; i < k; ++i) {
    if (beta[i] <= 0.0) continue;
    if (values[i] <= 0.0) return 0.0;
    m = std::min(m, values[i]);
    any = true;
  }
  if (!any) return 0.0;
  double s = 0.0;
  for (int i = 0; i < k; ++i) {
    if (beta[i] <= 0.0) continue;
    s += beta[i] * std::pow(values[i] / m, alpha);
  }
  return m * std::pow(s, 1.0 / alpha);
}

namespace {

AggregatedOperator make_operator(const MultilayerGraph& g, Theta theta) {
  AggregatedOperator op;
  op.graph = &g;
  op.theta = std::move(theta);
  const auto& s = g.support();
  op.values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(s.pairs.size()));
  op.deg = Eigen::VectorXd::Zero(s.n);
  return op;
}

}  // namespace

void AggregatedOperator::finalize_from_values() {
  const auto& s = graph->support();
  deg.setZero(s.n);
  positive_entries = 0;
  for (std::size_t p = 0; p < s.pairs.size(); ++p) {
    const double w = values(static_cast<Eigen::Index>(p));
    if (w <= 0.0) continue;
    ++positive_entries;
    deg(s.pairs[p].first) += w;
    deg(s.pairs[p].second) += w;
  }
  slot_values.resize(s.adj_pair.size());
  for (std::size_t t = 0; t < s.adj_pair.size(); ++t) {
    slot_values[t] = values(s.adj_pair[static_cast<std::size_t>(t)]);
  }
}

AggregatedOperator aggregate(const MultilayerGraph& g, const Theta& theta) {
  if (theta.k() != g.layer_count())
    throw std::invalid_argument("aggregate: beta dimension does not match layer count");
  double beta_sum = 0.0;
  for (int i = 0; i < theta.k(); ++i) {
    if (theta.beta(i) < 0.0)
      throw std::invalid_argument("aggregate: negative beta component");
    beta_sum += theta.beta(i);
  }
  if (beta_sum <= 0.0) throw std::invalid_argument("aggregate: beta sums to zero");

  AggregatedOperator op = make_operator(g, theta);
  const auto& s = g.support();
  const int k = s.k;
  for (std::size_t p = 0; p < s.pairs.size(); ++p) {
    op.values(static_cast<Eigen::Index>(p)) = power_mean_entry(
        s.layer_values.data() + p * static_cast<std::size_t>(k), op.theta.beta.data(), k,
        op.theta.alpha);
  }
  op.finalize_from_values();
  return op;
}

AggregatedOperator aggregate_limit(const MultilayerGraph& g, LimitMean which,
                                   const Eigen::VectorXd& beta) {
  if (beta.size() != g.layer_count())
    throw std::invalid_argument("aggregate_limit: beta dimension does not match layer count");
  Theta theta;
  theta.beta = beta;
  theta.lambda = 1.0;
  switch (which) {
    case LimitMean::Min:
      theta.alpha = -std::numeric_limits<double>::infinity();
      break;
    case LimitMean::Geometric:
      theta.alpha = 0.0;
      break;
    case LimitMean::Max:
      theta.alpha = std::numeric_limits<double>::infinity();
      break;
  }

  AggregatedOperator op = make_operator(g, std::move(theta));
  const auto& s = g.support();
  const int k = s.k;
  for (std::size_t p = 0; p < s.pairs.size(); ++p) {
    const double* vals = s.layer_values.data() + p * static_cast<std::size_t>(k);
    double w = 0.0;
    switch (which) {
      case LimitMean::Min: {
        w = std::numeric_limits<double>::infinity();
        bool any = false;
        for (int i = 0; i < k; ++i) {
          if (beta(i) <= 0.0) continue;
          any = true;
          w = std::min(w, vals[i]);
        }
        if (!any) w = 0.0;
        break;
      }
      case LimitMean::Max: {
        for (int i = 0; i < k; ++i) {
          if (beta(i) > 0.0) w = std::max(w, vals[i]);
        }
        break;
      }
      case LimitMean::Geometric: {
        w = power_mean_entry(vals, beta.data(), k, 0.0);
        break;
      }
    }
    op.values(static_cast<Eigen::Index>(p)) = w;
  }
  op.finalize_from_values();
  return op;
}

void AggregatedOperator::apply_adjacency(const Panel& x, Panel& out) const {
  const auto& s = graph->support();
  const auto m = static_cast<std::size_t>(x.cols());
  out.setZero(x.rows(), x.cols());
  const double* xd = x.data();  // row-major: node rows are contiguous
  double* od = out.data();
  const double* w = slot_values.data();
  const int* nbr = s.adj_nbr.data();

  if (m == 1) {
    for (int i = 0; i < s.n; ++i) {
      double acc = 0.0;
      for (int slot = s.adj_offsets[static_cast<std::size_t>(i)];
           slot < s.adj_offsets[static_cast<std::size_t>(i) + 1]; ++slot) {
        acc += w[slot] * xd[nbr[slot]];
      }
      od[i] = acc;
    }
    return;
  }
  for (int i = 0; i < s.n; ++i) {
    double* orow = od + static_cast<std::size_t>(i) * m;
    for (int slot = s.adj_offsets[static_cast<std::size_t>(i)];
         slot < s.adj_offsets[static_cast<std::size_t>(i) + 1]; ++slot) {
      const double wv = w[slot];
      if (wv == 0.0) continue;
      const double* xrow = xd + static_cast<std::size_t>(nbr[slot]) * m;
      for (std::size_t c = 0; c < m; ++c) orow[c] += wv * xrow[c];
    }
  }
}

SparseSym AggregatedOperator::adjacency() const {
  const auto& s = graph->support();
  std::vector<SparseSym::Entry> entries;
  entries.reserve(positive_entries);
  for (std::size_t p = 0; p < s.pairs.size(); ++p) {
    const double w = values(static_cast<Eigen::Index>(p));
    if (w > 0.0) entries.push_back({s.pairs[p].first, s.pairs[p].second, w});
  }
  return SparseSym::from_entries(nodes(), std::move(entries));
}

PropagationOperator propagation_operator(const AggregatedOperator& agg, double lambda) {
  if (lambda <= 0.0) throw std::invalid_argument("propagation_operator: lambda must be > 0");
  PropagationOperator op;
  op.agg = &agg;
  op.lambda = lambda;
  op.bmap = (1.0 + lambda * agg.deg.array()).inverse().matrix();
  return op;
}

void PropagationOperator::apply(const Panel& x, Panel& out) const {
  agg->apply_adjacency(x, out);
  out.array().colwise() *= lambda * bmap.array();
}

}  // namespace layerlearn
