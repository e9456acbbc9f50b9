#include "layerlearn/bilevel.hpp"

#include "layerlearn/propagate.hpp"

namespace layerlearn {

double BilevelProblem::operator()(const Theta& theta) const {
  const AggregatedOperator agg = aggregate(*graph, theta);
  const PropagationOperator op = propagation_operator(agg, theta.lambda);
  const PropagateResult sol = propagate(op, y_train, prop_tol, prop_max_iter);
  if (mode == Mode::Multi) {
    return multiclass_loss(sol.x, test_rows, test_class);
  }
  return binomial_loss(sol.x.col(0), test_rows, test_y01);
}

ObjectiveFn make_multi_objective(const MultilayerGraph& g, const LabelMatrix& labels,
                                 const LabelSplit& split, double prop_tol,
                                 int prop_max_iter) {
  auto p = std::make_shared<BilevelProblem>();
  p->graph = &g;
  p->mode = BilevelProblem::Mode::Multi;
  p->y_train = Panel::Zero(g.nodes(), labels.m);
  for (int i : split.train) {
    p->y_train(i, labels.node_class[static_cast<std::size_t>(i)]) = 1.0;
  }
  p->test_rows = split.test;
  p->test_class.reserve(split.test.size());
  for (int i : split.test) {
    p->test_class.push_back(labels.node_class[static_cast<std::size_t>(i)]);
  }
  p->prop_tol = prop_tol;
  p->prop_max_iter = prop_max_iter;
  return [p](const Theta& theta) { return (*p)(theta); };
}

ObjectiveFn make_binom_objective(const MultilayerGraph& g, const LabelMatrix& labels,
                                 const LabelSplit& split, int k, double prop_tol,
                                 int prop_max_iter) {
  auto p = std::make_shared<BilevelProblem>();
  p->graph = &g;
  p->mode = BilevelProblem::Mode::BinomClass;
  p->y_train = Panel::Zero(g.nodes(), 1);
  for (int i : split.train) {
    if (labels.node_class[static_cast<std::size_t>(i)] == k) p->y_train(i, 0) = 1.0;
  }
  p->test_rows = split.test;
  p->test_y01.reserve(split.test.size());
  for (int i : split.test) {
    p->test_y01.push_back(labels.node_class[static_cast<std::size_t>(i)] == k ? 1 : 0);
  }
  p->prop_tol = prop_tol;
  p->prop_max_iter = prop_max_iter;
  return [p](const Theta& theta) { return (*p)(theta); };
}

}  // namespace layerlearn
