#include "layerlearn/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "layerlearn/bilevel.hpp"
#include "layerlearn/errors.hpp"
#include "layerlearn/parallel.hpp"
#include "layerlearn/propagate.hpp"
#include "layerlearn/rng.hpp"

namespace layerlearn {

const char* method_name(Method m) {
  switch (m) {
    case Method::Multi: return "MULTI";
    case Method::Binom: return "BINOM";
    case Method::Min: return "MIN";
    case Method::Geom: return "GEOM";
    case Method::Arit: return "ARIT";
    case Method::Harm: return "HARM";
    case Method::Max: return "MAX";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::Multi, Method::Binom, Method::Min, Method::Geom,
                   Method::Arit, Method::Harm, Method::Max}) {
    if (name == method_name(m)) return m;
  }
  throw std::invalid_argument("unknown method '" + name + "'");
}

bool is_fixed_mean(Method m) { return m != Method::Multi && m != Method::Binom; }

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct SweepOutcome {
  LearnedParams winner;
  std::vector<std::string> warnings;
};

// Runs the (fold x start) multistart sweep for one objective family and picks
// the lowest test loss; ties resolve to the lower fold, then lower start id.
// Folds may be absent (degenerate split, skipped with a warning upstream);
// their loss-table rows stay NaN.
SweepOutcome sweep_folds(
    int n_folds, const std::vector<std::pair<int, ObjectiveFn>>& fold_objectives,
    const FeasibleSet& set, const ExperimentConfig& cfg, std::uint64_t sweep_seed) {
  const int n_starts = cfg.n_starts;
  const int n_active = static_cast<int>(fold_objectives.size());
  const int total = n_active * n_starts;
  if (total == 0) throw NumericError("no usable folds");

  // All start points are generated up front so the result cannot depend on
  // thread scheduling. Random starts are keyed by the fold id, not the active
  // index, so skipping a fold does not shift the others.
  Rng root(sweep_seed);
  std::vector<std::vector<Theta>> starts(static_cast<std::size_t>(n_active));
  for (int a = 0; a < n_active; ++a) {
    auto& fs = starts[static_cast<std::size_t>(a)];
    fs.push_back(Theta::uniform(set.k, 1.0, 1.0));
    fs.push_back(Theta::uniform(set.k, -1.0, 1.0));
    Rng fold_rng = root.fork(static_cast<std::uint64_t>(fold_objectives[static_cast<std::size_t>(a)].first));
    for (int s = 2; s < n_starts; ++s) {
      fs.push_back(set.random_point(fold_rng.fork(static_cast<std::uint64_t>(s)).seed()));
    }
  }

  std::vector<RunResult> runs(static_cast<std::size_t>(total));
  parallel_for(total, cfg.threads, [&](int t) {
    const int a = t / n_starts;
    const int s = t % n_starts;
    runs[static_cast<std::size_t>(t)] =
        fw_solve(fold_objectives[static_cast<std::size_t>(a)].second,
                 starts[static_cast<std::size_t>(a)][static_cast<std::size_t>(s)], set,
                 cfg.opt, nullptr, s);
  });

  SweepOutcome out;
  out.winner.loss_table.assign(static_cast<std::size_t>(n_folds),
                               std::vector<double>(static_cast<std::size_t>(n_starts),
                                                   std::numeric_limits<double>::quiet_NaN()));
  int best = -1;
  for (int t = 0; t < total; ++t) {
    const auto& r = runs[static_cast<std::size_t>(t)];
    const int fold = fold_objectives[static_cast<std::size_t>(t / n_starts)].first;
    const int s = t % n_starts;
    if (r.failed) {
      out.warnings.push_back("fold " + std::to_string(fold) + " start " + std::to_string(s) +
                             " aborted: " + r.fail_reason);
      continue;
    }
    out.winner.loss_table[static_cast<std::size_t>(fold)][static_cast<std::size_t>(s)] = r.f_star;
    if (best < 0 || r.f_star < runs[static_cast<std::size_t>(best)].f_star) best = t;
  }
  if (best < 0) throw NumericError("every optimizer run failed");

  const auto& win = runs[static_cast<std::size_t>(best)];
  out.winner.theta = win.theta_star;
  out.winner.loss = win.f_star;
  out.winner.fold = fold_objectives[static_cast<std::size_t>(best / n_starts)].first;
  out.winner.start = best % n_starts;
  out.winner.trace = win.trace;
  return out;
}

Panel known_one_hot(const LabelMatrix& known) {
  Panel y = Panel::Zero(known.n, known.m);
  for (int i = 0; i < known.n; ++i) {
    const int c = known.node_class[static_cast<std::size_t>(i)];
    if (c >= 0) y(i, c) = 1.0;
  }
  return y;
}

void finish_with_scores(MethodResult& res, const Panel& scores, const LabelMatrix& known,
                        const std::vector<int>* truth) {
  res.predictions = classify(scores, &res.degenerate_rows);
  if (truth) {
    std::vector<int> held_out;
    for (int i = 0; i < known.n; ++i) {
      if (known.node_class[static_cast<std::size_t>(i)] < 0) held_out.push_back(i);
    }
    if (!held_out.empty()) {
      res.accuracy = accuracy(res.predictions, *truth, held_out);
    }
  }
}

FeasibleSet feasible_set_for(const MultilayerGraph& g, const ExperimentConfig& cfg) {
  FeasibleSet s;
  s.k = g.layer_count();
  s.alpha_box = cfg.alpha_box;
  s.lambda_min = cfg.lambda_min;
  s.lambda_max = cfg.lambda_max;
  return s;
}

}  // namespace

MethodResult run_multi(const MultilayerGraph& g, const LabelMatrix& known,
                       const std::vector<int>* truth, const ExperimentConfig& cfg) {
  const auto t0 = Clock::now();
  if (known.m < 2) throw std::invalid_argument("run_multi: need labels for >= 2 classes");

  MethodResult res;
  res.method = Method::Multi;

  std::vector<std::pair<int, ObjectiveFn>> objectives;
  objectives.reserve(static_cast<std::size_t>(cfg.n_folds));
  for (int fold = 0; fold < cfg.n_folds; ++fold) {
    const LabelSplit split =
        split_labels(known, fold, cfg.seed, cfg.n_folds, cfg.stratified, &res.warnings);
    if (split.test.empty() || split.train.empty()) {
      res.warnings.push_back("fold " + std::to_string(fold) + " skipped: degenerate split");
      continue;
    }
    objectives.emplace_back(
        fold, make_multi_objective(g, known, split, cfg.prop_tol, cfg.prop_max_iter));
  }

  SweepOutcome sweep =
      sweep_folds(cfg.n_folds, objectives, feasible_set_for(g, cfg), cfg, cfg.seed);
  res.warnings.insert(res.warnings.end(), sweep.warnings.begin(), sweep.warnings.end());
  res.learned.push_back(std::move(sweep.winner));

  // Final classifier: propagate every initially known label at theta*.
  const Theta& theta = res.learned.front().theta;
  const AggregatedOperator agg = aggregate(g, theta);
  const PropagationOperator op = propagation_operator(agg, theta.lambda);
  const PropagateResult sol = propagate(op, known_one_hot(known), cfg.prop_tol, cfg.prop_max_iter);
  finish_with_scores(res, sol.x, known, truth);
  res.seconds = seconds_since(t0);
  return res;
}

MethodResult run_binom(const MultilayerGraph& g, const LabelMatrix& known,
                       const std::vector<int>* truth, const ExperimentConfig& cfg) {
  const auto t0 = Clock::now();
  if (known.m < 1) throw std::invalid_argument("run_binom: need at least one class");

  MethodResult res;
  res.method = Method::Binom;

  std::vector<std::pair<int, LabelSplit>> splits;
  splits.reserve(static_cast<std::size_t>(cfg.n_folds));
  for (int fold = 0; fold < cfg.n_folds; ++fold) {
    LabelSplit split =
        split_labels(known, fold, cfg.seed, cfg.n_folds, cfg.stratified, &res.warnings);
    if (split.test.empty() || split.train.empty()) {
      res.warnings.push_back("fold " + std::to_string(fold) + " skipped: degenerate split");
      continue;
    }
    splits.emplace_back(fold, std::move(split));
  }

  for (int k = 0; k < known.m; ++k) {
    std::vector<std::pair<int, ObjectiveFn>> objectives;
    objectives.reserve(splits.size());
    for (const auto& [fold, split] : splits) {
      objectives.emplace_back(
          fold, make_binom_objective(g, known, split, k, cfg.prop_tol, cfg.prop_max_iter));
    }
    SweepOutcome sweep = sweep_folds(cfg.n_folds, objectives, feasible_set_for(g, cfg), cfg,
                                     cfg.seed + 0x51ed2701u * static_cast<std::uint64_t>(k + 1));
    for (auto& w : sweep.warnings) {
      res.warnings.push_back("class " + known.class_names[static_cast<std::size_t>(k)] +
                             ": " + w);
    }
    res.learned.push_back(std::move(sweep.winner));
  }

  // Final classifier: each class column propagates under its own theta, nodes
  // take the argmax across the per-class score columns.
  const Panel y_all = known_one_hot(known);
  Panel scores = Panel::Zero(known.n, known.m);
  for (int k = 0; k < known.m; ++k) {
    const Theta& theta = res.learned[static_cast<std::size_t>(k)].theta;
    const AggregatedOperator agg = aggregate(g, theta);
    const PropagationOperator op = propagation_operator(agg, theta.lambda);
    const Panel y_col = y_all.col(k);
    const PropagateResult sol = propagate(op, y_col, cfg.prop_tol, cfg.prop_max_iter);
    scores.col(k) = sol.x.col(0);
  }
  finish_with_scores(res, scores, known, truth);
  res.seconds = seconds_since(t0);
  return res;
}

AggregatedOperator fixed_mean_operator(const MultilayerGraph& g, Method method) {
  const int k = g.layer_count();
  const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(k, 1.0 / k);
  switch (method) {
    case Method::Min:
      return aggregate_limit(g, LimitMean::Min, uniform);
    case Method::Geom:
      return aggregate_limit(g, LimitMean::Geometric, uniform);
    case Method::Max:
      return aggregate_limit(g, LimitMean::Max, uniform);
    case Method::Arit: {
      Theta t = Theta::uniform(k, 1.0, 1.0);
      return aggregate(g, t);
    }
    case Method::Harm: {
      // Harmonic mean of the layers carrying each pair.
      AggregatedOperator op;
      op.graph = &g;
      op.theta = Theta::uniform(k, -1.0, 1.0);
      const auto& s = g.support();
      op.values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(s.pairs.size()));
      for (std::size_t p = 0; p < s.pairs.size(); ++p) {
        const double* vals = s.layer_values.data() + p * static_cast<std::size_t>(k);
        double inv_sum = 0.0;
        int present = 0;
        for (int i = 0; i < k; ++i) {
          if (vals[i] > 0.0) {
            inv_sum += 1.0 / vals[i];
            ++present;
          }
        }
        op.values(static_cast<Eigen::Index>(p)) =
            present > 0 ? static_cast<double>(present) / inv_sum : 0.0;
      }
      op.finalize_from_values();
      return op;
    }
    default:
      throw std::invalid_argument("fixed_mean_operator: not a fixed-mean method");
  }
}

MethodResult run_fixed_mean(const MultilayerGraph& g, const LabelMatrix& known,
                            const std::vector<int>* truth, Method method,
                            double prop_tol, int prop_max_iter) {
  const auto t0 = Clock::now();
  if (!is_fixed_mean(method))
    throw std::invalid_argument("run_fixed_mean: method has learned parameters");

  MethodResult res;
  res.method = method;
  const AggregatedOperator agg = fixed_mean_operator(g, method);
  const PropagationOperator op = propagation_operator(agg, 1.0);  // fixed lambda = 1
  const PropagateResult sol = propagate(op, known_one_hot(known), prop_tol, prop_max_iter);
  finish_with_scores(res, sol.x, known, truth);
  res.seconds = seconds_since(t0);
  return res;
}

MethodResult run_method(const MultilayerGraph& g, const LabelMatrix& known,
                        const std::vector<int>* truth, Method method,
                        const ExperimentConfig& cfg) {
  switch (method) {
    case Method::Multi:
      return run_multi(g, known, truth, cfg);
    case Method::Binom:
      return run_binom(g, known, truth, cfg);
    default:
      return run_fixed_mean(g, known, truth, method, cfg.prop_tol, cfg.prop_max_iter);
  }
}

}  // namespace layerlearn
