#include "layerlearn/frank_wolfe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "layerlearn/errors.hpp"
#include "layerlearn/parallel.hpp"
#include "layerlearn/rng.hpp"

namespace layerlearn {

bool FeasibleSet::contains(const Theta& t, double simplex_tol) const {
  if (t.k() != k) return false;
  if (std::abs(t.alpha) > alpha_box + simplex_tol) return false;
  if (t.lambda < lambda_min - simplex_tol || t.lambda > lambda_max + simplex_tol) return false;
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    if (t.beta(i) < -simplex_tol) return false;
    sum += t.beta(i);
  }
  return std::abs(sum - 1.0) <= simplex_tol;
}

void FeasibleSet::project_beta(Theta& t) const {
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    if (t.beta(i) < 0.0) t.beta(i) = 0.0;
    sum += t.beta(i);
  }
  if (sum <= 0.0) {
    t.beta.setConstant(1.0 / k);
  } else {
    t.beta /= sum;
  }
}

std::vector<Theta> FeasibleSet::vertices() const {
  std::vector<Theta> out;
  out.reserve(static_cast<std::size_t>(4 * k));
  for (double a : {-alpha_box, alpha_box}) {
    for (int j = 0; j < k; ++j) {
      for (double l : {lambda_min, lambda_max}) {
        Theta t;
        t.alpha = a;
        t.beta = Eigen::VectorXd::Zero(k);
        t.beta(j) = 1.0;
        t.lambda = l;
        out.push_back(std::move(t));
      }
    }
  }
  return out;
}

double FeasibleSet::max_vertex_distance() const {
  const auto vs = vertices();
  double best = 0.0;
  for (std::size_t a = 0; a < vs.size(); ++a) {
    for (std::size_t b = a + 1; b < vs.size(); ++b) {
      best = std::max(best, (vs[a].to_vector() - vs[b].to_vector()).norm());
    }
  }
  return best;
}

Theta FeasibleSet::random_point(std::uint64_t seed) const {
  Rng rng(seed);
  Theta t;
  t.alpha = rng.uniform(-alpha_box, alpha_box);
  const auto b = rng.dirichlet_uniform(k);
  t.beta = Eigen::Map<const Eigen::VectorXd>(b.data(), k);
  t.lambda = rng.uniform(lambda_min, lambda_max);
  return t;
}

const char* stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::GapTolerance: return "gap-tolerance";
    case StopReason::NonpositiveGap: return "nonpositive estimated gap";
    case StopReason::IterationCap: return "iteration-cap";
    case StopReason::LineSearchStall: return "line-search stall";
    case StopReason::NumericFailure: return "numeric-failure";
  }
  return "unknown";
}

Eigen::VectorXd fd_gradient(const ObjectiveFn& f, const Theta& theta, double h,
                            double f_base, int threads) {
  const int dim = theta.dim();
  Eigen::VectorXd grad(dim);
  const Eigen::VectorXd base = theta.to_vector();
  auto probe = [&](int i) {
    Eigen::VectorXd v = base;
    v(i) += h;
    grad(i) = (f(Theta::from_vector(v)) - f_base) / h;
  };
  parallel_for(dim, threads, probe);
  return grad;
}

LmoResult lmo(const Eigen::VectorXd& grad, const FeasibleSet& set, const Theta& theta) {
  LmoResult res;
  res.vertex.alpha = grad(0) > 0.0 ? -set.alpha_box : set.alpha_box;
  res.vertex.beta = Eigen::VectorXd::Zero(set.k);
  int best = 0;
  for (int j = 1; j < set.k; ++j) {
    if (grad(1 + j) < grad(1 + best)) best = j;
  }
  res.vertex.beta(best) = 1.0;
  res.vertex.lambda = grad(set.k + 1) > 0.0 ? set.lambda_min : set.lambda_max;
  res.direction = res.vertex.to_vector() - theta.to_vector();
  return res;
}

LineSearchResult armijo_search(const ObjectiveFn& f, const Theta& theta,
                               const Eigen::VectorXd& direction, double g_tilde,
                               double f_base, const FwConfig& cfg) {
  LineSearchResult res;
  const Eigen::VectorXd base = theta.to_vector();
  double eta = 1.0;
  for (int j = 0; j <= cfg.max_backtracks; ++j) {
    const double f_try = f(Theta::from_vector(base + eta * direction));
    if (f_base - f_try >= cfg.gamma * eta * g_tilde) {
      res.eta = eta;
      res.backtracks = j;
      res.f_new = f_try;
      res.ok = true;
      return res;
    }
    eta *= cfg.delta;
  }
  res.backtracks = cfg.max_backtracks;
  return res;
}

RunResult fw_solve(const ObjectiveFn& f, const Theta& start, const FeasibleSet& set,
                   const FwConfig& cfg, const GradientFn* exact_grad, int start_id) {
  RunResult run;
  run.start_id = start_id;

  Theta theta = start;
  set.project_beta(theta);
  try {
    double f_theta = f(theta);
    double h = cfg.h0;

    for (int n = 0; n < cfg.max_iter; ++n) {
      const Eigen::VectorXd grad =
          exact_grad ? (*exact_grad)(theta)
                     : fd_gradient(f, theta, h, f_theta, cfg.fd_threads);
      const LmoResult step = lmo(grad, set, theta);
      const double g_tilde = -grad.dot(step.direction);

      IterRecord rec;
      rec.n = n;
      rec.f = f_theta;
      rec.g_tilde = g_tilde;
      rec.h = exact_grad ? 0.0 : h;
      rec.d_norm = step.direction.norm();
      rec.theta = theta;

      if (g_tilde <= 0.0) {
        run.trace.iterations.push_back(std::move(rec));
        run.trace.reason = StopReason::NonpositiveGap;
        break;
      }
      if (g_tilde <= cfg.tau) {
        run.trace.iterations.push_back(std::move(rec));
        run.trace.reason = StopReason::GapTolerance;
        break;
      }

      const LineSearchResult ls =
          armijo_search(f, theta, step.direction, g_tilde, f_theta, cfg);
      rec.backtracks = ls.backtracks;
      if (!ls.ok) {
        run.trace.iterations.push_back(std::move(rec));
        run.trace.reason = StopReason::LineSearchStall;
        break;
      }
      rec.eta = ls.eta;
      run.trace.iterations.push_back(std::move(rec));

      theta = Theta::from_vector(theta.to_vector() + ls.eta * step.direction);
      set.project_beta(theta);  // absorbs floating-point drift only
      f_theta = ls.f_new;
      h = std::max(h / 2.0, cfg.h_min);
      run.trace.reason = StopReason::IterationCap;
    }

    run.theta_star = theta;
    run.f_star = f_theta;
  } catch (const NumericError& e) {
    run.failed = true;
    run.fail_reason = e.what();
    run.trace.reason = StopReason::NumericFailure;
    run.trace.message = e.what();
  }
  return run;
}

RunResult multistart(const ObjectiveFn& f, const FeasibleSet& set, const FwConfig& cfg,
                     int n_starts, std::uint64_t seed, int threads,
                     std::vector<RunResult>* all_runs) {
  if (n_starts < 2) throw std::invalid_argument("multistart: need n_starts >= 2");

  std::vector<Theta> starts;
  starts.reserve(static_cast<std::size_t>(n_starts));
  starts.push_back(Theta::uniform(set.k, 1.0, 1.0));    // arithmetic mean start
  starts.push_back(Theta::uniform(set.k, -1.0, 1.0));   // harmonic mean start
  Rng rng(seed);
  for (int s = 2; s < n_starts; ++s) {
    starts.push_back(set.random_point(rng.fork(static_cast<std::uint64_t>(s)).seed()));
  }

  std::vector<RunResult> runs(static_cast<std::size_t>(n_starts));
  parallel_for(n_starts, threads, [&](int s) {
    runs[static_cast<std::size_t>(s)] =
        fw_solve(f, starts[static_cast<std::size_t>(s)], set, cfg, nullptr, s);
  });

  int best = -1;
  for (int s = 0; s < n_starts; ++s) {
    const auto& r = runs[static_cast<std::size_t>(s)];
    if (r.failed) continue;
    if (best < 0 || r.f_star < runs[static_cast<std::size_t>(best)].f_star) best = s;
  }
  if (best < 0) {
    std::string reasons;
    for (const auto& r : runs) reasons += r.fail_reason + "; ";
    throw NumericError("multistart: every start failed: " + reasons);
  }
  RunResult winner = runs[static_cast<std::size_t>(best)];
  if (all_runs) *all_runs = std::move(runs);
  return winner;
}

LemmaBoundReport check_lemma_bound(const OptTrace& trace, double m_est, double sigma,
                                   double gamma, double delta) {
  if (m_est <= 0.0) throw std::invalid_argument("check_lemma_bound: M estimate must be > 0");
  LemmaBoundReport rep;
  rep.threshold = std::min(1.0, 2.0 * delta * (1.0 - gamma - sigma));
  for (const auto& it : trace.iterations) {
    if (it.eta <= 0.0) continue;  // terminating record, no step taken
    const double eta_bar = std::min(1.0, it.g_tilde / (m_est * it.d_norm * it.d_norm));
    ++rep.checked;
    if (it.eta < rep.threshold * eta_bar * (1.0 - 1e-12)) ++rep.violations;
  }
  return rep;
}

double theorem_gap_bound(double diameter, double m_lip, double f0_minus_fstar, int n,
                         double rho, double sigma) {
  const double sqrt_term = std::sqrt(diameter * diameter * m_lip * f0_minus_fstar /
                                     (n * rho * (1.0 - sigma) * (1.0 - sigma)));
  const double linear_term = 2.0 * f0_minus_fstar / (n * (1.0 - 3.0 * sigma));
  return std::max(sqrt_term, linear_term);
}

double fd_epsilon_bound(double m_lip, double diameter, int k, double h) {
  return m_lip * diameter * (2.0 + k) * h / 2.0;
}

double fd_step_threshold(double m_lip, double diameter, int k, double sigma) {
  return 2.0 * sigma / ((1.0 + sigma) * m_lip * diameter * (2.0 + k));
}

}  // namespace layerlearn
