#ifndef LAYERLEARN_FRANK_WOLFE_HPP
#define LAYERLEARN_FRANK_WOLFE_HPP

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "layerlearn/theta.hpp"

namespace layerlearn {

using ObjectiveFn = std::function<double(const Theta&)>;
using GradientFn = std::function<Eigen::VectorXd(const Theta&)>;

// Box-times-simplex-times-box feasible set:
// alpha in [-a, a], beta on the K-simplex, lambda in [l0, l1].
struct FeasibleSet {
  double alpha_box = 20.0;
  double lambda_min = 0.1;
  double lambda_max = 10.0;
  int k = 1;

  bool contains(const Theta& t, double simplex_tol = 1e-10) const;

  // Snaps beta back onto the simplex: clips negative round-off to zero and
  // renormalizes the sum to exactly one.
  void project_beta(Theta& t) const;

  // All 2 * K * 2 vertices (alpha bound, simplex corner, lambda bound).
  std::vector<Theta> vertices() const;

  // Largest pairwise vertex distance; equals the diameter since the set is a
  // polytope.
  double max_vertex_distance() const;

  Theta random_point(std::uint64_t seed) const;
};

struct FwConfig {
  double tau = 1e-4;         // stop when the estimated gap falls to tau
  double h0 = 1e-4;          // initial finite-difference step
  double h_min = 1e-9;       // floor for the halving schedule
  double gamma = 0.25;       // Armijo sufficient-decrease constant, in (0, 1/2)
  double delta = 0.5;        // backtracking factor, in (0, 1)
  int max_iter = 100;
  int max_backtracks = 30;
  int fd_threads = 1;        // probes within one gradient are independent
};

enum class StopReason {
  GapTolerance,     // g~_n <= tau
  NonpositiveGap,   // g~_n <= 0, the estimated direction is non-descent
  IterationCap,
  LineSearchStall,  // Armijo exhausted max_backtracks
  NumericFailure,
};

const char* stop_reason_name(StopReason r);

struct IterRecord {
  int n = 0;
  double f = 0.0;        // f(theta_n)
  double g_tilde = 0.0;  // -grad~^T d_n
  double eta = 0.0;      // accepted step (0 on the terminating record)
  double h = 0.0;        // finite-difference step used this iteration
  double d_norm = 0.0;
  int backtracks = 0;
  Theta theta;           // theta_n
};

struct OptTrace {
  std::vector<IterRecord> iterations;
  StopReason reason = StopReason::IterationCap;
  std::string message;
};

struct RunResult {
  Theta theta_star;
  double f_star = 0.0;
  OptTrace trace;
  int start_id = 0;
  bool failed = false;
  std::string fail_reason;
};

// Forward differences (f(theta + h e_i) - f_base) / h over the K+2 coordinates
// (alpha, beta, lambda). Probes are evaluated literally even when they exit
// the feasible set. With threads > 1 the probes run concurrently.
Eigen::VectorXd fd_gradient(const ObjectiveFn& f, const Theta& theta, double h,
                            double f_base, int threads = 1);

// Exact solution of min_{v in S} grad^T (v - theta): the box coordinates pick
// the lower bound on positive gradient and the upper bound otherwise; beta
// picks the simplex corner of the smallest gradient component (ties to the
// smallest index).
struct LmoResult {
  Theta vertex;
  Eigen::VectorXd direction;  // vertex - theta
};
LmoResult lmo(const Eigen::VectorXd& grad, const FeasibleSet& set, const Theta& theta);

// Backtracking Armijo search: eta = delta^j for the smallest j >= 0 with
// f(theta) - f(theta + eta d) >= gamma * eta * g_tilde. Requires g_tilde > 0.
struct LineSearchResult {
  double eta = 0.0;
  int backtracks = 0;
  double f_new = 0.0;
  bool ok = false;
};
LineSearchResult armijo_search(const ObjectiveFn& f, const Theta& theta,
                               const Eigen::VectorXd& direction, double g_tilde,
                               double f_base, const FwConfig& cfg);

// Frank-Wolfe with inexact gradient. The finite-difference step halves every
// iteration down to cfg.h_min. When `exact_grad` is supplied it replaces the
// finite-difference estimate (used by analytic stubs and convergence checks).
RunResult fw_solve(const ObjectiveFn& f, const Theta& start, const FeasibleSet& set,
                   const FwConfig& cfg, const GradientFn* exact_grad = nullptr,
                   int start_id = 0);

// Multistart driver: start 0 is the arithmetic point (1, 1/K.., 1), start 1
// the harmonic point (-1, 1/K.., 1), remaining starts are seeded random draws
// (alpha and lambda uniform over their boxes, beta flat Dirichlet). Returns
// the run with the smallest f_star; ties go to the smaller start id. Runs may
// execute concurrently over `threads`.
RunResult multistart(const ObjectiveFn& f, const FeasibleSet& set, const FwConfig& cfg,
                     int n_starts, std::uint64_t seed, int threads = 1,
                     std::vector<RunResult>* all_runs = nullptr);

// Soft line-search lower-bound check: on every accepted iteration,
// eta_n >= min{1, 2 delta (1 - gamma - sigma)} * min(1, g~_n / (M ||d_n||^2)).
// M is an externally supplied Lipschitz estimate, so violations are reported,
// not asserted.
struct LemmaBoundReport {
  int checked = 0;
  int violations = 0;
  double threshold = 0.0;  // min{1, 2 delta (1 - gamma - sigma)}
};
LemmaBoundReport check_lemma_bound(const OptTrace& trace, double m_est, double sigma,
                                   double gamma, double delta);

// Sublinear bound on the best gap after n iterations,
// max( sqrt(Delta^2 M (f0 - fstar) / (n rho (1-sigma)^2)),
//      2 (f0 - fstar) / (n (1 - 3 sigma)) ).
double theorem_gap_bound(double diameter, double m_lip, double f0_minus_fstar, int n,
                         double rho, double sigma);

// Finite-difference inexactness bound M * Delta * (2 + K) * h / 2 and the step
// threshold xi * tau that keeps it within the sigma condition.
double fd_epsilon_bound(double m_lip, double diameter, int k, double h);
double fd_step_threshold(double m_lip, double diameter, int k, double sigma);

}  // namespace layerlearn

#endif
