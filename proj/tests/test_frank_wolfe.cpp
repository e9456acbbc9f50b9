#include <doctest.h>

#include <cmath>
#include <limits>

#include "layerlearn/bilevel.hpp"
#include "layerlearn/frank_wolfe.hpp"
#include "layerlearn/labels.hpp"
#include "layerlearn/rng.hpp"
#include "test_util.hpp"

using namespace layerlearn;
using testutil::random_graph;

namespace {

// Quadratic stub over S with known Lipschitz constant M and minimum f* = 0 at
// an interior point.
struct QuadraticStub {
  Eigen::VectorXd center;
  double m_lip = 1.0;

  double operator()(const Theta& t) const {
    return 0.5 * m_lip * (t.to_vector() - center).squaredNorm();
  }
  Eigen::VectorXd grad(const Theta& t) const { return m_lip * (t.to_vector() - center); }
};

QuadraticStub make_stub(int k, double m_lip = 1.0) {
  QuadraticStub stub;
  stub.m_lip = m_lip;
  Theta c;
  c.alpha = 3.0;
  c.beta = Eigen::VectorXd::Constant(k, 1.0 / k);
  c.beta(0) += 0.2;
  c.beta(1) -= 0.2;
  c.lambda = 2.0;
  FeasibleSet set;
  set.k = k;
  set.project_beta(c);
  stub.center = c.to_vector();
  return stub;
}

// Small labeled multilayer instance for objective-level tests.
struct SmallProblem {
  MultilayerGraph graph;
  LabelMatrix labels;
  LabelSplit split;
};

SmallProblem small_problem(Rng& rng, int n, int k) {
  SmallProblem p{random_graph(rng, n, k, 0.25, 0.5, 2.0), {}, {}};
  p.labels.n = n;
  p.labels.m = 2;
  p.labels.class_names = {"A", "B"};
  p.labels.node_class.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    if (i % 2 == 0) p.labels.node_class[static_cast<std::size_t>(i)] = i % 4 == 0 ? 0 : 1;
  }
  p.split = split_labels(p.labels, 0, rng.next_u64());
  return p;
}

}  // namespace

TEST_CASE("feasible set basics") {
  FeasibleSet set;
  set.k = 3;
  CHECK(set.vertices().size() == 12);
  CHECK(set.max_vertex_distance() <= 2.0 * set.alpha_box + std::sqrt(2.0));
  CHECK(set.max_vertex_distance() ==
        doctest::Approx(std::sqrt(1600.0 + 2.0 + 9.9 * 9.9)).epsilon(1e-12));

  Theta inside = Theta::uniform(3, 5.0, 1.0);
  CHECK(set.contains(inside));
  inside.alpha = 25.0;
  CHECK(!set.contains(inside));

  Theta drifted = Theta::uniform(3);
  drifted.beta(0) += 3e-11;
  set.project_beta(drifted);
  CHECK(std::abs(drifted.beta.sum() - 1.0) <= 1e-15);
}

TEST_CASE("finite differences recover the slope of a linear stub") {
  auto f = [](const Theta& t) { return 3.0 * t.alpha - 2.0 * t.lambda + t.beta(0); };
  Theta t = Theta::uniform(2, 0.5, 1.5);
  const double base = f(t);
  auto g = fd_gradient(f, t, 1e-4, base);
  CHECK(g(0) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(g(1) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(g(2) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(g(3) == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("forward differences agree with the central-difference oracle") {
  Rng rng(211);
  for (int trial = 0; trial < 8; ++trial) {
    const int k = rng.uniform_int(2, 3);
    auto prob = small_problem(rng, rng.uniform_int(10, 30), k);
    auto f = make_multi_objective(prob.graph, prob.labels, prob.split, 1e-12, 200000);

    Theta t;
    t.alpha = rng.uniform(-3.0, 3.0);
    const auto b = rng.dirichlet_uniform(k);
    t.beta = Eigen::Map<const Eigen::VectorXd>(b.data(), k);
    t.lambda = rng.uniform(0.5, 5.0);

    const double base = f(t);
    const auto fd = fd_gradient(f, t, 1e-5, base);

    // independent oracle: central differences at h = 1e-6
    const double h = 1e-6;
    const Eigen::VectorXd v = t.to_vector();
    for (int i = 0; i < t.dim(); ++i) {
      Eigen::VectorXd up = v, dn = v;
      up(i) += h;
      dn(i) -= h;
      const double central = (f(Theta::from_vector(up)) - f(Theta::from_vector(dn))) / (2.0 * h);
      CHECK(std::abs(fd(i) - central) <= 1e-3 * std::max(std::abs(central), 1e-12));
    }
  }
}

TEST_CASE("halving the step shrinks the finite-difference error") {
  auto stub = make_stub(3);
  ObjectiveFn f = [&](const Theta& t) { return stub(t); };
  Theta t = Theta::uniform(3, 2.0, 1.0);
  const double base = f(t);
  const auto g1 = fd_gradient(f, t, 1e-3, base);
  const auto g2 = fd_gradient(f, t, 5e-4, base);
  const auto g3 = fd_gradient(f, t, 2.5e-4, base);
  CHECK((g2 - g3).norm() < (g1 - g2).norm());
}

TEST_CASE("lmo picks the optimal vertex coordinates") {
  FeasibleSet set;
  set.k = 3;
  Theta t = Theta::uniform(3, 0.0, 1.0);

  Eigen::VectorXd grad(5);
  grad << 1.0, 0.3, -0.2, 0.1, 1.0;
  auto res = lmo(grad, set, t);
  CHECK(res.vertex.alpha == -20.0);
  CHECK(res.vertex.beta(1) == 1.0);
  CHECK(res.vertex.lambda == 0.1);

  grad(0) = 0.0;  // the literal rule sends zero gradient to +a
  CHECK(lmo(grad, set, t).vertex.alpha == 20.0);

  grad.segment(1, 3).setConstant(0.7);  // beta tie resolves to the lowest index
  CHECK(lmo(grad, set, t).vertex.beta(0) == 1.0);
}

TEST_CASE("lmo matches brute force over all vertices") {
  Rng rng(223);
  for (int k = 1; k <= 6; ++k) {
    FeasibleSet set;
    set.k = k;
    const auto vertices = set.vertices();
    for (int trial = 0; trial < 40; ++trial) {
      Theta t = set.random_point(rng.next_u64());
      Eigen::VectorXd grad(k + 2);
      for (int i = 0; i < k + 2; ++i) grad(i) = rng.uniform(-2.0, 2.0);
      const auto res = lmo(grad, set, t);
      const double got = grad.dot(res.vertex.to_vector());
      double best = std::numeric_limits<double>::infinity();
      for (const auto& v : vertices) best = std::min(best, grad.dot(v.to_vector()));
      CHECK(got == doctest::Approx(best).epsilon(1e-12));
    }
  }
}

TEST_CASE("armijo accepts the unit step on the quadratic hand example") {
  // f(t) = t^2/2 along d = -1 from t = 1: eta = 1 gives decrease 1/2 >= 0.25.
  ObjectiveFn f = [](const Theta& t) { return 0.5 * t.alpha * t.alpha; };
  Theta t = Theta::uniform(1, 1.0, 1.0);
  Eigen::VectorXd d = Eigen::VectorXd::Zero(3);
  d(0) = -1.0;
  FwConfig cfg;
  auto res = armijo_search(f, t, d, 1.0, f(t), cfg);
  CHECK(res.ok);
  CHECK(res.eta == 1.0);
  CHECK(res.backtracks == 0);
  CHECK(res.f_new == doctest::Approx(0.0));
}

TEST_CASE("armijo stalls on a flat objective") {
  ObjectiveFn f = [](const Theta&) { return 1.0; };
  Theta t = Theta::uniform(1, 1.0, 1.0);
  Eigen::VectorXd d = Eigen::VectorXd::Zero(3);
  d(0) = -1.0;
  FwConfig cfg;
  auto res = armijo_search(f, t, d, 1.0, 1.0, cfg);
  CHECK(!res.ok);
  CHECK(res.backtracks == cfg.max_backtracks);
}

TEST_CASE("paper default constants") {
  FwConfig cfg;
  CHECK(cfg.tau == 1e-4);
  CHECK(cfg.h0 == 1e-4);
  CHECK(cfg.gamma == 0.25);
  CHECK(cfg.delta == 0.5);
}

TEST_CASE("fw_solve terminates immediately at a stationary vertex of a linear stub") {
  FeasibleSet set;
  set.k = 2;
  // gradient (1, (1, 2), 1): optimum at alpha=-a, beta=e_0, lambda=l0
  ObjectiveFn f = [](const Theta& t) {
    return t.alpha + t.beta(0) + 2.0 * t.beta(1) + t.lambda;
  };
  Theta start;
  start.alpha = -set.alpha_box;
  start.beta = Eigen::VectorXd::Zero(2);
  start.beta(0) = 1.0;
  start.lambda = set.lambda_min;
  FwConfig cfg;
  auto run = fw_solve(f, start, set, cfg);
  REQUIRE(run.trace.iterations.size() == 1);
  CHECK(run.trace.iterations.front().g_tilde <= cfg.tau);
  CHECK((run.trace.reason == StopReason::GapTolerance ||
         run.trace.reason == StopReason::NonpositiveGap));
}

TEST_CASE("fw_solve on the quadratic stub: descent, feasibility, armijo trace") {
  auto stub = make_stub(3);
  ObjectiveFn f = [&](const Theta& t) { return stub(t); };
  GradientFn g = [&](const Theta& t) { return stub.grad(t); };
  FeasibleSet set;
  set.k = 3;
  FwConfig cfg;
  cfg.max_iter = 200;
  cfg.tau = 1e-10;
  auto run = fw_solve(f, Theta::uniform(3, -15.0, 9.0), set, cfg, &g);
  REQUIRE(run.trace.iterations.size() > 3);

  const auto& iters = run.trace.iterations;
  for (std::size_t i = 0; i + 1 < iters.size(); ++i) {
    CHECK(iters[i + 1].f <= iters[i].f + 1e-12);  // monotone descent
    if (iters[i].eta > 0.0) {
      CHECK(iters[i].f - iters[i + 1].f >=
            cfg.gamma * iters[i].eta * iters[i].g_tilde - 1e-12);
    }
    CHECK(set.contains(iters[i].theta, 1e-10));
  }

  // Line-search lower bound with the exact Lipschitz constant: no violations.
  auto rep = check_lemma_bound(run.trace, stub.m_lip, 0.0, cfg.gamma, cfg.delta);
  CHECK(rep.checked > 0);
  CHECK(rep.violations == 0);
}

TEST_CASE("lemma threshold arithmetic") {
  auto rep_input = OptTrace{};
  auto rep = check_lemma_bound(rep_input, 1.0, 0.0, 0.49, 0.4999);
  CHECK(rep.threshold == doctest::Approx(0.9998 * 0.51).epsilon(1e-12));
  rep = check_lemma_bound(rep_input, 1.0, 0.0, 0.25, 0.5);
  CHECK(rep.threshold == doctest::Approx(0.75));
  CHECK_THROWS_AS(check_lemma_bound(rep_input, 0.0, 0.0, 0.25, 0.5), std::invalid_argument);
}

TEST_CASE("best-gap decay stays below the sublinear bound on the stub") {
  auto stub = make_stub(3);
  ObjectiveFn f = [&](const Theta& t) { return stub(t); };
  GradientFn g = [&](const Theta& t) { return stub.grad(t); };
  FeasibleSet set;
  set.k = 3;
  FwConfig cfg;
  cfg.max_iter = 400;
  cfg.tau = 1e-14;
  const Theta start = Theta::uniform(3, -18.0, 9.5);
  auto run = fw_solve(f, start, set, cfg, &g);

  double best_gap = std::numeric_limits<double>::infinity();
  for (const auto& it : run.trace.iterations) best_gap = std::min(best_gap, it.g_tilde);

  const double f0 = f(start);
  const double bound = theorem_gap_bound(set.max_vertex_distance(), stub.m_lip, f0 - 0.0,
                                         400, cfg.gamma, 0.0);
  CHECK(best_gap <= bound);
}

TEST_CASE("multistart uses the two fixed starts and is deterministic") {
  auto stub = make_stub(2);
  ObjectiveFn f = [&](const Theta& t) { return stub(t); };
  FeasibleSet set;
  set.k = 2;
  FwConfig cfg;
  cfg.max_iter = 40;

  std::vector<RunResult> runs;
  auto best = multistart(f, set, cfg, 2, 99, 1, &runs);
  CHECK(runs.size() == 2);
  CHECK(best.f_star <= runs[0].f_star);  // no worse than the arithmetic start
  CHECK_THROWS_AS(multistart(f, set, cfg, 1, 99), std::invalid_argument);

  auto best_again = multistart(f, set, cfg, 6, 123);
  auto best_third = multistart(f, set, cfg, 6, 123, 2);  // threads must not matter
  CHECK(best_again.f_star == best_third.f_star);
  CHECK(best_again.start_id == best_third.start_id);
  CHECK(best_again.theta_star.to_vector() == best_third.theta_star.to_vector());
}

TEST_CASE("fd schedule helpers") {
  CHECK(fd_epsilon_bound(2.0, 10.0, 3, 1e-4) == doctest::Approx(2.0 * 10.0 * 5.0 * 1e-4 / 2.0));
  const double xi = fd_step_threshold(2.0, 10.0, 3, 0.25);
  CHECK(xi == doctest::Approx(2.0 * 0.25 / (1.25 * 2.0 * 10.0 * 5.0)));
  // h <= xi * tau keeps the finite-difference inexactness within the sigma rule
  CHECK(fd_epsilon_bound(2.0, 10.0, 3, xi * 1e-4) <=
        doctest::Approx(0.25 / 1.25 * 1e-4));
}

TEST_CASE("fw_solve runs the finite-difference path on a real objective") {
  Rng rng(229);
  auto prob = small_problem(rng, 24, 2);
  auto f = make_multi_objective(prob.graph, prob.labels, prob.split);
  FeasibleSet set;
  set.k = 2;
  FwConfig cfg;
  cfg.max_iter = 25;
  auto run = fw_solve(f, Theta::uniform(2), set, cfg);
  CHECK(!run.failed);
  REQUIRE(!run.trace.iterations.empty());
  for (std::size_t i = 0; i + 1 < run.trace.iterations.size(); ++i) {
    CHECK(run.trace.iterations[i + 1].f <= run.trace.iterations[i].f + 1e-12);
  }
  // h halves down to the floor
  const auto& iters = run.trace.iterations;
  for (std::size_t i = 0; i + 1 < iters.size(); ++i) {
    CHECK(iters[i + 1].h == doctest::Approx(std::max(iters[i].h / 2.0, 1e-9)));
  }
  CHECK(set.contains(run.theta_star, 1e-9));
}
