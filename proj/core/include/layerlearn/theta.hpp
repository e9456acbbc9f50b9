#ifndef LAYERLEARN_THETA_HPP
#define LAYERLEARN_THETA_HPP

#include <Eigen/Core>

namespace layerlearn {

// Aggregation/regularization parameter triple (alpha, beta, lambda). beta is
// expected on (or, during finite-difference probes, near) the K-simplex.
// The flat-vector layout is (alpha, beta_0..beta_{K-1}, lambda).
struct Theta {
  double alpha = 1.0;
  Eigen::VectorXd beta;
  double lambda = 1.0;

  int k() const { return static_cast<int>(beta.size()); }
  int dim() const { return k() + 2; }

  static Theta uniform(int k, double alpha = 1.0, double lambda = 1.0) {
    Theta t;
    t.alpha = alpha;
    t.beta = Eigen::VectorXd::Constant(k, 1.0 / k);
    t.lambda = lambda;
    return t;
  }

  Eigen::VectorXd to_vector() const {
    Eigen::VectorXd v(dim());
    v(0) = alpha;
    v.segment(1, k()) = beta;
    v(dim() - 1) = lambda;
    return v;
  }

  static Theta from_vector(const Eigen::VectorXd& v) {
    Theta t;
    t.alpha = v(0);
    t.beta = v.segment(1, v.size() - 2);
    t.lambda = v(v.size() - 1);
    return t;
  }
};

}  // namespace layerlearn

#endif
