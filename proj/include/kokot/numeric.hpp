#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>

namespace kok {

struct SolveResult {
  Eigen::VectorXd x;
  double residual = 0.0;  // max-norm of the residual vector
  int iterations = 0;
  bool converged = false;
};

/**
 * Damped Gauss-Newton with a forward-difference Jacobian.
 * Works for square and overdetermined consistent systems.
 */
inline SolveResult levenberg_marquardt(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                                       Eigen::VectorXd x, double tol = 1e-14, int max_iter = 200) {
  SolveResult out;
  Eigen::VectorXd r = f(x);
  double lambda = 1e-3;
  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it;
    const double rn = r.squaredNorm();
    if (!std::isfinite(rn)) break;
    if (r.cwiseAbs().maxCoeff() <= tol) {
      out.converged = true;
      break;
    }
    Eigen::MatrixXd J(r.size(), x.size());
    for (int j = 0; j < x.size(); ++j) {
      const double h = 1e-7 * std::max(1.0, std::abs(x[j]));
      Eigen::VectorXd xp = x;
      xp[j] += h;
      J.col(j) = (f(xp) - r) / h;
    }
    const Eigen::MatrixXd A = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;
    bool improved = false;
    for (int k = 0; k < 12; ++k) {
      Eigen::MatrixXd M = A;
      M.diagonal() += lambda * (A.diagonal().array() + 1e-12).matrix();
      const Eigen::VectorXd step = M.ldlt().solve(-g);
      const Eigen::VectorXd xn = x + step;
      const Eigen::VectorXd rn2 = f(xn);
      if (std::isfinite(rn2.squaredNorm()) && rn2.squaredNorm() < rn) {
        x = xn;
        r = rn2;
        lambda = std::max(lambda * 0.3, 1e-12);
        improved = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) break;
  }
  out.x = x;
  out.residual = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
  out.converged = out.converged || out.residual <= tol;
  return out;
}

}  // namespace kok
