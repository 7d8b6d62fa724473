#include "vrm/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "vrm/learner.hpp"
#include "vrm/simplex.hpp"

namespace vrm {

namespace {

constexpr double kBoundaryClamp = 1e-12;

double eval(const ComponentSet& cs, const Eigen::VectorXd& w, const Eigen::VectorXd& s) {
  return cost_full(cs, w.cwiseMax(kBoundaryClamp), s);
}

Eigen::VectorXd eval_grad(const ComponentSet& cs, const Eigen::VectorXd& w,
                          const Eigen::VectorXd& s) {
  return grad_full(cs, w.cwiseMax(kBoundaryClamp), s);
}

}  // namespace

OracleResult hindsight_oracle_summed(const ComponentSet& cs, const Eigen::VectorXd& summed_losses,
                                     OracleDomain domain, double gamma, int max_iters,
                                     double tol) {
  if (summed_losses.size() != cs.n() || !summed_losses.allFinite() ||
      summed_losses.minCoeff() < 0.0) {
    throw std::invalid_argument("hindsight_oracle: losses must be finite, nonnegative, length n");
  }
  const int k = cs.k();
  const RestrictedSimplexSpec spec{k, gamma};
  const auto project = [&](const Eigen::VectorXd& v) {
    return domain == OracleDomain::kFullSimplex ? proj_simplex(v, 1.0)
                                                : proj_restricted(v, spec);
  };

  Eigen::VectorXd w = project(Eigen::VectorXd::Constant(k, 1.0 / k));
  double fw = eval(cs, w, summed_losses);
  double eta = 1.0 / (1.0 + eval_grad(cs, w, summed_losses).norm());

  OracleResult out;
  for (int it = 1; it <= max_iters; ++it) {
    const Eigen::VectorXd g = eval_grad(cs, w, summed_losses);
    Eigen::VectorXd next;
    double fnext = 0.0;
    // backtracking on the sufficient-decrease condition
    for (int bt = 0; bt < 60; ++bt) {
      next = project(w - eta * g);
      fnext = eval(cs, next, summed_losses);
      const Eigen::VectorXd d = next - w;
      if (fnext <= fw + g.dot(d) + d.squaredNorm() / (2.0 * eta)) break;
      eta *= 0.5;
    }
    const double step_norm = (next - w).norm();
    const double grad_map = step_norm / eta;
    w = next;
    fw = fnext;
    out.iters = it;
    if (grad_map <= tol * (1.0 + std::abs(fw))) {
      out.certified = true;
      break;
    }
    eta *= 1.3;  // re-grow after conservative backtracks
  }
  out.w = w;
  out.value = fw;
  return out;
}

OracleResult hindsight_oracle(const ComponentSet& cs, const Eigen::MatrixXd& loss_sq_matrix,
                              OracleDomain domain, double gamma, int max_iters, double tol) {
  if (loss_sq_matrix.cols() != cs.n()) {
    throw std::invalid_argument("hindsight_oracle: loss matrix must be T x n");
  }
  const Eigen::VectorXd summed = loss_sq_matrix.colwise().sum().transpose();
  return hindsight_oracle_summed(cs, summed, domain, gamma, max_iters, tol);
}

}  // namespace vrm
