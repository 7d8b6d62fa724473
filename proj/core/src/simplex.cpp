#include "vrm/simplex.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vrm {

namespace {

void check_finite(const Eigen::VectorXd& w, const char* who) {
  if (!w.allFinite()) {
    throw std::invalid_argument(std::string(who) + ": non-finite input coordinate");
  }
}

}  // namespace

bool in_simplex(const Eigen::VectorXd& w, double z, double tol) {
  if (w.size() == 0) return false;
  if (w.minCoeff() < -tol) return false;
  return std::abs(w.sum() - z) <= tol;
}

bool in_restricted_simplex(const Eigen::VectorXd& w, const RestrictedSimplexSpec& spec,
                           double tol) {
  if (w.size() != spec.k) return false;
  if (!in_simplex(w, 1.0, tol)) return false;
  return w(spec.k - 1) >= spec.gamma - tol;
}

Eigen::VectorXd proj_simplex(const Eigen::VectorXd& w, double z) {
  check_finite(w, "proj_simplex");
  const Eigen::Index d = w.size();
  if (d < 1 || z <= 0.0) {
    throw std::invalid_argument("proj_simplex: need d >= 1 and z > 0");
  }
  if (in_simplex(w, z)) {
    return w;  // feasible inputs map to themselves exactly
  }

  // sort decreasingly; ties keep original order so the branch is deterministic
  std::vector<double> u(w.data(), w.data() + d);
  std::stable_sort(u.begin(), u.end(), std::greater<double>());

  double running = 0.0;
  Eigen::Index rho = 0;
  double lambda = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    running += u[j];
    const double shift = (running - z) / static_cast<double>(j + 1);
    if (u[j] - shift > 0.0) {
      rho = j + 1;
      lambda = shift;
    }
  }
  // rho >= 1 always: at j=0 the test reads u_1 - (u_1 - z) = z > 0
  (void)rho;

  return (w.array() - lambda).cwiseMax(0.0);
}

Eigen::VectorXd proj_restricted(const Eigen::VectorXd& w, const RestrictedSimplexSpec& spec) {
  check_finite(w, "proj_restricted");
  if (spec.gamma <= 0.0 || spec.gamma > 1.0) {
    throw std::invalid_argument("proj_restricted: gamma must lie in (0, 1]");
  }
  if (w.size() != spec.k) {
    throw std::invalid_argument("proj_restricted: dimension mismatch with spec");
  }
  const Eigen::Index k = spec.k;

  Eigen::VectorXd x = proj_simplex(w, 1.0);
  if (x(k - 1) >= spec.gamma) {
    return x;
  }
  x(k - 1) = spec.gamma;
  if (k == 1) {
    return x;  // gamma == 1 is forced here since the head is empty
  }
  x.head(k - 1) = proj_simplex(x.head(k - 1), 1.0 - spec.gamma);
  return x;
}

Eigen::VectorXd proj_h_norm(const Eigen::VectorXd& w, const Eigen::MatrixXd& H,
                            const RestrictedSimplexSpec& spec, int max_iters, double tol,
                            std::vector<double>* objective_trace) {
  check_finite(w, "proj_h_norm");
  if (H.rows() != H.cols() || H.rows() != w.size()) {
    throw std::invalid_argument("proj_h_norm: H must be k x k");
  }
  if (!H.allFinite() || (H - H.transpose()).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + H.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("proj_h_norm: H must be finite and symmetric");
  }
  if (Eigen::LLT<Eigen::MatrixXd>(H).info() != Eigen::Success) {
    throw std::invalid_argument("proj_h_norm: H must be positive-definite");
  }

  const double step = 1.0 / H.trace();
  Eigen::VectorXd x = proj_restricted(w, spec);
  if (objective_trace) {
    objective_trace->clear();
    objective_trace->push_back((x - w).dot(H * (x - w)));
  }
  for (int it = 0; it < max_iters; ++it) {
    Eigen::VectorXd next = proj_restricted(x - step * (H * (x - w)), spec);
    const double delta = (next - x).norm();
    x = std::move(next);
    if (objective_trace) {
      objective_trace->push_back((x - w).dot(H * (x - w)));
    }
    if (delta < tol) break;
  }
  return x;
}

}  // namespace vrm
