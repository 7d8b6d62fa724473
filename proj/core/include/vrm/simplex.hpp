#pragma once

#include <Eigen/Core>
#include <vector>

namespace vrm {

// Probability simplex with the last coordinate floored at gamma. A vector w
// is feasible iff w >= 0, sum(w) == 1 (within tol) and w(k-1) >= gamma - tol.
struct RestrictedSimplexSpec {
  int k = 1;
  double gamma = 1.0;
};

inline constexpr double kFeasTol = 1e-9;

bool in_simplex(const Eigen::VectorXd& w, double z, double tol = kFeasTol);
bool in_restricted_simplex(const Eigen::VectorXd& w, const RestrictedSimplexSpec& spec,
                           double tol = kFeasTol);

// Euclidean projection onto { x >= 0, sum(x) = z } by sorted thresholding.
// O(d log d). Throws std::invalid_argument on non-finite input or z <= 0.
Eigen::VectorXd proj_simplex(const Eigen::VectorXd& w, double z);

// Euclidean projection onto the restricted simplex. Projects onto the full
// simplex first; if the last coordinate falls below the floor it is pinned to
// gamma and the head is re-projected onto the leftover mass.
Eigen::VectorXd proj_restricted(const Eigen::VectorXd& w, const RestrictedSimplexSpec& spec);

// Approximate minimizer of (x - w)' H (x - w) over the restricted simplex via
// projected gradient steps with the 1/trace(H) step size (a lower bound on
// 1/lambda_max, so the quadratic decreases monotonically). Stops after
// max_iters or once successive iterates differ by less than tol.
// If objective_trace is non-null it receives the quadratic value per iterate.
Eigen::VectorXd proj_h_norm(const Eigen::VectorXd& w, const Eigen::MatrixXd& H,
                            const RestrictedSimplexSpec& spec, int max_iters = 50,
                            double tol = 1e-10, std::vector<double>* objective_trace = nullptr);

}  // namespace vrm
