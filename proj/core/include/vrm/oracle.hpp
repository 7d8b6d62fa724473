#pragma once

#include <Eigen/Core>

#include "vrm/mixture.hpp"

namespace vrm {

enum class OracleDomain { kFullSimplex, kRestricted };

struct OracleResult {
  Eigen::VectorXd w;
  double value = 0.0;    // unnormalized sum_t f_t(w)
  bool certified = false;  // gradient-mapping norm reached tol
  int iters = 0;
};

// Best fixed mixture weights in hindsight: minimizes sum_t f_t over the chosen
// domain by projected gradient descent with backtracking line search. The sum
// collapses to a single cost with per-atom losses summed over rounds, so the
// solve is O(nk) per iteration regardless of T. Weights are clamped at 1e-12
// inside cost evaluations to keep boundary points finite.
OracleResult hindsight_oracle(const ComponentSet& cs, const Eigen::MatrixXd& loss_sq_matrix,
                              OracleDomain domain, double gamma = 1.0, int max_iters = 2000,
                              double tol = 1e-7);

// Same solve with the per-atom squared losses already summed over rounds.
OracleResult hindsight_oracle_summed(const ComponentSet& cs, const Eigen::VectorXd& summed_losses,
                                     OracleDomain domain, double gamma = 1.0, int max_iters = 2000,
                                     double tol = 1e-7);

}  // namespace vrm
