#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "vrm/mixture.hpp"
#include "vrm/rng.hpp"
#include "vrm/simplex.hpp"

namespace vrm {

inline constexpr double kSimplexDiameter = 1.4142135623730951;  // sqrt(2)

enum class FeedbackMode { kFull, kPartial };

struct HyperParams {
  double gamma = 0.1;  // floor on the uniform component's weight
  double beta = 1.0;   // Newton step scale
  double eps = 1.0;    // H_0 = eps * I
  double L = 1.0;      // upper bound on squared losses
};

// Theorem-rate gamma schedule, clamped into (0, 1/k] so the floor never
// exceeds the uniform initial weight.
//   full:    3 k^{1/2} T^{-1/3} (ln T)^{1/3}
//   partial: k^{3/8} c^{1/5} T^{-1/5}
double default_gamma(int k, long long T, double c, FeedbackMode mode);

struct BetaEps {
  double beta;
  double eps;
};

// Standard ONS prescription beta = min{1/(4GD), alpha}/2, eps = 1/(beta^2 D^2)
// with the mode-appropriate gradient bound G and exp-concavity constant alpha:
//   full:    G = n^2 L sqrt(k)/gamma^2,   alpha = 2 gamma  /(n^2 L)
//   partial: G = n^2 L c sqrt(k)/gamma^3, alpha = 2 gamma^2/(n^2 L)
BetaEps default_beta_eps(double gamma, int n, double L, double c, int k, FeedbackMode mode,
                         double diameter = kSimplexDiameter);

// Gradient norm bound G for the given mode (see default_beta_eps).
double gradient_bound(double gamma, int n, double L, double c, int k, FeedbackMode mode);

// f_t(w) = sum_i l_t^2(i) / (w'p(i)). Unnormalized; divide by n^2 for regret
// units. Throws std::domain_error if any mixture mass is nonpositive.
double cost_full(const ComponentSet& cs, const Eigen::VectorXd& w,
                 const Eigen::VectorXd& losses_sq);

// Exact gradient -sum_i l_t^2(i) p(i) / (w'p(i))^2; every coordinate <= 0.
Eigen::VectorXd grad_full(const ComponentSet& cs, const Eigen::VectorXd& w,
                          const Eigen::VectorXd& losses_sq);

struct Estimate {
  double cost;           // l^2(i) / (w'p(i))^2
  Eigen::VectorXd grad;  // -l^2(i) p(i) / (w'p(i))^3
};

// Single-sample unbiased estimates of cost and gradient from partial feedback.
Estimate estimate_from_feedback(const ComponentSet& cs, const Eigen::VectorXd& w_t, int atom,
                                double loss);

// Same estimate built from an explicit probability column; used when the
// "atoms" are sets of points and p_col holds the per-component set masses.
Estimate estimate_from_prob_column(const Eigen::VectorXd& p_col, const Eigen::VectorXd& w_t,
                                   double loss);

struct ProjOptions {
  int max_iters = 50;
  double tol = 1e-10;
};

struct LearnerState {
  MixtureWeights w;
  Eigen::MatrixXd H;      // eps*I + sum of gradient outer products
  Eigen::MatrixXd H_inv;  // maintained by Sherman-Morrison
  long long t = 0;
  HyperParams hyper;
  int clip_count = 0;  // feedback values clipped to the L bound

  static LearnerState init(int k, const HyperParams& hp);
};

// One Online Newton Step: rank-one update of H and its inverse, Newton step
// w' = w - (1/beta) H^{-1} g, then projection onto the restricted simplex
// under the H-norm. Throws on non-finite g, leaving the state unchanged.
void ons_update(LearnerState& state, const Eigen::VectorXd& g, const ProjOptions& proj = {});

// Online gradient descent step w <- proj(w - eta g); baseline learner.
void ogd_round(LearnerState& state, const Eigen::VectorXd& g, double eta);

// Per-round record of the costs incurred and the weights played.
struct RegretLedger {
  std::vector<double> cost_est;   // estimated cost / norm
  std::vector<double> cost_true;  // realized cost / norm; NaN when unknown
  std::vector<Eigen::VectorXd> weights;

  std::size_t rounds() const { return cost_est.size(); }
  void append(double est, double truth, const Eigen::VectorXd& w);
};

struct RoundOutcome {
  int atom;
  double importance;
  double cost_est;
};

// One VRM round: sample an atom from the current mixture, obtain its loss from
// the callback (clipped to sqrt(L) if it violates the declared bound), build
// the partial-feedback estimates and apply the Newton update. Appends
// cost_est/n^2 to the ledger when one is given.
RoundOutcome vrm_round(LearnerState& state, const ComponentSet& cs, Rng& rng,
                       const std::function<double(int)>& loss_cb,
                       RegretLedger* ledger = nullptr, const ProjOptions& proj = {});

// Prefix regrets: cumsum(per_round_costs) - oracle_prefix_values, elementwise.
// Both series must be in the same units and of equal length.
std::vector<double> regret_curve(const std::vector<double>& per_round_costs,
                                 const std::vector<double>& oracle_prefix_values);

}  // namespace vrm
