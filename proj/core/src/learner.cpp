#include "vrm/learner.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vrm {

double default_gamma(int k, long long T, double c, FeedbackMode mode) {
  if (k < 1 || T < 3 || c < 1.0) {
    throw std::invalid_argument("default_gamma: need k >= 1, T >= 3, c >= 1");
  }
  const double Td = static_cast<double>(T);
  double g;
  if (mode == FeedbackMode::kFull) {
    g = 3.0 * std::sqrt(static_cast<double>(k)) * std::pow(Td, -1.0 / 3.0) *
        std::cbrt(std::log(Td));
  } else {
    g = std::pow(static_cast<double>(k), 3.0 / 8.0) * std::pow(c, 0.2) * std::pow(Td, -0.2);
  }
  return std::min(g, 1.0 / k);
}

double gradient_bound(double gamma, int n, double L, double c, int k, FeedbackMode mode) {
  const double n2L = static_cast<double>(n) * n * L;
  const double sk = std::sqrt(static_cast<double>(k));
  if (mode == FeedbackMode::kFull) {
    return n2L * sk / (gamma * gamma);
  }
  return n2L * c * sk / (gamma * gamma * gamma);
}

BetaEps default_beta_eps(double gamma, int n, double L, double c, int k, FeedbackMode mode,
                         double diameter) {
  if (gamma <= 0.0 || n < 1 || L <= 0.0 || c < 1.0 || k < 1 || diameter <= 0.0) {
    throw std::invalid_argument("default_beta_eps: inputs must be positive");
  }
  const double G = gradient_bound(gamma, n, L, c, k, mode);
  const double n2L = static_cast<double>(n) * n * L;
  const double alpha =
      mode == FeedbackMode::kFull ? 2.0 * gamma / n2L : 2.0 * gamma * gamma / n2L;
  const double beta = 0.5 * std::min(1.0 / (4.0 * G * diameter), alpha);
  const double eps = 1.0 / (beta * beta * diameter * diameter);
  return {beta, eps};
}

namespace {

Eigen::VectorXd mixture_masses(const ComponentSet& cs, const Eigen::VectorXd& w) {
  if (w.size() != cs.k()) throw std::invalid_argument("weight dimension mismatch");
  return cs.probs().transpose() * w;
}

}  // namespace

double cost_full(const ComponentSet& cs, const Eigen::VectorXd& w,
                 const Eigen::VectorXd& losses_sq) {
  if (losses_sq.size() != cs.n()) throw std::invalid_argument("cost_full: loss size mismatch");
  if (losses_sq.minCoeff() < 0.0) throw std::invalid_argument("cost_full: negative squared loss");
  const Eigen::VectorXd q = mixture_masses(cs, w);
  if (q.minCoeff() <= 0.0) throw std::domain_error("cost_full: nonpositive mixture mass");
  return (losses_sq.array() / q.array()).sum();
}

Eigen::VectorXd grad_full(const ComponentSet& cs, const Eigen::VectorXd& w,
                          const Eigen::VectorXd& losses_sq) {
  if (losses_sq.size() != cs.n()) throw std::invalid_argument("grad_full: loss size mismatch");
  if (losses_sq.minCoeff() < 0.0) throw std::invalid_argument("grad_full: negative squared loss");
  const Eigen::VectorXd q = mixture_masses(cs, w);
  if (q.minCoeff() <= 0.0) throw std::domain_error("grad_full: nonpositive mixture mass");
  const Eigen::VectorXd scale = losses_sq.array() / q.array().square();
  return -(cs.probs() * scale);
}

Estimate estimate_from_prob_column(const Eigen::VectorXd& p_col, const Eigen::VectorXd& w_t,
                                   double loss) {
  if (p_col.size() != w_t.size()) {
    throw std::invalid_argument("estimate_from_feedback: dimension mismatch");
  }
  const double q = w_t.dot(p_col);
  if (q <= 0.0) throw std::domain_error("estimate_from_feedback: nonpositive mixture mass");
  const double l2 = loss * loss;
  Estimate est;
  est.cost = l2 / (q * q);
  est.grad = -(l2 / (q * q * q)) * p_col;
  return est;
}

Estimate estimate_from_feedback(const ComponentSet& cs, const Eigen::VectorXd& w_t, int atom,
                                double loss) {
  return estimate_from_prob_column(cs.column(atom), w_t, loss);
}

LearnerState LearnerState::init(int k, const HyperParams& hp) {
  if (hp.gamma <= 0.0 || hp.gamma > 1.0 || hp.beta <= 0.0 || hp.eps <= 0.0 || hp.L <= 0.0) {
    throw std::invalid_argument("LearnerState: hyperparameters must be positive, gamma <= 1");
  }
  LearnerState s{MixtureWeights::uniform(k, hp.gamma),
                 Eigen::MatrixXd::Identity(k, k) * hp.eps,
                 Eigen::MatrixXd::Identity(k, k) / hp.eps, 0, hp, 0};
  return s;
}

void ons_update(LearnerState& state, const Eigen::VectorXd& g, const ProjOptions& proj) {
  const int k = state.w.k();
  if (g.size() != k || !g.allFinite()) {
    throw std::invalid_argument("ons_update: gradient must be finite and of length k");
  }
  state.H.noalias() += g * g.transpose();
  const Eigen::VectorXd v = state.H_inv * g;
  state.H_inv.noalias() -= (v * v.transpose()) / (1.0 + g.dot(v));

  const Eigen::VectorXd newton = state.w.vec() - (state.H_inv * g) / state.hyper.beta;
  const RestrictedSimplexSpec spec{k, state.hyper.gamma};
  Eigen::VectorXd next = proj_h_norm(newton, state.H, spec, proj.max_iters, proj.tol);
  state.w = MixtureWeights(std::move(next), state.hyper.gamma);
  state.t++;
}

void ogd_round(LearnerState& state, const Eigen::VectorXd& g, double eta) {
  const int k = state.w.k();
  if (g.size() != k || !g.allFinite()) {
    throw std::invalid_argument("ogd_round: gradient must be finite and of length k");
  }
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("ogd_round: step size must be finite and nonnegative");
  }
  const RestrictedSimplexSpec spec{k, state.hyper.gamma};
  Eigen::VectorXd next = proj_restricted(state.w.vec() - eta * g, spec);
  state.w = MixtureWeights(std::move(next), state.hyper.gamma);
  state.t++;
}

void RegretLedger::append(double est, double truth, const Eigen::VectorXd& w) {
  cost_est.push_back(est);
  cost_true.push_back(truth);
  weights.push_back(w);
}

RoundOutcome vrm_round(LearnerState& state, const ComponentSet& cs, Rng& rng,
                       const std::function<double(int)>& loss_cb, RegretLedger* ledger,
                       const ProjOptions& proj) {
  const auto [atom, importance] = cs.sample_atom(state.w, rng);
  double loss = loss_cb(atom);
  if (!std::isfinite(loss)) {
    throw std::invalid_argument("vrm_round: loss callback returned a non-finite value");
  }
  if (loss * loss > state.hyper.L) {
    loss = std::copysign(std::sqrt(state.hyper.L), loss);
    state.clip_count++;
  }
  const Eigen::VectorXd w_played = state.w.vec();
  const Estimate est = estimate_from_feedback(cs, w_played, atom, loss);
  ons_update(state, est.grad, proj);
  if (ledger) {
    const double n2 = static_cast<double>(cs.n()) * cs.n();
    ledger->append(est.cost / n2, std::numeric_limits<double>::quiet_NaN(), w_played);
  }
  return {atom, importance, est.cost};
}

std::vector<double> regret_curve(const std::vector<double>& per_round_costs,
                                 const std::vector<double>& oracle_prefix_values) {
  if (per_round_costs.size() != oracle_prefix_values.size()) {
    throw std::invalid_argument("regret_curve: series lengths differ");
  }
  std::vector<double> regret(per_round_costs.size());
  double acc = 0.0;
  for (std::size_t t = 0; t < per_round_costs.size(); ++t) {
    acc += per_round_costs[t];
    regret[t] = acc - oracle_prefix_values[t];
  }
  return regret;
}

}  // namespace vrm
