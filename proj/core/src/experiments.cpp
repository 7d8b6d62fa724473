#include "vrm/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "vrm/kmeans.hpp"

namespace vrm {

std::string to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::kVrm: return "vrm";
    case SamplerKind::kUniform: return "uniform";
    case SamplerKind::kOgdBaseline: return "ogd-baseline";
  }
  return "unknown";
}

SamplerKind sampler_from_string(const std::string& name) {
  if (name == "vrm") return SamplerKind::kVrm;
  if (name == "uniform") return SamplerKind::kUniform;
  if (name == "ogd-baseline" || name == "ogd") return SamplerKind::kOgdBaseline;
  throw std::invalid_argument("unknown sampler: " + name);
}

namespace {

MixtureWeights uniform_component_weights(int k, double gamma) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(k);
  w(k - 1) = 1.0;
  return MixtureWeights(std::move(w), gamma);
}

HyperParams provisional_hp(double gamma) { return HyperParams{gamma, 1.0, 1.0, 1.0}; }

}  // namespace

// ---------------------------------------------------------------------------
// MixtureSampler
// ---------------------------------------------------------------------------

MixtureSampler::MixtureSampler(ComponentSet cs, SamplerKind kind, double gamma, double beta,
                               double eps, double L, int calib_rounds)
    : cs_(std::move(cs)),
      kind_(kind),
      state_(LearnerState::init(cs_.k(), provisional_hp(gamma))),
      uniform_w_(uniform_component_weights(cs_.k(), gamma)),
      calib_rounds_(calib_rounds),
      beta_given_(beta > 0.0 && eps > 0.0) {
  if (kind_ == SamplerKind::kUniform) {
    calibrating_ = false;
    return;
  }
  if (beta_given_ && L > 0.0) {
    state_ = LearnerState::init(cs_.k(), HyperParams{gamma, beta, eps, L});
    calibrating_ = false;
  } else {
    calibrating_ = calib_rounds_ > 0;
    if (!calibrating_) {
      throw std::invalid_argument("MixtureSampler: need hyperparameters or calibration rounds");
    }
    if (beta_given_) {
      // keep the requested Newton scale through calibration; only L is learned
      state_ = LearnerState::init(cs_.k(), HyperParams{gamma, beta, eps, 1.0});
    }
  }
}

std::pair<int, double> MixtureSampler::draw(Rng& rng) {
  if (kind_ == SamplerKind::kUniform || calibrating_) {
    return cs_.sample_atom(uniform_w_, rng);
  }
  return cs_.sample_atom(state_.w, rng);
}

void MixtureSampler::finish_calibration() {
  const double gamma = state_.hyper.gamma;
  const double L = std::max(calib_max_l2_, 1e-12);
  const double G = std::max(calib_max_grad_, 1e-12);
  double beta = state_.hyper.beta;
  double eps = state_.hyper.eps;
  if (!beta_given_) {
    beta = 1.0 / (8.0 * G * kSimplexDiameter);
    eps = 1.0 / (beta * beta * kSimplexDiameter * kSimplexDiameter);
  }
  ogd_scale_ = G;
  state_ = LearnerState::init(cs_.k(), HyperParams{gamma, beta, eps, L});
  calibrating_ = false;
}

void MixtureSampler::apply_estimate(const Estimate& est) {
  if (kind_ == SamplerKind::kOgdBaseline) {
    ogd_t_++;
    const double eta = kSimplexDiameter / (ogd_scale_ * std::sqrt(static_cast<double>(ogd_t_)));
    ogd_round(state_, est.grad, eta);
  } else {
    ons_update(state_, est.grad);
  }
}

void MixtureSampler::feedback(int atom, double loss) {
  if (kind_ == SamplerKind::kUniform) return;
  if (calibrating_) {
    calib_max_l2_ = std::max(calib_max_l2_, loss * loss);
    const Estimate est = estimate_from_feedback(cs_, state_.w.vec(), atom, loss);
    calib_max_grad_ = std::max(calib_max_grad_, est.grad.norm());
    if (++calib_seen_ >= calib_rounds_) finish_calibration();
    return;
  }
  if (loss * loss > state_.hyper.L) {
    loss = std::copysign(std::sqrt(state_.hyper.L), loss);
    state_.clip_count++;
  }
  apply_estimate(estimate_from_feedback(cs_, state_.w.vec(), atom, loss));
}

void MixtureSampler::feedback_batch(const std::vector<int>& atoms, double loss) {
  if (kind_ == SamplerKind::kUniform || atoms.empty()) return;
  if (calibrating_) {
    calib_max_l2_ = std::max(calib_max_l2_, loss * loss);
    // calibrate on the batch-averaged estimate, the quantity updates will see
    Eigen::VectorXd g = Eigen::VectorXd::Zero(cs_.k());
    for (int a : atoms) {
      g += estimate_from_feedback(cs_, state_.w.vec(), a, loss).grad;
    }
    calib_max_grad_ = std::max(calib_max_grad_, g.norm() / atoms.size());
    if (++calib_seen_ >= calib_rounds_) finish_calibration();
    return;
  }
  if (loss * loss > state_.hyper.L) {
    loss = std::copysign(std::sqrt(state_.hyper.L), loss);
    state_.clip_count++;
  }
  Eigen::VectorXd g = Eigen::VectorXd::Zero(cs_.k());
  for (int a : atoms) {
    g += estimate_from_feedback(cs_, state_.w.vec(), a, loss).grad;
  }
  g /= static_cast<double>(atoms.size());
  Estimate avg;
  avg.cost = 0.0;
  avg.grad = std::move(g);
  apply_estimate(avg);
}

// ---------------------------------------------------------------------------
// SetMixtureSampler
// ---------------------------------------------------------------------------

SetMixtureSampler::SetMixtureSampler(SetMixture mix, SamplerKind kind, double gamma, double beta,
                                     double eps, double L, int calib_rounds,
                                     std::pair<double, double> trunc)
    : mix_(std::move(mix)),
      kind_(kind),
      state_(LearnerState::init(mix_.k(), provisional_hp(gamma))),
      uniform_w_(uniform_component_weights(mix_.k(), gamma)),
      trunc_(trunc),
      calib_rounds_(calib_rounds),
      beta_given_(beta > 0.0 && eps > 0.0) {
  if (kind_ == SamplerKind::kUniform) return;
  if (beta_given_ && L > 0.0) {
    state_ = LearnerState::init(mix_.k(), HyperParams{gamma, beta, eps, L});
  } else {
    calibrating_ = calib_rounds_ > 0;
    if (!calibrating_) {
      throw std::invalid_argument("SetMixtureSampler: need hyperparameters or calibration");
    }
    if (beta_given_) {
      state_ = LearnerState::init(mix_.k(), HyperParams{gamma, beta, eps, 1.0});
    }
  }
}

SetSample SetMixtureSampler::draw(Rng& rng) {
  if (kind_ == SamplerKind::kUniform || calibrating_) {
    return mix_.sample(uniform_w_, rng, trunc_);
  }
  return mix_.sample(state_.w, rng, trunc_);
}

void SetMixtureSampler::finish_calibration() {
  const double gamma = state_.hyper.gamma;
  const double L = std::max(calib_max_l2_, 1e-12);
  const double G = std::max(calib_max_grad_, 1e-12);
  double beta = state_.hyper.beta;
  double eps = state_.hyper.eps;
  if (!beta_given_) {
    beta = 1.0 / (8.0 * G * kSimplexDiameter);
    eps = 1.0 / (beta * beta * kSimplexDiameter * kSimplexDiameter);
  }
  state_ = LearnerState::init(mix_.k(), HyperParams{gamma, beta, eps, L});
  calibrating_ = false;
}

void SetMixtureSampler::feedback(const SetSample& sample, double loss) {
  if (kind_ == SamplerKind::kUniform) return;
  if (calibrating_) {
    calib_max_l2_ = std::max(calib_max_l2_, loss * loss);
    const Estimate est =
        estimate_from_prob_column(sample.prob_per_component, state_.w.vec(), loss);
    calib_max_grad_ = std::max(calib_max_grad_, est.grad.norm());
    if (++calib_seen_ >= calib_rounds_) finish_calibration();
    return;
  }
  if (loss * loss > state_.hyper.L) {
    loss = std::copysign(std::sqrt(state_.hyper.L), loss);
    state_.clip_count++;
  }
  const Estimate est = estimate_from_prob_column(sample.prob_per_component, state_.w.vec(), loss);
  if (kind_ == SamplerKind::kOgdBaseline) {
    ogd_t_++;
    const double eta =
        kSimplexDiameter / (std::max(calib_max_grad_, 1e-12) * std::sqrt(double(ogd_t_)));
    ogd_round(state_, est.grad, eta);
  } else {
    ons_update(state_, est.grad);
  }
}

// ---------------------------------------------------------------------------
// Synthetic data
// ---------------------------------------------------------------------------

BlobData gen_blobs(int n, int blob_count, double separation, double blob_std, Rng& rng) {
  if (n < blob_count || blob_count < 1) throw std::invalid_argument("gen_blobs: n >= blobs >= 1");
  if (separation <= 0.0) throw std::invalid_argument("gen_blobs: separation must be positive");
  if (blob_std <= 0.0) throw std::invalid_argument("gen_blobs: blob_std must be positive");

  BlobData out;
  out.points.resize(n, 2);
  out.labels.resize(n);
  out.blob_ids.resize(n);
  const double offset = 0.5 * (blob_count - 1);
  for (int i = 0; i < n; ++i) {
    const int b = i % blob_count;  // round-robin keeps blobs balanced
    out.blob_ids(i) = b;
    out.labels(i) = b < blob_count / 2 ? -1.0 : 1.0;
    out.points(i, 0) = (b - offset) * separation + blob_std * rng.normal();
    out.points(i, 1) = blob_std * rng.normal();
  }
  return out;
}

RegressionData gen_regression(int n, int d, int scaled_points, double scale, Rng& rng) {
  if (n < 1 || d < 1) throw std::invalid_argument("gen_regression: need n, d >= 1");
  if (scaled_points < 0 || scaled_points > n) {
    throw std::invalid_argument("gen_regression: scaled_points out of range");
  }

  RegressionData out;
  Eigen::VectorXd mean(d), sd(d);
  for (int j = 0; j < d; ++j) {
    mean(j) = rng.normal();
    sd(j) = 0.5 + rng.uniform();
  }
  out.X.resize(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      out.X(i, j) = mean(j) + sd(j) * rng.normal();
    }
  }

  // scale up a few random rows to skew the leverage
  std::set<int> chosen;
  while (static_cast<int>(chosen.size()) < scaled_points) {
    chosen.insert(static_cast<int>(rng.uniform_int(n)));
  }
  out.scaled_idx.assign(chosen.begin(), chosen.end());
  for (int i : out.scaled_idx) out.X.row(i) *= scale;

  out.w0.resize(d);
  for (int j = 0; j < d; ++j) out.w0(j) = 5.0 * rng.normal();
  out.y.resize(n);
  for (int i = 0; i < n; ++i) out.y(i) = out.X.row(i).dot(out.w0) + rng.normal();
  return out;
}

Eigen::MatrixXd gen_clustered(int n, int n_clusters, int d, double spread, double cluster_std,
                              Rng& rng) {
  if (n < n_clusters || n_clusters < 1) {
    throw std::invalid_argument("gen_clustered: need n >= clusters >= 1");
  }
  Eigen::MatrixXd centers(n_clusters, d);
  for (int c = 0; c < n_clusters; ++c) {
    for (int j = 0; j < d; ++j) centers(c, j) = spread * (2.0 * rng.uniform() - 1.0);
  }
  Eigen::MatrixXd points(n, d);
  for (int i = 0; i < n; ++i) {
    const int c = i % n_clusters;
    for (int j = 0; j < d; ++j) points(i, j) = centers(c, j) + cluster_std * rng.normal();
  }
  return points;
}

Eigen::MatrixXd gen_clustered_skewed(int n, int n_clusters, int d, Rng& rng) {
  if (n < n_clusters || n_clusters < 1) {
    throw std::invalid_argument("gen_clustered_skewed: need n >= clusters >= 1");
  }
  Eigen::MatrixXd centers(n_clusters, d);
  Eigen::VectorXd stds(n_clusters);
  for (int c = 0; c < n_clusters; ++c) {
    const bool far = c % 5 == 0;
    const double radius = far ? 60.0 : 10.0;
    for (int j = 0; j < d; ++j) centers(c, j) = radius * (2.0 * rng.uniform() - 1.0);
    stds(c) = far ? 3.0 : 0.3;
  }
  Eigen::MatrixXd points(n, d);
  for (int i = 0; i < n; ++i) {
    const int c = i % n_clusters;
    for (int j = 0; j < d; ++j) points(i, j) = centers(c, j) + stds(c) * rng.normal();
  }
  return points;
}

// ---------------------------------------------------------------------------
// SVM on blobs
// ---------------------------------------------------------------------------

RunResult run_svm_blobs(const SvmBlobsConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Rng data_rng(cfg.data_seed);
  const BlobData data = gen_blobs(cfg.n, cfg.blob_count, cfg.separation, cfg.blob_std, data_rng);
  const ComponentSet cs = build_blob_components(data.blob_ids, cfg.blob_count, cfg.eps_mass);

  MixtureSampler sampler(cs, cfg.sampler, cfg.gamma, cfg.beta, cfg.eps, cfg.L);
  Rng rng(cfg.seed);

  const int d = static_cast<int>(data.points.cols());
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d + 1);  // last entry: bias
  const long long T = static_cast<long long>(cfg.epochs) * cfg.n;

  RunResult res;
  res.sampler = to_string(cfg.sampler);
  res.seed = cfg.seed;

  const auto accuracy = [&]() {
    int hits = 0;
    for (int i = 0; i < cfg.n; ++i) {
      const double s = data.points.row(i).dot(theta.head(d)) + theta(d);
      if ((s > 0.0 ? 1.0 : -1.0) == data.labels(i)) hits++;
    }
    return static_cast<double>(hits) / cfg.n;
  };

  for (long long t = 1; t <= T; ++t) {
    const auto [i, r] = sampler.draw(rng);
    const double margin =
        data.labels(i) * (data.points.row(i).dot(theta.head(d)) + theta(d));
    double fb = 0.0;
    if (margin < 1.0) {
      fb = std::sqrt(data.points.row(i).squaredNorm() + 1.0);
      const double eta = cfg.step_c / std::sqrt(static_cast<double>(t));
      theta.head(d) += eta * r * data.labels(i) * data.points.row(i).transpose();
      theta(d) += eta * r * data.labels(i);
    }
    sampler.feedback(i, fb);
    if (t % cfg.checkpoint_every == 0 || t == T) {
      res.iters.push_back(t);
      res.metric.push_back(accuracy());
    }
  }

  res.final_weights = sampler.weights();
  res.clip_count = sampler.clip_count();
  res.info["gamma"] = sampler.hyper().gamma;
  res.info["beta"] = sampler.hyper().beta;
  res.info["eps"] = sampler.hyper().eps;
  res.info["L"] = sampler.hyper().L;
  res.info["final_accuracy"] = res.metric.empty() ? 0.0 : res.metric.back();
  res.info["model_norm"] = theta.norm();
  res.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

// ---------------------------------------------------------------------------
// Linear regression with k-DPP minibatches
// ---------------------------------------------------------------------------

RunResult run_linreg_dpp(const LinregDppConfig& cfg, const RegressionData& data,
                         const SetMixture& mix) {
  const auto start = std::chrono::steady_clock::now();
  SetMixtureSampler sampler(mix, cfg.sampler, cfg.gamma, cfg.beta, cfg.eps, cfg.L, 100,
                            cfg.trunc);
  Rng rng(cfg.seed);

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(cfg.d);
  const long long T = static_cast<long long>(cfg.epochs) * (cfg.n / cfg.batch);

  RunResult res;
  res.sampler = to_string(cfg.sampler);
  res.seed = cfg.seed;

  for (long long t = 1; t <= T; ++t) {
    const SetSample s = sampler.draw(rng);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(cfg.d);
    for (int i : s.atoms) {
      g += (data.X.row(i).dot(theta) - data.y(i)) * data.X.row(i).transpose();
    }
    g *= 2.0 / cfg.batch;
    const double fb = g.norm();
    const double eta = cfg.step_c / std::sqrt(static_cast<double>(t));
    theta -= eta * s.r_trunc * g;
    sampler.feedback(s, fb);
    if (t % cfg.checkpoint_every == 0 || t == T) {
      res.iters.push_back(t);
      res.metric.push_back((data.X * theta - data.y).squaredNorm() / cfg.n);
    }
  }

  res.final_weights = sampler.weights();
  res.clip_count = sampler.clip_count();
  res.info["gamma"] = sampler.hyper().gamma;
  res.info["beta"] = sampler.hyper().beta;
  res.info["eps"] = sampler.hyper().eps;
  res.info["L"] = sampler.hyper().L;
  res.info["trunc_a"] = cfg.trunc.first;
  res.info["trunc_b"] = cfg.trunc.second;
  res.info["final_mse"] = res.metric.empty() ? 0.0 : res.metric.back();
  res.info["model_norm"] = theta.norm();
  res.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

RunResult run_linreg_dpp(const LinregDppConfig& cfg) {
  Rng data_rng(cfg.data_seed);
  const RegressionData data =
      gen_regression(cfg.n, cfg.d, cfg.scaled_points, cfg.scale, data_rng);
  std::vector<DppKernel> kernels;
  kernels.reserve(cfg.kernel_lambdas.size());
  for (double lam : cfg.kernel_lambdas) {
    kernels.push_back(DppKernel::from_points(data.X, lam, cfg.batch));
  }
  SetMixture mix(std::move(kernels), cfg.n, cfg.batch);
  return run_linreg_dpp(cfg, data, mix);
}

// ---------------------------------------------------------------------------
// Minibatch k-means
// ---------------------------------------------------------------------------

namespace {

struct KmeansRun {
  Eigen::MatrixXd centers;
  double test_loss = 0.0;
};

KmeansRun minibatch_kmeans(const Eigen::MatrixXd& train, const Eigen::MatrixXd& test,
                           Eigen::MatrixXd centers, MixtureSampler& sampler, Rng& rng, int iters,
                           int batch, int checkpoint_every, RunResult* res, double ref_loss) {
  const int kc = static_cast<int>(centers.rows());
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(kc);
  std::vector<int> atoms(batch), assign(batch);
  std::vector<double> weights(batch);

  for (int t = 1; t <= iters; ++t) {
    for (int j = 0; j < batch; ++j) {
      const auto [i, r] = sampler.draw(rng);
      atoms[j] = i;
      weights[j] = r;
      assign[j] = nearest_center(train.row(i), centers);
    }

    // gradient of the minibatch loss at the current centers, before updating
    Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(kc, train.cols());
    for (int j = 0; j < batch; ++j) {
      grad.row(assign[j]) += centers.row(assign[j]) - train.row(atoms[j]);
    }
    const double fb = 2.0 / batch * grad.norm();

    // Sculley-style per-center rates with importance-weighted counts
    for (int j = 0; j < batch; ++j) {
      const int c = assign[j];
      counts(c) += weights[j];
      centers.row(c) += (weights[j] / counts(c)) * (train.row(atoms[j]) - centers.row(c));
    }

    sampler.feedback_batch(atoms, fb);
    if (res && (t % checkpoint_every == 0 || t == iters)) {
      const double loss = kmeans_loss(test, centers);
      res->iters.push_back(t);
      res->metric.push_back((loss - ref_loss) / ref_loss);
    }
  }

  KmeansRun out;
  out.test_loss = kmeans_loss(test, centers);
  out.centers = std::move(centers);
  return out;
}

}  // namespace

RunResult run_kmeans(const KmeansConfig& cfg, const Eigen::MatrixXd& points) {
  const auto start = std::chrono::steady_clock::now();
  const int n = static_cast<int>(points.rows());
  if (n < cfg.clusters) throw std::invalid_argument("run_kmeans: fewer points than clusters");
  if (cfg.batch < 1 || cfg.iters < 1) throw std::invalid_argument("run_kmeans: bad batch/iters");

  Rng init_rng(cfg.init_seed);

  // shared 80/20 split
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng split_rng = init_rng.fork(1);
  for (int i = n - 1; i > 0; --i) {
    std::swap(order[i], order[static_cast<int>(split_rng.uniform_int(i + 1))]);
  }
  const int n_train = static_cast<int>(cfg.train_frac * n);
  Eigen::MatrixXd train(n_train, points.cols()), test(n - n_train, points.cols());
  for (int i = 0; i < n_train; ++i) train.row(i) = points.row(order[i]);
  for (int i = n_train; i < n; ++i) test.row(i - n_train) = points.row(order[i]);

  Rng pp_rng = init_rng.fork(2);
  const Eigen::MatrixXd init_centers = kmeanspp_init(train, cfg.clusters, pp_rng);

  Rng comp_rng = init_rng.fork(3);
  Eigen::MatrixXd comp_centers(cfg.n_components, points.cols());
  for (int j = 0; j < cfg.n_components; ++j) {
    comp_centers.row(j) = train.row(static_cast<int>(comp_rng.uniform_int(n_train)));
  }
  const ComponentSet cs = build_distance_components(train, comp_centers);

  double ref_loss = cfg.ref_loss;
  if (ref_loss <= 0.0) {
    const LloydResult ref = lloyd(train, init_centers);
    ref_loss = kmeans_loss(test, ref.centers);
  }

  double gamma = cfg.gamma;
  double beta = cfg.beta, eps = cfg.eps, L = cfg.L;
  double tuned_val_loss = 0.0;
  if (cfg.tune && cfg.sampler == SamplerKind::kVrm) {
    // pick gamma on a held-out slice of the training data
    Rng tune_rng = init_rng.fork(4);
    const int n_tr2 = static_cast<int>(0.8 * n_train);
    Eigen::MatrixXd tr2 = train.topRows(n_tr2);
    Eigen::MatrixXd val = train.bottomRows(n_train - n_tr2);
    const ComponentSet cs2 = build_distance_components(tr2, comp_centers);
    double best = std::numeric_limits<double>::infinity();
    for (double g : {0.05, 0.1, 0.2}) {
      if (g > 1.0 / cs2.k()) continue;
      MixtureSampler s(cs2, SamplerKind::kVrm, g, beta, eps, L, cfg.calib_rounds);
      Rng r = tune_rng.fork(static_cast<std::uint64_t>(g * 1000));
      KmeansRun kr = minibatch_kmeans(tr2, val, init_centers, s, r,
                                      std::max(cfg.iters / 5, 50), cfg.batch,
                                      cfg.checkpoint_every, nullptr, 1.0);
      if (kr.test_loss < best) {
        best = kr.test_loss;
        gamma = g;
      }
    }
    tuned_val_loss = best;
  }

  MixtureSampler sampler(cs, cfg.sampler, gamma, beta, eps, L, cfg.calib_rounds);
  Rng rng(cfg.seed);

  RunResult res;
  res.sampler = to_string(cfg.sampler);
  res.seed = cfg.seed;

  const KmeansRun final_run = minibatch_kmeans(train, test, init_centers, sampler, rng,
                                               cfg.iters, cfg.batch, cfg.checkpoint_every, &res,
                                               ref_loss);

  res.final_weights = sampler.weights();
  res.clip_count = sampler.clip_count();
  res.info["gamma"] = sampler.hyper().gamma;
  res.info["beta"] = sampler.hyper().beta;
  res.info["eps"] = sampler.hyper().eps;
  res.info["L"] = sampler.hyper().L;
  res.info["c"] = cs.c();
  res.info["ref_loss"] = ref_loss;
  res.info["final_test_loss"] = final_run.test_loss;
  res.info["final_rel_error"] = (final_run.test_loss - ref_loss) / ref_loss;
  res.info["model_norm"] = final_run.centers.norm();
  if (tuned_val_loss > 0.0) res.info["tuned_val_loss"] = tuned_val_loss;
  res.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace vrm
