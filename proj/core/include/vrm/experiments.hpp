#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "vrm/dpp.hpp"
#include "vrm/learner.hpp"
#include "vrm/mixture.hpp"
#include "vrm/rng.hpp"

namespace vrm {

enum class SamplerKind { kVrm, kUniform, kOgdBaseline };

std::string to_string(SamplerKind kind);
SamplerKind sampler_from_string(const std::string& name);

// ---------------------------------------------------------------------------
// Adaptive sampler wrappers
// ---------------------------------------------------------------------------

// Wires a ComponentSet to a weight learner. When L or beta are not supplied
// (<= 0) the first calib_rounds feedbacks are uniform-sampled calibration:
// L becomes the running max of the squared losses and beta/eps follow the
// 1/(8 G D) rule on the largest calibration gradient estimate. The uniform
// sampler ignores feedback and always draws from the uniform component.
class MixtureSampler {
 public:
  MixtureSampler(ComponentSet cs, SamplerKind kind, double gamma, double beta = 0.0,
                 double eps = 0.0, double L = 0.0, int calib_rounds = 100);

  std::pair<int, double> draw(Rng& rng);
  void feedback(int atom, double loss);

  // Delayed batch feedback: one update from the average per-atom estimate.
  void feedback_batch(const std::vector<int>& atoms, double loss);

  const ComponentSet& components() const { return cs_; }
  const Eigen::VectorXd& weights() const { return state_.w.vec(); }
  int clip_count() const { return state_.clip_count; }
  bool calibrated() const { return !calibrating_; }
  const HyperParams& hyper() const { return state_.hyper; }

 private:
  void finish_calibration();
  void apply_estimate(const Estimate& est);

  ComponentSet cs_;
  SamplerKind kind_;
  LearnerState state_;
  MixtureWeights uniform_w_;
  bool calibrating_ = false;
  int calib_rounds_ = 0;
  int calib_seen_ = 0;
  double calib_max_l2_ = 0.0;
  double calib_max_grad_ = 0.0;
  bool beta_given_ = false;
  long long ogd_t_ = 0;
  double ogd_scale_ = 1.0;
};

// Same wiring for mixtures over sets of points.
class SetMixtureSampler {
 public:
  SetMixtureSampler(SetMixture mix, SamplerKind kind, double gamma, double beta = 0.0,
                    double eps = 0.0, double L = 0.0, int calib_rounds = 100,
                    std::pair<double, double> trunc = {0.8, 0.2});

  SetSample draw(Rng& rng);
  void feedback(const SetSample& sample, double loss);

  const Eigen::VectorXd& weights() const { return state_.w.vec(); }
  int clip_count() const { return state_.clip_count; }
  const HyperParams& hyper() const { return state_.hyper; }

 private:
  void finish_calibration();

  SetMixture mix_;
  SamplerKind kind_;
  LearnerState state_;
  MixtureWeights uniform_w_;
  std::pair<double, double> trunc_;
  bool calibrating_ = false;
  int calib_rounds_ = 0;
  int calib_seen_ = 0;
  double calib_max_l2_ = 0.0;
  double calib_max_grad_ = 0.0;
  bool beta_given_ = false;
  long long ogd_t_ = 0;
};

// ---------------------------------------------------------------------------
// Synthetic data
// ---------------------------------------------------------------------------

struct BlobData {
  Eigen::MatrixXd points;   // n x 2
  Eigen::VectorXd labels;   // +-1; left-half blobs negative
  Eigen::VectorXi blob_ids; // blob index per point
};

// Balanced isotropic Gaussian blobs with means on a horizontal line,
// `separation` apart. n % blob_count spare points go round-robin.
BlobData gen_blobs(int n, int blob_count, double separation, double blob_std, Rng& rng);

struct RegressionData {
  Eigen::MatrixXd X;  // n x d
  Eigen::VectorXd y;
  Eigen::VectorXd w0;
  std::vector<int> scaled_idx;
};

// Normal features with per-dimension random means/scales; `scaled_points`
// random rows scaled up by `scale`; y = X w0 + standard normal noise with
// w0 ~ N(0, 25).
RegressionData gen_regression(int n, int d, int scaled_points, double scale, Rng& rng);

// Isotropic Gaussian clusters with uniformly placed centers.
Eigen::MatrixXd gen_clustered(int n, int n_clusters, int d, double spread, double cluster_std,
                              Rng& rng);

// Dense tight core plus far-flung wide clusters (every fifth), mimicking the
// skewed density of real sensor/feature dumps where proportional-to-distance
// proposals carry signal.
Eigen::MatrixXd gen_clustered_skewed(int n, int n_clusters, int d, Rng& rng);

// ---------------------------------------------------------------------------
// Experiment runners
// ---------------------------------------------------------------------------

struct RunResult {
  std::vector<long long> iters;
  std::vector<double> metric;  // accuracy / MSE / relative k-means error
  Eigen::VectorXd final_weights;
  double wall_time_sec = 0.0;
  int clip_count = 0;
  std::string sampler;
  std::uint64_t seed = 0;
  std::map<std::string, double> info;  // resolved hyperparameters, extras
};

struct SvmBlobsConfig {
  int n = 10000;
  int blob_count = 6;
  double separation = 10.0;
  double blob_std = 1.0;
  double eps_mass = 0.1;
  int epochs = 5;
  double step_c = 0.01;  // eta_t = step_c / sqrt(t)
  SamplerKind sampler = SamplerKind::kVrm;
  std::uint64_t seed = 1;
  std::uint64_t data_seed = 99;
  double gamma = 0.05;
  double beta = 0.0, eps = 0.0, L = 0.0;  // <= 0: calibrated
  int checkpoint_every = 2500;
};

RunResult run_svm_blobs(const SvmBlobsConfig& cfg);

struct LinregDppConfig {
  int n = 1000;
  int d = 10;
  int scaled_points = 10;
  double scale = 10.0;
  int epochs = 100;
  int batch = 5;
  double step_c = 1e-4;  // eta_t = step_c / sqrt(t)
  std::vector<double> kernel_lambdas = {1.0, 10.0, 100.0};
  std::pair<double, double> trunc = {0.8, 0.2};
  SamplerKind sampler = SamplerKind::kVrm;
  std::uint64_t seed = 1;
  std::uint64_t data_seed = 7;
  double gamma = 0.1;
  double beta = 0.0, eps = 0.0, L = 0.0;
  int checkpoint_every = 50;
};

RunResult run_linreg_dpp(const LinregDppConfig& cfg);

// Shared-data variant: reuse an already generated dataset and kernel mixture
// (the eigendecompositions dominate setup time across seeds).
RunResult run_linreg_dpp(const LinregDppConfig& cfg, const RegressionData& data,
                         const SetMixture& mix);

struct KmeansConfig {
  int clusters = 100;
  int batch = 100;
  int iters = 2000;
  int n_components = 10;  // distance components (uniform appended)
  double train_frac = 0.8;
  SamplerKind sampler = SamplerKind::kVrm;
  std::uint64_t seed = 1;
  std::uint64_t init_seed = 1;  // k-means++ init + component centers, shared across samplers
  double gamma = 0.1;
  double beta = 0.0, eps = 0.0, L = 0.0;
  bool tune = false;  // pick gamma/beta on 80/20 validation split of the train set
  double ref_loss = 0.0;  // reference test loss; <= 0: run Lloyd internally
  int checkpoint_every = 100;
  int calib_rounds = 20;  // batch feedbacks are rich; 20 batches suffice
};

// Minibatch k-means (per-center learning rates) with importance-weighted
// center updates; metric = relative error of the test loss against the
// full-batch Lloyd reference from the shared initialization.
RunResult run_kmeans(const KmeansConfig& cfg, const Eigen::MatrixXd& points);

}  // namespace vrm
