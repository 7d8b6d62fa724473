#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "vrm/experiments.hpp"
#include "vrm/kmeans.hpp"

using namespace vrm;

TEST_CASE("gen_blobs: balanced assignment, labels and ordered means") {
  Rng rng(1);
  const BlobData data = gen_blobs(12, 6, 10.0, 1.0, rng);
  Eigen::VectorXi sizes = Eigen::VectorXi::Zero(6);
  for (int i = 0; i < 12; ++i) sizes(data.blob_ids(i))++;
  for (int b = 0; b < 6; ++b) CHECK(sizes(b) == 2);
  for (int i = 0; i < 12; ++i) {
    CHECK(data.labels(i) == (data.blob_ids(i) < 3 ? -1.0 : 1.0));
  }

  // blob means strictly increasing in x
  Eigen::VectorXd mean_x = Eigen::VectorXd::Zero(6);
  for (int i = 0; i < 12; ++i) mean_x(data.blob_ids(i)) += data.points(i, 0) / 2.0;
  for (int b = 1; b < 6; ++b) CHECK(mean_x(b) > mean_x(b - 1));

  CHECK_THROWS_AS(gen_blobs(12, 6, 0.0, 1.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(gen_blobs(12, 6, -1.0, 1.0, rng), std::invalid_argument);
}

TEST_CASE("gen_blobs: large separation keeps blobs far apart") {
  Rng rng(2);
  const BlobData data = gen_blobs(600, 6, 10.0, 1.0, rng);
  double min_cross = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 600; ++i) {
    for (int j = i + 1; j < 600; ++j) {
      if (data.blob_ids(i) == data.blob_ids(j)) continue;
      min_cross = std::min(min_cross, (data.points.row(i) - data.points.row(j)).norm());
    }
  }
  CHECK(min_cross > 4.0);  // 10 sigma separation leaves > 4 sigma gaps
}

TEST_CASE("gen_regression: residual variance near one, scaled rows stand out") {
  Rng rng(3);
  const RegressionData data = gen_regression(1000, 10, 10, 10.0, rng);
  const Eigen::VectorXd resid = data.y - data.X * data.w0;
  const double var = resid.squaredNorm() / 1000.0;
  CHECK(var == doctest::Approx(1.0).epsilon(0.15));

  std::vector<double> norms;
  for (int i = 0; i < 1000; ++i) norms.push_back(data.X.row(i).norm());
  std::vector<double> sorted = norms;
  std::nth_element(sorted.begin(), sorted.begin() + 500, sorted.end());
  const double median = sorted[500];
  for (int i : data.scaled_idx) {
    CHECK(norms[i] >= 5.0 * median);
    CHECK(norms[i] <= 20.0 * median);
  }

  // scale = 1 leaves no distinguished rows
  Rng rng2(4);
  const RegressionData flat = gen_regression(200, 5, 10, 1.0, rng2);
  double max_norm = 0.0;
  for (int i = 0; i < 200; ++i) max_norm = std::max(max_norm, flat.X.row(i).norm());
  for (int i : flat.scaled_idx) CHECK(flat.X.row(i).norm() <= max_norm);
}

TEST_CASE("run_svm_blobs: both samplers separate the blobs") {
  SvmBlobsConfig cfg;
  cfg.n = 600;
  cfg.epochs = 5;
  cfg.seed = 1;
  cfg.checkpoint_every = 600;
  for (SamplerKind kind : {SamplerKind::kUniform, SamplerKind::kVrm}) {
    cfg.sampler = kind;
    const RunResult res = run_svm_blobs(cfg);
    CHECK(res.metric.back() > 0.99);
    CHECK(res.iters.back() == 3000);
  }
}

TEST_CASE("run_svm_blobs: near-degenerate separation keeps weights near uniform") {
  // single trajectories wander, but with no blob special the seed-averaged
  // weights sit near the symmetric share (1 - gamma)/6
  SvmBlobsConfig cfg;
  cfg.n = 600;
  cfg.epochs = 3;
  cfg.separation = 1e-6;
  cfg.sampler = SamplerKind::kVrm;
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(7);
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    cfg.seed = seed;
    mean += run_svm_blobs(cfg).final_weights;
  }
  mean /= 8.0;
  const double share = (1.0 - cfg.gamma) / 6.0;
  for (int b = 0; b < 6; ++b) CHECK(std::abs(mean(b) - share) <= 0.06);
}

TEST_CASE("run_svm_blobs: uniform sampler trajectory equals a plain SGD loop bit for bit") {
  SvmBlobsConfig cfg;
  cfg.n = 300;
  cfg.epochs = 2;
  cfg.sampler = SamplerKind::kUniform;
  cfg.checkpoint_every = 100;
  const RunResult res = run_svm_blobs(cfg);

  // plain counterpart: same data, same seed, uniform draws, r from the sampler
  Rng data_rng(cfg.data_seed);
  const BlobData data = gen_blobs(cfg.n, cfg.blob_count, cfg.separation, cfg.blob_std, data_rng);
  const ComponentSet cs = build_blob_components(data.blob_ids, cfg.blob_count, cfg.eps_mass);
  Eigen::VectorXd e_k = Eigen::VectorXd::Zero(cs.k());
  e_k(cs.k() - 1) = 1.0;
  const MixtureWeights uniform_w(e_k, cfg.gamma);

  Rng rng(cfg.seed);
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(3);
  for (long long t = 1; t <= 2LL * cfg.n; ++t) {
    const auto [i, r] = cs.sample_atom(uniform_w, rng);
    const double margin = data.labels(i) * (data.points.row(i).dot(theta.head(2)) + theta(2));
    if (margin < 1.0) {
      const double eta = cfg.step_c / std::sqrt(static_cast<double>(t));
      theta.head(2) += eta * r * data.labels(i) * data.points.row(i).transpose();
      theta(2) += eta * r * data.labels(i);
    }
  }
  CHECK(res.info.at("model_norm") == theta.norm());
}

TEST_CASE("MixtureSampler: vrm on the uniform-only set matches the uniform sampler exactly") {
  const ComponentSet uni = ComponentSet::attach_uniform(Eigen::MatrixXd(0, 0), 50);
  MixtureSampler a(uni, SamplerKind::kVrm, 1.0);
  MixtureSampler b(uni, SamplerKind::kUniform, 1.0);
  Rng ra(9), rb(9);
  Rng loss_rng(10);
  for (int t = 0; t < 500; ++t) {
    const auto da = a.draw(ra);
    const auto db = b.draw(rb);
    CHECK(da.first == db.first);
    CHECK(da.second == 1.0);
    CHECK(db.second == 1.0);
    const double loss = loss_rng.uniform();
    a.feedback(da.first, loss);
    b.feedback(db.first, loss);
    CHECK(a.weights()(0) == 1.0);
  }
}

TEST_CASE("run_linreg_dpp: uniform-sets sampler equals plain minibatch SGD bit for bit") {
  LinregDppConfig cfg;
  cfg.n = 60;
  cfg.d = 4;
  cfg.scaled_points = 4;
  cfg.epochs = 4;
  cfg.batch = 3;
  cfg.sampler = SamplerKind::kUniform;
  cfg.checkpoint_every = 20;
  const RunResult res = run_linreg_dpp(cfg);

  Rng data_rng(cfg.data_seed);
  const RegressionData data = gen_regression(cfg.n, cfg.d, cfg.scaled_points, cfg.scale, data_rng);
  std::vector<DppKernel> kernels;
  for (double lam : cfg.kernel_lambdas) {
    kernels.push_back(DppKernel::from_points(data.X, lam, cfg.batch));
  }
  const SetMixture mix(std::move(kernels), cfg.n, cfg.batch);
  Eigen::VectorXd e_k = Eigen::VectorXd::Zero(mix.k());
  e_k(mix.k() - 1) = 1.0;
  const MixtureWeights uniform_w(e_k, cfg.gamma);

  Rng rng(cfg.seed);
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(cfg.d);
  const long long T = static_cast<long long>(cfg.epochs) * (cfg.n / cfg.batch);
  for (long long t = 1; t <= T; ++t) {
    const SetSample s = mix.sample(uniform_w, rng, cfg.trunc);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(cfg.d);
    for (int i : s.atoms) {
      g += (data.X.row(i).dot(theta) - data.y(i)) * data.X.row(i).transpose();
    }
    g *= 2.0 / cfg.batch;
    theta -= (cfg.step_c / std::sqrt(static_cast<double>(t))) * s.r_trunc * g;
  }
  CHECK(res.info.at("model_norm") == theta.norm());
}

TEST_CASE("run_linreg_dpp: the full pipeline is deterministic under a fixed seed") {
  LinregDppConfig cfg;
  cfg.n = 60;
  cfg.d = 4;
  cfg.scaled_points = 4;
  cfg.epochs = 8;
  cfg.batch = 3;
  cfg.sampler = SamplerKind::kVrm;
  const RunResult a = run_linreg_dpp(cfg);
  const RunResult b = run_linreg_dpp(cfg);
  CHECK(a.info.at("model_norm") == b.info.at("model_norm"));
  CHECK(a.metric == b.metric);
  CHECK((a.final_weights - b.final_weights).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("run_linreg_dpp: vrm run completes and reduces the MSE") {
  LinregDppConfig cfg;
  cfg.n = 80;
  cfg.d = 4;
  cfg.scaled_points = 4;
  cfg.epochs = 30;
  cfg.batch = 4;
  cfg.step_c = 1e-3;
  cfg.sampler = SamplerKind::kVrm;
  cfg.checkpoint_every = 50;
  const RunResult res = run_linreg_dpp(cfg);
  CHECK(res.metric.back() < res.metric.front());
  CHECK(res.final_weights.size() == 4);
  CHECK(std::abs(res.final_weights.sum() - 1.0) <= 1e-9);
}

TEST_CASE("run_kmeans: uniform sampler equals a plain Sculley loop bit for bit") {
  Rng data_rng(11);
  const Eigen::MatrixXd points = gen_clustered(400, 8, 3, 10.0, 1.0, data_rng);
  KmeansConfig cfg;
  cfg.clusters = 8;
  cfg.batch = 20;
  cfg.iters = 40;
  cfg.n_components = 3;
  cfg.sampler = SamplerKind::kUniform;
  cfg.checkpoint_every = 20;
  const RunResult res = run_kmeans(cfg, points);

  // replicate the split, init and batch loop
  const int n = 400;
  Rng init_rng(cfg.init_seed);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng split_rng = init_rng.fork(1);
  for (int i = n - 1; i > 0; --i) {
    std::swap(order[i], order[static_cast<int>(split_rng.uniform_int(i + 1))]);
  }
  const int n_train = static_cast<int>(cfg.train_frac * n);
  Eigen::MatrixXd train(n_train, 3);
  for (int i = 0; i < n_train; ++i) train.row(i) = points.row(order[i]);
  Rng pp_rng = init_rng.fork(2);
  Eigen::MatrixXd centers = kmeanspp_init(train, cfg.clusters, pp_rng);

  Rng comp_rng = init_rng.fork(3);
  Eigen::MatrixXd comp_centers(cfg.n_components, 3);
  for (int j = 0; j < cfg.n_components; ++j) {
    comp_centers.row(j) = train.row(static_cast<int>(comp_rng.uniform_int(n_train)));
  }
  const ComponentSet cs = build_distance_components(train, comp_centers);
  Eigen::VectorXd e_k = Eigen::VectorXd::Zero(cs.k());
  e_k(cs.k() - 1) = 1.0;
  const MixtureWeights uniform_w(e_k, cfg.gamma);

  Rng rng(cfg.seed);
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(cfg.clusters);
  for (int t = 1; t <= cfg.iters; ++t) {
    std::vector<int> atoms(cfg.batch), assign(cfg.batch);
    std::vector<double> rs(cfg.batch);
    for (int j = 0; j < cfg.batch; ++j) {
      const auto [i, r] = cs.sample_atom(uniform_w, rng);
      atoms[j] = i;
      rs[j] = r;
      assign[j] = nearest_center(train.row(i), centers);
    }
    for (int j = 0; j < cfg.batch; ++j) {
      const int c = assign[j];
      counts(c) += rs[j];
      centers.row(c) += (rs[j] / counts(c)) * (train.row(atoms[j]) - centers.row(c));
    }
  }
  CHECK(res.info.at("model_norm") == centers.norm());
}

TEST_CASE("run_kmeans: vrm completes; fewer points than clusters rejected") {
  Rng data_rng(12);
  const Eigen::MatrixXd points = gen_clustered(400, 8, 3, 10.0, 1.0, data_rng);
  KmeansConfig cfg;
  cfg.clusters = 8;
  cfg.batch = 20;
  cfg.iters = 60;
  cfg.n_components = 3;
  cfg.sampler = SamplerKind::kVrm;
  const RunResult res = run_kmeans(cfg, points);
  CHECK(res.final_weights.size() == 4);
  CHECK(res.info.count("ref_loss") == 1);
  CHECK(std::isfinite(res.info.at("final_rel_error")));

  KmeansConfig bad = cfg;
  bad.clusters = 500;
  CHECK_THROWS_AS(run_kmeans(bad, points), std::invalid_argument);
}

TEST_CASE("MixtureSampler: a given beta survives calibration of L") {
  Eigen::MatrixXd raw(1, 20);
  raw.setConstant(0.05);
  const ComponentSet cs = ComponentSet::attach_uniform(raw);
  MixtureSampler s(cs, SamplerKind::kVrm, 0.3, 0.125, 32.0, 0.0, 10);  // L calibrated
  Rng rng(14);
  Rng loss_rng(15);
  double max_l2 = 0.0;
  for (int t = 0; t < 10; ++t) {
    const auto [i, r] = s.draw(rng);
    const double loss = loss_rng.uniform();
    max_l2 = std::max(max_l2, loss * loss);
    s.feedback(i, loss);
  }
  CHECK(s.calibrated());
  CHECK(s.hyper().beta == 0.125);
  CHECK(s.hyper().eps == 32.0);
  CHECK(s.hyper().L == max_l2);
}

TEST_CASE("feedback above the declared bound is clipped and counted") {
  const ComponentSet uni = ComponentSet::attach_uniform(Eigen::MatrixXd(0, 0), 20);
  Eigen::MatrixXd raw(1, 20);
  raw.setConstant(0.05);
  const ComponentSet cs = ComponentSet::attach_uniform(raw);
  MixtureSampler s(cs, SamplerKind::kVrm, 0.3, 0.1, 10.0, 1.0);  // L = 1 declared
  Rng rng(13);
  for (int t = 0; t < 30; ++t) {
    const auto [i, r] = s.draw(rng);
    s.feedback(i, 2.0);  // squared loss 4 > 1
  }
  CHECK(s.clip_count() == 30);
}
