#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "vrm/dpp.hpp"
#include "vrm/learner.hpp"
#include "vrm/mixture.hpp"
#include "vrm/rng.hpp"
#include "vrm/simplex.hpp"

namespace {

using namespace vrm;

ComponentSet make_components(int k_minus_1, int n, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd raw(k_minus_1, n);
  for (int j = 0; j < k_minus_1; ++j) {
    for (int i = 0; i < n; ++i) raw(j, i) = 0.05 + rng.uniform();
    raw.row(j) /= raw.row(j).sum();
  }
  return ComponentSet::attach_uniform(raw, n);
}

void BM_ProjRestricted(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  Rng rng(1);
  const RestrictedSimplexSpec spec{k, 0.05};
  Eigen::VectorXd w(k);
  for (auto _ : state) {
    state.PauseTiming();
    for (int i = 0; i < k; ++i) w(i) = 2.0 * rng.uniform() - 1.0;
    state.ResumeTiming();
    benchmark::DoNotOptimize(proj_restricted(w, spec));
  }
}
BENCHMARK(BM_ProjRestricted)->Arg(4)->Arg(16)->Arg(32);

void BM_ProjHNorm(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  Rng rng(2);
  const RestrictedSimplexSpec spec{k, 0.05};
  Eigen::MatrixXd A(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) A(i, j) = rng.normal();
  }
  const Eigen::MatrixXd H = A * A.transpose() + 0.5 * Eigen::MatrixXd::Identity(k, k);
  Eigen::VectorXd w(k);
  for (auto _ : state) {
    state.PauseTiming();
    for (int i = 0; i < k; ++i) w(i) = 2.0 * rng.uniform() - 1.0;
    state.ResumeTiming();
    benchmark::DoNotOptimize(proj_h_norm(w, H, spec));
  }
}
BENCHMARK(BM_ProjHNorm)->Arg(4)->Arg(16)->Arg(32);

void BM_SampleAtom(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ComponentSet cs = make_components(3, n, 3);
  const MixtureWeights w = MixtureWeights::uniform(4, 0.1);
  Rng rng(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cs.sample_atom(w, rng));
  }
}
BENCHMARK(BM_SampleAtom)->Arg(1000)->Arg(100000);

// the per-round learner work: estimate from feedback plus the Newton update
void BM_LearnerUpdate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = 10;
  const ComponentSet cs = make_components(k - 1, n, 5);
  // gradient estimates scale like n^2; match beta and eps to that scale
  const double scale = static_cast<double>(n) * n / 1e6;
  HyperParams hp{0.05, 1e-3 / scale, 1e3 * scale * scale, 1.0};
  LearnerState s = LearnerState::init(k, hp);
  Rng rng(6);
  for (auto _ : state) {
    const int atom = static_cast<int>(rng.uniform_int(n));
    const Estimate est = estimate_from_feedback(cs, s.w.vec(), atom, rng.uniform());
    ons_update(s, est.grad);
  }
}
BENCHMARK(BM_LearnerUpdate)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_KdppSample(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(7);
  Eigen::MatrixXd X(n, 10);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < 10; ++j) X(i, j) = rng.normal();
  }
  const DppKernel kernel = DppKernel::from_points(X, 10.0, 5);
  Rng draw(8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel.sample(draw));
  }
}
BENCHMARK(BM_KdppSample)->Arg(200)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
