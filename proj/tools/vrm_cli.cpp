// Command line front end: regret simulations, experiment reproductions and a
// projection self-test. Artifacts are CSV series plus a summary.json that
// echoes the fully resolved configuration.

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Dense>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "vrm/experiments.hpp"
#include "vrm/io.hpp"
#include "vrm/kmeans.hpp"
#include "vrm/learner.hpp"
#include "vrm/oracle.hpp"
#include "vrm/simplex.hpp"

using json = nlohmann::json;
using namespace vrm;

namespace {

std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  std::vector<std::uint64_t> seeds;
  std::string token;
  std::stringstream ss(spec);
  while (std::getline(ss, token, ',')) {
    const auto dots = token.find("..");
    if (dots != std::string::npos) {
      const std::uint64_t lo = std::stoull(token.substr(0, dots));
      const std::uint64_t hi = std::stoull(token.substr(dots + 2));
      for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    } else if (!token.empty()) {
      seeds.push_back(std::stoull(token));
    }
  }
  if (seeds.empty()) throw CLI::ValidationError("--seeds", "no seeds given");
  return seeds;
}

std::vector<double> parse_double_list(const std::string& spec) {
  std::vector<double> out;
  std::string token;
  std::stringstream ss(spec);
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) out.push_back(std::stod(token));
  }
  return out;
}

// seed-level parallelism; each worker owns its outputs, errors are collected
void for_each_seed(const std::vector<std::uint64_t>& seeds, int jobs,
                   const std::function<void(std::uint64_t)>& fn,
                   std::vector<std::string>* errors) {
  std::mutex err_mutex;
  std::atomic<std::size_t> next{0};
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(seeds.size())));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < seeds.size(); i = next.fetch_add(1)) {
        try {
          fn(seeds[i]);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(err_mutex);
          errors->push_back("seed " + std::to_string(seeds[i]) + ": " + e.what());
        }
      }
    });
  }
  for (auto& t : pool) t.join();
}

json aggregate_metric(const std::vector<RunResult>& results) {
  json agg = json::array();
  if (results.empty()) return agg;
  const std::size_t len = results.front().iters.size();
  for (const auto& r : results) {
    if (r.iters.size() != len) return agg;  // ragged runs: skip aggregation
  }
  const double m = static_cast<double>(results.size());
  for (std::size_t i = 0; i < len; ++i) {
    double mean = 0.0;
    for (const auto& r : results) mean += r.metric[i];
    mean /= m;
    double var = 0.0;
    for (const auto& r : results) var += (r.metric[i] - mean) * (r.metric[i] - mean);
    const double half = m > 1 ? 1.96 * std::sqrt(var / (m - 1) / m) : 0.0;
    agg.push_back({{"iter", results.front().iters[i]},
                   {"mean", mean},
                   {"ci95_half_width", half}});
  }
  return agg;
}

json run_result_json(const RunResult& r) {
  json j;
  j["seed"] = r.seed;
  j["sampler"] = r.sampler;
  j["wall_time_sec"] = r.wall_time_sec;
  j["clip_count"] = r.clip_count;
  j["final_weights"] = std::vector<double>(r.final_weights.data(),
                                           r.final_weights.data() + r.final_weights.size());
  for (const auto& [key, value] : r.info) j[key] = value;
  return j;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// regret-sim
// ---------------------------------------------------------------------------

struct RegretSimOpts {
  std::string adversary = "constant";
  std::string learner = "vrm";
  std::string instance = "delta";
  std::string components_csv;
  std::string losses_sq = "1,4";
  std::string T_list = "10000";
  std::string seeds = "1";
  int n = 2;
  int k = 3;
  long long switch_at = 0;  // piecewise: 0 = T/2
  double gamma = 0.0, beta = 0.0, eps = 0.0, L = 0.0;  // 0 = schedule defaults
  std::uint64_t instance_seed = 1234;
  std::string out;
  int jobs = 1;
};

struct RegretRun {
  std::vector<long long> checkpoints;
  std::vector<double> regret;  // true regret at the checkpoints, /n^2
  double final_regret = 0.0;
};

ComponentSet build_instance(const RegretSimOpts& opt) {
  if (!opt.components_csv.empty()) {
    return ComponentSet::attach_uniform(load_components_csv(opt.components_csv));
  }
  if (opt.instance == "delta") {
    Eigen::MatrixXd raw = Eigen::MatrixXd::Identity(opt.n, opt.n);
    return ComponentSet::attach_uniform(raw);
  }
  // random row-stochastic components
  Rng rng(opt.instance_seed);
  Eigen::MatrixXd raw(opt.k - 1, opt.n);
  for (int j = 0; j < opt.k - 1; ++j) {
    for (int i = 0; i < opt.n; ++i) raw(j, i) = 0.05 + rng.uniform();
    raw.row(j) /= raw.row(j).sum();
  }
  return ComponentSet::attach_uniform(raw, opt.n);
}

// full loss vectors per round; the sgd adversary adapts to the sampled atoms
class Adversary {
 public:
  Adversary(const RegretSimOpts& opt, const ComponentSet& cs, long long T, std::uint64_t seed)
      : kind_(opt.adversary), n_(cs.n()) {
    const std::vector<double> given = parse_double_list(opt.losses_sq);
    base_ = Eigen::VectorXd::Ones(n_);
    for (int i = 0; i < n_ && i < static_cast<int>(given.size()); ++i) base_(i) = given[i];
    switch_at_ = opt.switch_at > 0 ? opt.switch_at : T / 2;
    if (kind_ == "sgd") {
      Rng rng(seed + 500);
      X_.resize(n_, 3);
      y_.resize(n_);
      for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < 3; ++j) X_(i, j) = rng.normal();
        y_(i) = X_.row(i).sum() + 0.1 * rng.normal();
      }
      theta_ = Eigen::VectorXd::Zero(3);
    }
  }

  Eigen::VectorXd losses_sq(long long t) const {
    if (kind_ == "piecewise" && t >= switch_at_) {
      return base_.reverse();
    }
    if (kind_ == "sgd") {
      return (y_ - X_ * theta_).array().square();
    }
    return base_;
  }

  // the sequential solver steps on the revealed atom (non-oblivious)
  void observe(int atom, long long t) {
    if (kind_ != "sgd") return;
    const double resid = X_.row(atom).dot(theta_) - y_(atom);
    theta_ -= 0.05 / std::sqrt(static_cast<double>(t + 1)) * resid * X_.row(atom).transpose();
  }

 private:
  std::string kind_;
  int n_;
  long long switch_at_ = 0;
  Eigen::VectorXd base_;
  Eigen::MatrixXd X_;
  Eigen::VectorXd y_;
  Eigen::VectorXd theta_;
};

std::vector<long long> log_checkpoints(long long T, int count) {
  std::vector<long long> cps;
  for (int i = 1; i <= count; ++i) {
    const long long t = std::llround(std::pow(double(T), double(i) / count));
    if (cps.empty() || t > cps.back()) cps.push_back(t);
  }
  if (cps.back() != T) cps.push_back(T);
  return cps;
}

RegretRun simulate_regret(const RegretSimOpts& opt, const ComponentSet& cs, long long T,
                          std::uint64_t seed, const std::string& out_dir) {
  const int n = cs.n(), k = cs.k();
  const double n2 = static_cast<double>(n) * n;
  const FeedbackMode mode =
      opt.learner == "vrm" ? FeedbackMode::kPartial : FeedbackMode::kFull;

  Adversary adv(opt, cs, T, seed);
  double L = opt.L;
  if (L <= 0.0) {
    L = adv.losses_sq(0).maxCoeff();
    if (opt.adversary == "piecewise") L = std::max(L, adv.losses_sq(T).maxCoeff());
    if (opt.adversary == "sgd") L = std::max(1.0, 4.0 * L);
  }
  const double gamma = opt.gamma > 0.0 ? opt.gamma : default_gamma(k, T, cs.c(), mode);
  auto [beta, eps] = default_beta_eps(gamma, n, L, cs.c(), k, mode);
  if (opt.beta > 0.0) beta = opt.beta;
  if (opt.eps > 0.0) eps = opt.eps;

  LearnerState state = LearnerState::init(k, HyperParams{gamma, beta, eps, L});
  const double G = gradient_bound(gamma, n, L, cs.c(), k, mode);
  Rng rng(seed);
  RegretLedger ledger;
  Eigen::VectorXd summed = Eigen::VectorXd::Zero(n);
  const auto cps = log_checkpoints(T, 24);
  std::vector<double> cum_true_at;
  double cum_true = 0.0;
  std::vector<Eigen::VectorXd> summed_at;
  std::size_t next_cp = 0;

  for (long long t = 0; t < T; ++t) {
    const Eigen::VectorXd l2 = adv.losses_sq(t);
    const double f_true = cost_full(cs, state.w.vec(), l2);
    cum_true += f_true / n2;
    summed += l2;

    if (opt.learner == "vrm") {
      const auto outcome = vrm_round(
          state, cs, rng, [&](int i) { return std::sqrt(l2(i)); }, &ledger);
      adv.observe(outcome.atom, t);
      ledger.cost_true.back() = f_true / n2;
    } else if (opt.learner == "ons") {
      ledger.append(f_true / n2, f_true / n2, state.w.vec());
      ons_update(state, grad_full(cs, state.w.vec(), l2));
      adv.observe(static_cast<int>(rng.uniform_int(n)), t);
    } else {  // ogd, full information baseline
      const Eigen::VectorXd g = grad_full(cs, state.w.vec(), l2);
      ledger.append(f_true / n2, f_true / n2, state.w.vec());
      ogd_round(state, g, kSimplexDiameter / (G * std::sqrt(static_cast<double>(t + 1))));
      adv.observe(static_cast<int>(rng.uniform_int(n)), t);
    }

    if (next_cp < cps.size() && t + 1 == cps[next_cp]) {
      cum_true_at.push_back(cum_true);
      summed_at.push_back(summed);
      next_cp++;
    }
  }

  write_ledger_csv(out_dir + "/ledger_T" + std::to_string(T) + "_seed" + std::to_string(seed) +
                       ".csv",
                   ledger);

  RegretRun run;
  run.checkpoints = cps;
  std::vector<double> oracle_at(cps.size());
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const OracleResult best =
        hindsight_oracle_summed(cs, summed_at[i], OracleDomain::kFullSimplex, 1.0, 5000, 1e-9);
    oracle_at[i] = best.value / n2;
  }
  // regret_curve cumulates, so feed it the per-checkpoint increments
  std::vector<double> increments(cps.size());
  for (std::size_t i = 0; i < cps.size(); ++i) {
    increments[i] = cum_true_at[i] - (i == 0 ? 0.0 : cum_true_at[i - 1]);
  }
  run.regret = regret_curve(increments, oracle_at);
  run.final_regret = run.regret.back();
  return run;
}

int cmd_regret_sim(const RegretSimOpts& opt) {
  const std::string out_dir = resolve_output_dir(opt.out);
  const ComponentSet cs = build_instance(opt);
  const auto seeds = parse_seeds(opt.seeds);
  std::vector<long long> Ts;
  for (double v : parse_double_list(opt.T_list)) Ts.push_back(static_cast<long long>(v));

  json summary;
  summary["command"] = "regret-sim";
  summary["config"] = {{"adversary", opt.adversary}, {"learner", opt.learner},
                       {"instance", opt.instance},  {"losses_sq", opt.losses_sq},
                       {"n", cs.n()},               {"k", cs.k()},
                       {"c", cs.c()},               {"T", opt.T_list},
                       {"seeds", opt.seeds},        {"gamma", opt.gamma},
                       {"beta", opt.beta},          {"eps", opt.eps},
                       {"L", opt.L},                {"jobs", opt.jobs},
                       {"out", out_dir}};

  std::vector<std::string> errors;
  std::mutex results_mutex;
  json per_T = json::array();
  std::vector<double> mean_final;

  for (long long T : Ts) {
    std::vector<RegretRun> runs(seeds.size());
    for_each_seed(
        seeds, opt.jobs,
        [&](std::uint64_t seed) {
          RegretRun run = simulate_regret(opt, cs, T, seed, out_dir);
          std::lock_guard<std::mutex> lock(results_mutex);
          for (std::size_t i = 0; i < seeds.size(); ++i) {
            if (seeds[i] == seed) runs[i] = std::move(run);
          }
        },
        &errors);
    if (!errors.empty()) break;

    double mean = 0.0;
    for (const auto& r : runs) mean += r.final_regret;
    mean /= runs.size();
    mean_final.push_back(mean);

    json jt;
    jt["T"] = T;
    jt["mean_final_regret"] = mean;
    jt["per_seed_final_regret"] = json::array();
    for (std::size_t i = 0; i < runs.size(); ++i) {
      jt["per_seed_final_regret"].push_back({{"seed", seeds[i]},
                                             {"regret", runs[i].final_regret}});
    }
    json curve = json::array();
    for (std::size_t cp = 0; cp < runs.front().checkpoints.size(); ++cp) {
      double m = 0.0;
      for (const auto& r : runs) m += r.regret[cp];
      curve.push_back({{"t", runs.front().checkpoints[cp]}, {"mean_regret", m / runs.size()}});
    }
    jt["regret_curve"] = curve;
    per_T.push_back(jt);
  }

  summary["per_T"] = per_T;
  if (Ts.size() >= 2 && errors.empty()) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < Ts.size(); ++i) {
      if (mean_final[i] > 0.0) {
        lx.push_back(std::log(static_cast<double>(Ts[i])));
        ly.push_back(std::log(mean_final[i]));
      }
    }
    if (lx.size() >= 2) summary["slope"] = fit_slope(lx, ly);
  }
  if (!errors.empty()) summary["errors"] = errors;
  write_json(out_dir + "/summary.json", summary);
  return errors.empty() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// experiments
// ---------------------------------------------------------------------------

template <typename Config, typename Runner>
int run_experiment_command(const std::string& name, const Config& base,
                           const std::string& seeds_spec, const std::string& out, int jobs,
                           const json& config_echo, Runner&& runner) {
  const std::string out_dir = resolve_output_dir(out);
  const auto seeds = parse_seeds(seeds_spec);

  std::vector<RunResult> results(seeds.size());
  std::vector<char> done(seeds.size(), 0);
  std::vector<std::string> errors;
  std::mutex results_mutex;
  for_each_seed(
      seeds, jobs,
      [&](std::uint64_t seed) {
        Config cfg = base;
        cfg.seed = seed;
        RunResult res = runner(cfg);
        write_run_csv(out_dir + "/result_" + std::to_string(seed) + ".csv", res);
        std::lock_guard<std::mutex> lock(results_mutex);
        for (std::size_t i = 0; i < seeds.size(); ++i) {
          if (seeds[i] == seed) {
            results[i] = std::move(res);
            done[i] = 1;
          }
        }
      },
      &errors);

  std::vector<RunResult> ok;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (done[i]) ok.push_back(results[i]);
  }

  json summary;
  summary["command"] = name;
  summary["config"] = config_echo;
  summary["config"]["seeds"] = seeds_spec;
  summary["config"]["out"] = out_dir;
  summary["runs"] = json::array();
  for (const auto& r : ok) summary["runs"].push_back(run_result_json(r));
  summary["aggregate_metric"] = aggregate_metric(ok);
  if (!errors.empty()) summary["errors"] = errors;
  write_json(out_dir + "/summary.json", summary);
  return errors.empty() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// project-test
// ---------------------------------------------------------------------------

int cmd_project_test() {
  Rng rng(123);
  int failures = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const int k = 2 + static_cast<int>(rng.uniform_int(6));
    const double gamma = 0.02 + 0.4 * rng.uniform();
    const RestrictedSimplexSpec spec{k, gamma};
    Eigen::VectorXd w(k);
    for (int i = 0; i < k; ++i) w(i) = 4.0 * rng.uniform() - 2.0;

    const Eigen::VectorXd x = proj_restricted(w, spec);
    if (!in_restricted_simplex(x, spec, 1e-9)) failures++;
    const Eigen::VectorXd xx = proj_restricted(x, spec);
    if ((xx - x).cwiseAbs().maxCoeff() != 0.0) failures++;

    Eigen::MatrixXd A(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) A(i, j) = rng.normal();
    }
    Eigen::MatrixXd H = A * A.transpose() + 0.1 * Eigen::MatrixXd::Identity(k, k);
    std::vector<double> trace;
    const Eigen::VectorXd y = proj_h_norm(w, H, spec, 50, 1e-12, &trace);
    if (!in_restricted_simplex(y, spec, 1e-9)) failures++;
    for (std::size_t i = 1; i < trace.size(); ++i) {
      if (trace[i] > trace[i - 1] + 1e-9 * (1.0 + std::abs(trace[i - 1]))) failures++;
    }
  }
  std::cout << (failures == 0 ? "projection self-test: OK"
                              : "projection self-test: FAILED") << " (2000 random instances)\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online variance reduction with mixtures: simulations and benchmarks"};
  app.set_config("--config", "", "INI config file; command line flags take precedence");
  app.require_subcommand(1);

  // regret-sim ---------------------------------------------------------------
  RegretSimOpts ropt;
  auto* regret = app.add_subcommand("regret-sim", "online learner vs adversary simulation");
  regret->fallthrough()->configurable();
  regret->add_option("--adversary", ropt.adversary, "constant | piecewise | sgd")
      ->check(CLI::IsMember({"constant", "piecewise", "sgd"}));
  regret->add_option("--learner", ropt.learner, "vrm (partial) | ons (full) | ogd (full)")
      ->check(CLI::IsMember({"vrm", "ons", "ogd"}));
  regret->add_option("--instance", ropt.instance, "delta | random")
      ->check(CLI::IsMember({"delta", "random"}));
  regret->add_option("--components-csv", ropt.components_csv,
                     "component,atom,prob triplets (overrides --instance)");
  regret->add_option("--losses-sq", ropt.losses_sq, "per-atom squared losses");
  regret->add_option("--T", ropt.T_list, "horizon, or comma list for a slope fit");
  regret->add_option("--seed,--seeds", ropt.seeds, "seed list: 1,2,5 or 1..10");
  regret->add_option("--n", ropt.n, "atoms (delta/random instances)");
  regret->add_option("--k", ropt.k, "components incl. uniform (random instance)");
  regret->add_option("--switch-at", ropt.switch_at, "piecewise switch round (0: T/2)");
  regret->add_option("--gamma", ropt.gamma, "floor override (0: theorem schedule)");
  regret->add_option("--beta", ropt.beta, "Newton scale override");
  regret->add_option("--eps", ropt.eps, "H_0 scale override");
  regret->add_option("--L", ropt.L, "squared-loss bound override");
  regret->add_option("--instance-seed", ropt.instance_seed, "random-instance seed");
  regret->add_option("--out", ropt.out, "output dir (default $VRM_OUT_DIR or .)");
  regret->add_option("--jobs", ropt.jobs, "parallel seeds");

  // svm-blobs ----------------------------------------------------------------
  SvmBlobsConfig sopt;
  std::string s_seeds = "1", s_out, s_sampler = "vrm";
  int s_jobs = 1;
  auto* svm = app.add_subcommand("svm-blobs", "hinge-loss SGD on Gaussian blobs");
  svm->fallthrough()->configurable();
  svm->add_option("--n", sopt.n, "points");
  svm->add_option("--blobs", sopt.blob_count, "blob count");
  svm->add_option("--separation", sopt.separation, "distance between blob means");
  svm->add_option("--epochs", sopt.epochs, "SGD epochs");
  svm->add_option("--step", sopt.step_c, "step constant (eta = step/sqrt(t))");
  svm->add_option("--eps-mass", sopt.eps_mass, "off-blob component mass");
  svm->add_option("--sampler", s_sampler, "vrm | uniform | ogd-baseline")
      ->check(CLI::IsMember({"vrm", "uniform", "ogd-baseline"}));
  svm->add_option("--data-seed", sopt.data_seed, "dataset seed");
  svm->add_option("--gamma", sopt.gamma, "uniform-weight floor");
  svm->add_option("--beta", sopt.beta, "Newton scale (0: calibrated)");
  svm->add_option("--eps", sopt.eps, "H_0 scale (0: calibrated)");
  svm->add_option("--L", sopt.L, "squared-loss bound (0: calibrated)");
  svm->add_option("--checkpoint-every", sopt.checkpoint_every, "metric cadence");
  svm->add_option("--seeds", s_seeds, "seed list");
  svm->add_option("--out", s_out, "output dir");
  svm->add_option("--jobs", s_jobs, "parallel seeds");

  // linreg-dpp ---------------------------------------------------------------
  LinregDppConfig lopt;
  std::string l_seeds = "1", l_out, l_sampler = "vrm", l_trunc = "0.8,0.2", l_csv,
              l_lambdas = "1,10,100";
  int l_jobs = 1;
  auto* linreg = app.add_subcommand("linreg-dpp", "minibatch SGD regression with k-DPP mixtures");
  linreg->fallthrough()->configurable();
  linreg->add_option("--data-csv", l_csv, "dataset CSV: feature columns, target last");
  linreg->add_option("--lambdas", l_lambdas, "kernel regularizers, one k-DPP each");
  linreg->add_option("--n", lopt.n, "points");
  linreg->add_option("--d", lopt.d, "feature dimension");
  linreg->add_option("--scaled-points", lopt.scaled_points, "rows scaled up");
  linreg->add_option("--scale", lopt.scale, "row scale factor");
  linreg->add_option("--epochs", lopt.epochs, "SGD epochs");
  linreg->add_option("--batch", lopt.batch, "minibatch size");
  linreg->add_option("--step", lopt.step_c, "step constant");
  linreg->add_option("--trunc", l_trunc, "soft truncation a,b: r' = a r + b");
  linreg->add_option("--sampler", l_sampler, "vrm | uniform | ogd-baseline")
      ->check(CLI::IsMember({"vrm", "uniform", "ogd-baseline"}));
  linreg->add_option("--data-seed", lopt.data_seed, "dataset seed");
  linreg->add_option("--gamma", lopt.gamma, "uniform-weight floor");
  linreg->add_option("--beta", lopt.beta, "Newton scale (0: calibrated)");
  linreg->add_option("--eps", lopt.eps, "H_0 scale (0: calibrated)");
  linreg->add_option("--L", lopt.L, "squared-loss bound (0: calibrated)");
  linreg->add_option("--checkpoint-every", lopt.checkpoint_every, "metric cadence");
  linreg->add_option("--seeds", l_seeds, "seed list");
  linreg->add_option("--out", l_out, "output dir");
  linreg->add_option("--jobs", l_jobs, "parallel seeds");

  // kmeans ---------------------------------------------------------------
  KmeansConfig kopt;
  std::string k_seeds = "1", k_out, k_sampler = "vrm", k_csv, k_data = "skewed";
  int k_jobs = 1, k_n = 20000, k_d = 10, k_gen_clusters = 100;
  auto* kmeans = app.add_subcommand("kmeans", "minibatch k-means with distance components");
  kmeans->fallthrough()->configurable();
  kmeans->add_option("--data-csv", k_csv, "points CSV (rows = points)");
  kmeans->add_option("--data", k_data, "synthetic data family: skewed | uniform")
      ->check(CLI::IsMember({"skewed", "uniform"}));
  kmeans->add_option("--n", k_n, "synthetic points");
  kmeans->add_option("--d", k_d, "synthetic dimension");
  kmeans->add_option("--gen-clusters", k_gen_clusters, "synthetic cluster count");
  kmeans->add_option("--clusters", kopt.clusters, "k-means clusters");
  kmeans->add_option("--batch", kopt.batch, "minibatch size");
  kmeans->add_option("--iters", kopt.iters, "minibatch iterations");
  kmeans->add_option("--components", kopt.n_components, "distance components");
  kmeans->add_option("--sampler", k_sampler, "vrm | uniform | ogd-baseline")
      ->check(CLI::IsMember({"vrm", "uniform", "ogd-baseline"}));
  kmeans->add_option("--init-seed", kopt.init_seed, "shared k-means++ init seed");
  kmeans->add_option("--gamma", kopt.gamma, "uniform-weight floor");
  kmeans->add_option("--beta", kopt.beta, "Newton scale (0: calibrated)");
  kmeans->add_option("--eps", kopt.eps, "H_0 scale (0: calibrated)");
  kmeans->add_option("--L", kopt.L, "squared-loss bound (0: calibrated)");
  kmeans->add_flag("--tune", kopt.tune, "validation-tune gamma");
  kmeans->add_option("--checkpoint-every", kopt.checkpoint_every, "metric cadence");
  kmeans->add_option("--calib-rounds", kopt.calib_rounds, "calibration batches");
  kmeans->add_option("--seeds", k_seeds, "seed list");
  kmeans->add_option("--out", k_out, "output dir");
  kmeans->add_option("--jobs", k_jobs, "parallel seeds");

  auto* project = app.add_subcommand("project-test", "randomized projection self-check");
  (void)project;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << "\n";
    return 2;
  }

  try {
    if (regret->parsed()) return cmd_regret_sim(ropt);
    if (svm->parsed()) {
      sopt.sampler = sampler_from_string(s_sampler);
      json echo = {{"n", sopt.n},          {"blobs", sopt.blob_count},
                   {"separation", sopt.separation}, {"epochs", sopt.epochs},
                   {"step", sopt.step_c},  {"eps_mass", sopt.eps_mass},
                   {"sampler", s_sampler}, {"data_seed", sopt.data_seed},
                   {"gamma", sopt.gamma},  {"beta", sopt.beta},
                   {"eps", sopt.eps},      {"L", sopt.L},
                   {"jobs", s_jobs}};
      return run_experiment_command("svm-blobs", sopt, s_seeds, s_out, s_jobs, echo,
                                    [](const SvmBlobsConfig& c) { return run_svm_blobs(c); });
    }
    if (linreg->parsed()) {
      lopt.sampler = sampler_from_string(l_sampler);
      const auto trunc = parse_double_list(l_trunc);
      if (trunc.size() == 2) lopt.trunc = {trunc[0], trunc[1]};
      lopt.kernel_lambdas = parse_double_list(l_lambdas);
      // the dataset and kernels are shared across seeds
      RegressionData data;
      if (!l_csv.empty()) {
        const Eigen::MatrixXd table = load_points_csv(l_csv);
        if (table.cols() < 2) throw std::runtime_error("--data-csv needs features + target");
        data.X = table.leftCols(table.cols() - 1);
        data.y = table.col(table.cols() - 1);
        data.w0 = Eigen::VectorXd::Zero(data.X.cols());
        lopt.n = static_cast<int>(data.X.rows());
        lopt.d = static_cast<int>(data.X.cols());
      } else {
        Rng data_rng(lopt.data_seed);
        data = gen_regression(lopt.n, lopt.d, lopt.scaled_points, lopt.scale, data_rng);
      }
      std::vector<DppKernel> kernels;
      for (double lam : lopt.kernel_lambdas) {
        kernels.push_back(DppKernel::from_points(data.X, lam, lopt.batch));
      }
      const SetMixture mix(std::move(kernels), lopt.n, lopt.batch);
      json echo = {{"data", l_csv.empty() ? "synthetic" : l_csv},
                   {"n", lopt.n},          {"d", lopt.d},
                   {"scaled_points", lopt.scaled_points}, {"scale", lopt.scale},
                   {"epochs", lopt.epochs}, {"batch", lopt.batch},
                   {"step", lopt.step_c},  {"trunc", l_trunc},
                   {"sampler", l_sampler}, {"data_seed", lopt.data_seed},
                   {"gamma", lopt.gamma},  {"beta", lopt.beta},
                   {"eps", lopt.eps},      {"L", lopt.L},
                   {"kernel_lambdas", lopt.kernel_lambdas}, {"jobs", l_jobs},
                   {"unbiased_mode", lopt.trunc.first == 1.0 && lopt.trunc.second == 0.0}};
      return run_experiment_command(
          "linreg-dpp", lopt, l_seeds, l_out, l_jobs, echo,
          [&](const LinregDppConfig& c) { return run_linreg_dpp(c, data, mix); });
    }
    if (kmeans->parsed()) {
      kopt.sampler = sampler_from_string(k_sampler);
      Eigen::MatrixXd points;
      if (!k_csv.empty()) {
        points = load_points_csv(k_csv);
      } else {
        Rng data_rng(2024);
        points = k_data == "skewed"
                     ? gen_clustered_skewed(k_n, k_gen_clusters, k_d, data_rng)
                     : gen_clustered(k_n, k_gen_clusters, k_d, 30.0, 1.0, data_rng);
      }
      json echo = {{"data", k_csv.empty() ? k_data : k_csv},
                   {"n", static_cast<int>(points.rows())},
                   {"d", static_cast<int>(points.cols())},
                   {"clusters", kopt.clusters},
                   {"batch", kopt.batch},
                   {"iters", kopt.iters},
                   {"components", kopt.n_components},
                   {"sampler", k_sampler},
                   {"init_seed", kopt.init_seed},
                   {"gamma", kopt.gamma},
                   {"beta", kopt.beta},
                   {"eps", kopt.eps},
                   {"L", kopt.L},
                   {"tune", kopt.tune},
                   {"calib_rounds", kopt.calib_rounds},
                   {"jobs", k_jobs}};
      return run_experiment_command("kmeans", kopt, k_seeds, k_out, k_jobs, echo,
                                    [&](const KmeansConfig& c) { return run_kmeans(c, points); });
    }
    if (project->parsed()) return cmd_project_test();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
