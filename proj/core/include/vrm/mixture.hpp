#pragma once

#include <Eigen/Core>
#include <utility>

#include "vrm/rng.hpp"
#include "vrm/simplex.hpp"

namespace vrm {

// Weight vector over the mixture components, floored at gamma on the uniform
// (last) component. Validated on construction.
struct MixtureWeights {
  MixtureWeights(Eigen::VectorXd weights, double gamma_floor);

  static MixtureWeights uniform(int k, double gamma_floor);

  const Eigen::VectorXd& vec() const { return w_; }
  double gamma() const { return gamma_; }
  int k() const { return static_cast<int>(w_.size()); }

 private:
  Eigen::VectorXd w_;
  double gamma_;
};

// k fixed sampling distributions over n atoms, stored as a row-stochastic
// k x n matrix whose last row is always the uniform distribution. Immutable;
// set_component_rows returns a new value. c = n * max entry.
class ComponentSet {
 public:
  // Appends the uniform row to (k-1) x n raw components. Rows are validated
  // (nonnegative, sum within 1e-6 of one) and renormalized exactly on ingest.
  // raw may have zero rows if n is passed explicitly.
  static ComponentSet attach_uniform(const Eigen::MatrixXd& raw);
  static ComponentSet attach_uniform(const Eigen::MatrixXd& raw, int n);

  // Replaces all rows (k x n, last row must be uniform); recomputes c and the
  // sampling tables. Returns a new value for use from the next round onward.
  ComponentSet set_component_rows(const Eigen::MatrixXd& rows) const;

  int n() const { return static_cast<int>(p_.cols()); }
  int k() const { return static_cast<int>(p_.rows()); }
  double c() const { return c_; }
  const Eigen::MatrixXd& probs() const { return p_; }

  // p(i): the k-vector of component masses on atom i.
  Eigen::VectorXd column(int i) const;

  // w' p(i), the mixture probability of atom i. >= gamma/n for valid w.
  double mixture_prob(const MixtureWeights& w, int i) const;

  // Draws an atom i ~ w'p and returns (i, r) with importance weight
  // r = (1/n) / (w'p(i)).
  std::pair<int, double> sample_atom(const MixtureWeights& w, Rng& rng) const;

 private:
  explicit ComponentSet(Eigen::MatrixXd p);

  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  Eigen::MatrixXd p_;  // k x n, rows sum to 1, last row uniform
  RowMajor cdf_;       // per-row cumulative sums for inverse-CDF draws
  double c_ = 1.0;
};

// One component per blob: mass (1 - eps_mass) spread uniformly over the
// blob's members and eps_mass spread uniformly over everything else.
// blob_ids holds each atom's blob index in [0, blob_count).
ComponentSet build_blob_components(const Eigen::VectorXi& blob_ids, int blob_count,
                                   double eps_mass);

// One component per center: mass proportional to the distance to the center
// plus uniform smoothing, renormalized to sum exactly to one.
ComponentSet build_distance_components(const Eigen::MatrixXd& points,
                                       const Eigen::MatrixXd& centers);

}  // namespace vrm
