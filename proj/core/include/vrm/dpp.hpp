#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "vrm/mixture.hpp"
#include "vrm/rng.hpp"

namespace vrm {

// e_0..e_b of the given values via the stable Newton-identity-free recurrence
// e_m^{(i)} = e_m^{(i-1)} + lam_i e_{m-1}^{(i-1)}.
std::vector<double> elementary_symmetric(const Eigen::VectorXd& lams, int b);

// exact binomial coefficient as a double
double binomial(int n, int b);

// Fixed-size determinantal point process over n atoms: P(S) = det(L_S)/e_b.
// The eigendecomposition is computed once at construction.
class DppKernel {
 public:
  DppKernel(Eigen::MatrixXd L, int batch_size);

  // Regularized linear kernel X X' + lambda I.
  static DppKernel from_points(const Eigen::MatrixXd& X, double lambda_reg, int batch_size);

  int n() const { return static_cast<int>(L_.rows()); }
  int batch_size() const { return b_; }
  const Eigen::VectorXd& eigenvalues() const { return eigvals_; }

  // Draws S of size b with probability det(L_S)/e_b: selects an eigenvector
  // subset via elementary-symmetric ratios, then samples atoms sequentially
  // with orthogonalization. Returns sorted indices.
  std::vector<int> sample(Rng& rng) const;

  // det(L_S)/e_b via Cholesky of the principal submatrix; 0 if singular.
  double set_prob(const std::vector<int>& S) const;

 private:
  Eigen::MatrixXd L_;
  Eigen::VectorXd eigvals_;   // scaled by 1/lam_max, tiny ones zeroed
  Eigen::MatrixXd eigvecs_;
  double lam_max_ = 1.0;
  int b_ = 1;
  Eigen::MatrixXd esym_;      // (n+1) x (b+1) prefix elementary symmetric table
  double norm_eb_ = 1.0;      // e_b in the original scale
};

// Sample over sets of size b drawn from one of the mixture components.
struct SetSample {
  std::vector<int> atoms;               // sorted, |atoms| = b
  Eigen::VectorXd prob_per_component;   // p_j(S) for every component
  double mixture_prob = 0.0;            // w'p(S)
  double r = 1.0;                       // (1/C(n,b)) / (w'p(S))
  double r_trunc = 1.0;                 // a*r + b soft truncation
};

// k-1 DPP kernels plus the uniform distribution over size-b subsets as the
// mandatory last component. Importance weights are normalized against the
// uniform-minibatch distribution, mirroring r_i = (1/n)/(w'p(i)) for atoms.
class SetMixture {
 public:
  SetMixture(std::vector<DppKernel> kernels, int n, int batch_size);

  int k() const { return static_cast<int>(kernels_.size()) + 1; }
  int n() const { return n_; }
  int batch_size() const { return b_; }
  double uniform_set_prob() const { return uniform_prob_; }

  SetSample sample(const MixtureWeights& w, Rng& rng,
                   std::pair<double, double> trunc = {0.8, 0.2}) const;

  // p_j(S) for every component, uniform last.
  Eigen::VectorXd prob_column(const std::vector<int>& S) const;

 private:
  std::vector<DppKernel> kernels_;
  int n_;
  int b_;
  double uniform_prob_;
};

}  // namespace vrm
