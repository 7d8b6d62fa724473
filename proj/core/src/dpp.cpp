#include "vrm/dpp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace vrm {

std::vector<double> elementary_symmetric(const Eigen::VectorXd& lams, int b) {
  const int n = static_cast<int>(lams.size());
  if (b < 0 || b > n) throw std::invalid_argument("elementary_symmetric: need 0 <= b <= n");
  std::vector<double> e(b + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int m = std::min(b, i + 1); m >= 1; --m) {
      e[m] += lams(i) * e[m - 1];
    }
  }
  return e;
}

double binomial(int n, int b) {
  if (b < 0 || b > n) return 0.0;
  b = std::min(b, n - b);
  long double c = 1.0L;
  for (int i = 1; i <= b; ++i) {
    c = c * (n - b + i) / i;
  }
  return static_cast<double>(c);
}

DppKernel::DppKernel(Eigen::MatrixXd L, int batch_size) : L_(std::move(L)), b_(batch_size) {
  const int n = static_cast<int>(L_.rows());
  if (L_.cols() != n || n < 1) throw std::invalid_argument("DppKernel: L must be square");
  if (b_ < 1 || b_ > n) throw std::invalid_argument("DppKernel: need 1 <= b <= n");
  if ((L_ - L_.transpose()).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + L_.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("DppKernel: L must be symmetric");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(L_);
  if (eig.info() != Eigen::Success) throw std::runtime_error("DppKernel: eigensolver failed");
  eigvals_ = eig.eigenvalues();
  eigvecs_ = eig.eigenvectors();

  lam_max_ = eigvals_.maxCoeff();
  if (!(lam_max_ > 0.0)) throw std::invalid_argument("DppKernel: L has no positive eigenvalue");
  eigvals_ /= lam_max_;
  int positive = 0;
  for (int i = 0; i < n; ++i) {
    if (eigvals_(i) < 1e-10) {
      eigvals_(i) = 0.0;
    } else {
      positive++;
    }
  }
  if (positive < b_) {
    throw std::invalid_argument("DppKernel: fewer than b positive eigenvalues (degenerate)");
  }

  // prefix table esym_(i, m) = e_m(lam_1..lam_i) in the 1/lam_max scale
  esym_.setZero(n + 1, b_ + 1);
  esym_.col(0).setOnes();
  for (int i = 1; i <= n; ++i) {
    for (int m = 1; m <= b_; ++m) {
      esym_(i, m) = esym_(i - 1, m) + eigvals_(i - 1) * esym_(i - 1, m - 1);
    }
  }
  norm_eb_ = esym_(n, b_) * std::pow(lam_max_, b_);
  if (!(norm_eb_ > 0.0) || !std::isfinite(norm_eb_)) {
    throw std::runtime_error("DppKernel: normalizer overflow or underflow");
  }
}

DppKernel DppKernel::from_points(const Eigen::MatrixXd& X, double lambda_reg, int batch_size) {
  Eigen::MatrixXd L = X * X.transpose();
  L.diagonal().array() += lambda_reg;
  return DppKernel(std::move(L), batch_size);
}

std::vector<int> DppKernel::sample(Rng& rng) const {
  const int n = this->n();

  // phase 1: pick b eigenvector indices with P ~ products of eigenvalues
  std::vector<int> chosen;
  chosen.reserve(b_);
  int remaining = b_;
  for (int i = n; i >= 1 && remaining > 0; --i) {
    double p;
    if (i == remaining) {
      p = 1.0;  // must take everything left
    } else {
      const double denom = esym_(i, remaining);
      p = denom > 0.0 ? eigvals_(i - 1) * esym_(i - 1, remaining - 1) / denom : 0.0;
    }
    if (rng.uniform() < p) {
      chosen.push_back(i - 1);
      remaining--;
    }
  }

  // phase 2: sequential sampling with orthogonalization of the basis
  Eigen::MatrixXd V(n, b_);
  for (int j = 0; j < b_; ++j) V.col(j) = eigvecs_.col(chosen[j]);

  std::vector<int> S;
  S.reserve(b_);
  int cols = b_;
  while (cols > 0) {
    // P(i) proportional to the squared norm of row i
    Eigen::VectorXd row_mass = V.leftCols(cols).rowwise().squaredNorm();
    const double total = row_mass.sum();
    double u = rng.uniform() * total;
    int atom = n - 1;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += row_mass(i);
      if (u < acc) {
        atom = i;
        break;
      }
    }
    S.push_back(atom);

    if (cols == 1) break;
    // eliminate the coordinate: pivot on the column with the largest row entry
    int pivot = 0;
    for (int j = 1; j < cols; ++j) {
      if (std::abs(V(atom, j)) > std::abs(V(atom, pivot))) pivot = j;
    }
    if (V(atom, pivot) != 0.0) {
      for (int j = 0; j < cols; ++j) {
        if (j == pivot) continue;
        V.col(j) -= (V(atom, j) / V(atom, pivot)) * V.col(pivot);
      }
    }
    V.col(pivot).swap(V.col(cols - 1));
    cols--;
    V.row(atom).head(cols).setZero();  // clear rounding residue; the atom is spent
    // re-orthonormalize (modified Gram-Schmidt) to keep row masses valid
    for (int j = 0; j < cols; ++j) {
      for (int l = 0; l < j; ++l) {
        V.col(j) -= V.col(l).dot(V.col(j)) * V.col(l);
      }
      const double nrm = V.col(j).norm();
      if (nrm > 0.0) V.col(j) /= nrm;
    }
  }

  std::sort(S.begin(), S.end());
  return S;
}

double DppKernel::set_prob(const std::vector<int>& S) const {
  if (static_cast<int>(S.size()) != b_) {
    throw std::invalid_argument("set_prob: |S| must equal the batch size");
  }
  Eigen::MatrixXd sub(b_, b_);
  for (int a = 0; a < b_; ++a) {
    for (int b = 0; b < b_; ++b) {
      sub(a, b) = L_(S[a], S[b]);
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(sub);
  if (llt.info() != Eigen::Success) return 0.0;
  double det = 1.0;
  for (int i = 0; i < b_; ++i) {
    const double d = llt.matrixLLT()(i, i);
    det *= d * d;
  }
  return det / norm_eb_;
}

SetMixture::SetMixture(std::vector<DppKernel> kernels, int n, int batch_size)
    : kernels_(std::move(kernels)), n_(n), b_(batch_size) {
  if (n_ < 1 || b_ < 1 || b_ > n_) throw std::invalid_argument("SetMixture: need 1 <= b <= n");
  for (const auto& ker : kernels_) {
    if (ker.n() != n_ || ker.batch_size() != b_) {
      throw std::invalid_argument("SetMixture: kernel (n, b) mismatch");
    }
  }
  uniform_prob_ = 1.0 / binomial(n_, b_);
}

Eigen::VectorXd SetMixture::prob_column(const std::vector<int>& S) const {
  Eigen::VectorXd p(k());
  for (std::size_t j = 0; j < kernels_.size(); ++j) {
    p(static_cast<int>(j)) = kernels_[j].set_prob(S);
  }
  p(k() - 1) = uniform_prob_;
  return p;
}

SetSample SetMixture::sample(const MixtureWeights& w, Rng& rng,
                             std::pair<double, double> trunc) const {
  if (w.k() != k()) throw std::invalid_argument("SetMixture: weight dimension mismatch");

  const double uj = rng.uniform();
  int j = 0;
  double acc = 0.0;
  for (; j < k() - 1; ++j) {
    acc += w.vec()(j);
    if (uj < acc) break;
  }

  SetSample out;
  if (j < static_cast<int>(kernels_.size())) {
    out.atoms = kernels_[j].sample(rng);
  } else {
    // uniform size-b subset via Floyd's algorithm
    std::set<int> s;
    for (int m = n_ - b_; m < n_; ++m) {
      const int t = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(m) + 1));
      if (!s.insert(t).second) s.insert(m);
    }
    out.atoms.assign(s.begin(), s.end());
  }

  out.prob_per_component = prob_column(out.atoms);
  out.mixture_prob = w.vec().dot(out.prob_per_component);
  out.r = uniform_prob_ / out.mixture_prob;
  out.r_trunc = trunc.first * out.r + trunc.second;
  return out;
}

}  // namespace vrm
