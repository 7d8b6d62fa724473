#include "vrm/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vrm {

MixtureWeights::MixtureWeights(Eigen::VectorXd weights, double gamma_floor)
    : w_(std::move(weights)), gamma_(gamma_floor) {
  if (gamma_ <= 0.0 || gamma_ > 1.0) {
    throw std::invalid_argument("MixtureWeights: gamma must lie in (0, 1]");
  }
  RestrictedSimplexSpec spec{static_cast<int>(w_.size()), gamma_};
  if (!in_restricted_simplex(w_, spec)) {
    throw std::invalid_argument("MixtureWeights: weights outside the restricted simplex");
  }
}

MixtureWeights MixtureWeights::uniform(int k, double gamma_floor) {
  if (k < 1) throw std::invalid_argument("MixtureWeights: k >= 1 required");
  Eigen::VectorXd w = Eigen::VectorXd::Constant(k, 1.0 / k);
  if (w(k - 1) < gamma_floor) {
    w = proj_restricted(w, RestrictedSimplexSpec{k, gamma_floor});
  }
  return MixtureWeights(std::move(w), gamma_floor);
}

ComponentSet::ComponentSet(Eigen::MatrixXd p) : p_(std::move(p)) {
  c_ = static_cast<double>(n()) * p_.maxCoeff();
  cdf_.resize(p_.rows(), p_.cols());
  for (Eigen::Index j = 0; j < p_.rows(); ++j) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < p_.cols(); ++i) {
      acc += p_(j, i);
      cdf_(j, i) = acc;
    }
    cdf_(j, p_.cols() - 1) = 1.0;  // pin against rounding drift
  }
}

namespace {

Eigen::MatrixXd validate_rows(const Eigen::MatrixXd& raw, int n) {
  Eigen::MatrixXd out(raw.rows(), n);
  for (Eigen::Index j = 0; j < raw.rows(); ++j) {
    if (raw.row(j).minCoeff() < 0.0) {
      throw std::invalid_argument("ComponentSet: negative entry in component row");
    }
    const double s = raw.row(j).sum();
    if (s <= 0.0) {
      throw std::invalid_argument("ComponentSet: component row sums to zero");
    }
    if (std::abs(s - 1.0) > 1e-6) {
      throw std::invalid_argument("ComponentSet: component row does not sum to one");
    }
    out.row(j) = raw.row(j) / s;
  }
  return out;
}

}  // namespace

ComponentSet ComponentSet::attach_uniform(const Eigen::MatrixXd& raw) {
  if (raw.rows() == 0) {
    throw std::invalid_argument("ComponentSet: pass n explicitly for a uniform-only set");
  }
  return attach_uniform(raw, static_cast<int>(raw.cols()));
}

ComponentSet ComponentSet::attach_uniform(const Eigen::MatrixXd& raw, int n) {
  if (n < 1) throw std::invalid_argument("ComponentSet: n >= 1 required");
  if (raw.rows() > 0 && raw.cols() != n) {
    throw std::invalid_argument("ComponentSet: raw component width != n");
  }
  Eigen::MatrixXd p(raw.rows() + 1, n);
  if (raw.rows() > 0) {
    p.topRows(raw.rows()) = validate_rows(raw, n);
  }
  p.row(p.rows() - 1).setConstant(1.0 / n);
  return ComponentSet(std::move(p));
}

ComponentSet ComponentSet::set_component_rows(const Eigen::MatrixXd& rows) const {
  if (rows.rows() != k() || rows.cols() != n()) {
    throw std::invalid_argument("set_component_rows: shape mismatch");
  }
  const Eigen::RowVectorXd uniform = Eigen::RowVectorXd::Constant(n(), 1.0 / n());
  if ((rows.row(rows.rows() - 1) - uniform).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("set_component_rows: last row must remain uniform");
  }
  Eigen::MatrixXd p = validate_rows(rows, n());
  p.row(p.rows() - 1) = uniform;
  return ComponentSet(std::move(p));
}

Eigen::VectorXd ComponentSet::column(int i) const {
  if (i < 0 || i >= n()) throw std::invalid_argument("ComponentSet: atom index out of range");
  return p_.col(i);
}

double ComponentSet::mixture_prob(const MixtureWeights& w, int i) const {
  if (i < 0 || i >= n()) throw std::invalid_argument("mixture_prob: atom index out of range");
  if (w.k() != k()) throw std::invalid_argument("mixture_prob: weight dimension mismatch");
  return w.vec().dot(p_.col(i));
}

std::pair<int, double> ComponentSet::sample_atom(const MixtureWeights& w, Rng& rng) const {
  if (w.k() != k()) throw std::invalid_argument("sample_atom: weight dimension mismatch");

  // component j ~ w, then atom ~ p_j: equivalent to drawing from w'p
  const double uj = rng.uniform();
  int j = 0;
  double acc = 0.0;
  for (; j < k() - 1; ++j) {
    acc += w.vec()(j);
    if (uj < acc) break;
  }

  const double ui = rng.uniform();
  const double* row_begin = cdf_.data() + static_cast<std::ptrdiff_t>(j) * n();
  const double* it = std::upper_bound(row_begin, row_begin + n(), ui);
  int i = static_cast<int>(it - row_begin);
  if (i >= n()) i = n() - 1;

  const double q = w.vec().dot(p_.col(i));
  return {i, (1.0 / n()) / q};
}

ComponentSet build_blob_components(const Eigen::VectorXi& blob_ids, int blob_count,
                                   double eps_mass) {
  const int n = static_cast<int>(blob_ids.size());
  if (n < 1 || blob_count < 1) {
    throw std::invalid_argument("build_blob_components: empty input");
  }
  if (eps_mass <= 0.0 || eps_mass >= 1.0) {
    throw std::invalid_argument("build_blob_components: eps_mass must lie in (0, 1)");
  }
  Eigen::VectorXi sizes = Eigen::VectorXi::Zero(blob_count);
  for (int i = 0; i < n; ++i) {
    if (blob_ids(i) < 0 || blob_ids(i) >= blob_count) {
      throw std::invalid_argument("build_blob_components: blob id out of range");
    }
    sizes(blob_ids(i))++;
  }
  if (sizes.minCoeff() == 0) {
    throw std::invalid_argument("build_blob_components: empty blob");
  }

  Eigen::MatrixXd raw(blob_count, n);
  for (int j = 0; j < blob_count; ++j) {
    const double in_mass = (1.0 - eps_mass) / sizes(j);
    const double out_mass = n == sizes(j) ? 0.0 : eps_mass / (n - sizes(j));
    for (int i = 0; i < n; ++i) {
      raw(j, i) = blob_ids(i) == j ? in_mass : out_mass;
    }
    raw.row(j) /= raw.row(j).sum();
  }
  return ComponentSet::attach_uniform(raw, n);
}

ComponentSet build_distance_components(const Eigen::MatrixXd& points,
                                       const Eigen::MatrixXd& centers) {
  const int n = static_cast<int>(points.rows());
  const int m = static_cast<int>(centers.rows());
  if (n < 1 || m < 1) throw std::invalid_argument("build_distance_components: empty input");
  if (points.cols() != centers.cols()) {
    throw std::invalid_argument("build_distance_components: dimension mismatch");
  }

  Eigen::MatrixXd raw(m, n);
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXd dist(n);
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d2 = (points.row(i) - centers.row(j)).squaredNorm();
      dist(i) = std::sqrt(d2);
      sum_sq += d2;
    }
    if (sum_sq <= 0.0) {
      raw.row(j).setConstant(1.0 / n);  // all points sit on the center
      continue;
    }
    const double denom = std::sqrt(sum_sq);
    Eigen::VectorXd row = 0.9 * dist / denom;
    row.array() += 0.1 / n;
    raw.row(j) = row / row.sum();
  }
  return ComponentSet::attach_uniform(raw, n);
}

}  // namespace vrm
