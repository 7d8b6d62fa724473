#include "vrm/kmeans.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace vrm {

Eigen::MatrixXd kmeanspp_init(const Eigen::MatrixXd& points, int k, Rng& rng) {
  const int n = static_cast<int>(points.rows());
  if (k < 1 || k > n) throw std::invalid_argument("kmeanspp_init: need 1 <= k <= n");

  Eigen::MatrixXd centers(k, points.cols());
  Eigen::VectorXd min_d2 = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());

  int first = static_cast<int>(rng.uniform_int(n));
  centers.row(0) = points.row(first);
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d2 = (points.row(i) - centers.row(c - 1)).squaredNorm();
      if (d2 < min_d2(i)) min_d2(i) = d2;
      total += min_d2(i);
    }
    int pick = n - 1;
    if (total > 0.0) {
      const double u = rng.uniform() * total;
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        acc += min_d2(i);
        if (u < acc) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<int>(rng.uniform_int(n));  // all points already covered
    }
    centers.row(c) = points.row(pick);
  }
  return centers;
}

int nearest_center(const Eigen::RowVectorXd& x, const Eigen::MatrixXd& centers) {
  int best = 0;
  double best_d2 = (x - centers.row(0)).squaredNorm();
  for (int c = 1; c < centers.rows(); ++c) {
    const double d2 = (x - centers.row(c)).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = c;
    }
  }
  return best;
}

double kmeans_loss(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers) {
  double total = 0.0;
  for (int i = 0; i < points.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int c = 0; c < centers.rows(); ++c) {
      const double d2 = (points.row(i) - centers.row(c)).squaredNorm();
      if (d2 < best) best = d2;
    }
    total += best;
  }
  return total / points.rows();
}

LloydResult lloyd(const Eigen::MatrixXd& points, Eigen::MatrixXd centers, double tol,
                  int max_iters) {
  const int n = static_cast<int>(points.rows());
  const int k = static_cast<int>(centers.rows());
  LloydResult out;
  double prev = std::numeric_limits<double>::infinity();
  std::vector<int> assign(n);

  for (int it = 1; it <= max_iters; ++it) {
    double loss = 0.0;
    for (int i = 0; i < n; ++i) {
      assign[i] = nearest_center(points.row(i), centers);
      loss += (points.row(i) - centers.row(assign[i])).squaredNorm();
    }
    loss /= n;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(k);
    for (int i = 0; i < n; ++i) {
      sums.row(assign[i]) += points.row(i);
      counts(assign[i])++;
    }
    for (int c = 0; c < k; ++c) {
      if (counts(c) > 0) centers.row(c) = sums.row(c) / counts(c);
    }

    out.iters = it;
    if (prev < std::numeric_limits<double>::infinity() &&
        std::abs(prev - loss) <= tol * std::max(prev, 1e-300)) {
      prev = loss;
      break;
    }
    prev = loss;
  }
  out.centers = std::move(centers);
  out.loss = kmeans_loss(points, out.centers);
  return out;
}

}  // namespace vrm
