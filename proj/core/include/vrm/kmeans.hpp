#pragma once

#include <Eigen/Core>

#include "vrm/rng.hpp"

namespace vrm {

// k-means++ seeding: every center is a dataset point; after the first uniform
// pick, points are chosen with probability proportional to their squared
// distance to the nearest center chosen so far.
Eigen::MatrixXd kmeanspp_init(const Eigen::MatrixXd& points, int k, Rng& rng);

int nearest_center(const Eigen::RowVectorXd& x, const Eigen::MatrixXd& centers);

// Mean squared distance to the nearest center (the k-means loss).
double kmeans_loss(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers);

struct LloydResult {
  Eigen::MatrixXd centers;
  double loss = 0.0;
  int iters = 0;
};

// Full-batch Lloyd iterations until the relative potential change drops below
// tol; the reference solver for relative-error reporting.
LloydResult lloyd(const Eigen::MatrixXd& points, Eigen::MatrixXd centers, double tol = 1e-6,
                  int max_iters = 500);

}  // namespace vrm
