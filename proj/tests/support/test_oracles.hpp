#pragma once

// Independent reference oracles used by the tests. These deliberately avoid
// the library's projection/evaluation code paths.

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace testsupport {

// Exact minimizer of ||x - w||^2 over the step-size grid of
//   { x >= 0, sum x = z, x_last >= floor_units * step }.
// Coordinates are integer multiples of `step`. Solved by greedy incremental
// allocation, which is exact for separable convex costs over a simplex of
// integer units: start from zero (plus the floor) and hand out the remaining
// units one at a time to the coordinate with the smallest marginal cost.
inline Eigen::VectorXd grid_projection_oracle(const Eigen::VectorXd& w, double z, double step,
                                              long long floor_units = 0) {
  const int d = static_cast<int>(w.size());
  const long long total = std::llround(z / step);
  std::vector<long long> m(d, 0);
  m[d - 1] = floor_units;
  long long remaining = total - floor_units;

  // marginal cost of granting one more unit to coordinate i at count c:
  // (step*(c+1) - w_i)^2 - (step*c - w_i)^2
  const auto marginal = [&](int i, long long c) {
    const double x = step * static_cast<double>(c);
    return step * (2.0 * (x - w(i)) + step);
  };

  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  for (int i = 0; i < d; ++i) heap.push({marginal(i, m[i]), i});
  while (remaining > 0) {
    auto [cost, i] = heap.top();
    heap.pop();
    m[i]++;
    remaining--;
    heap.push({marginal(i, m[i]), i});
  }

  Eigen::VectorXd x(d);
  for (int i = 0; i < d; ++i) x(i) = step * static_cast<double>(m[i]);
  return x;
}

// Full enumeration of the same grid; used to certify the greedy oracle on
// small instances. Returns the best grid point.
inline Eigen::VectorXd grid_projection_bruteforce(const Eigen::VectorXd& w, double z, double step,
                                                  long long floor_units = 0) {
  const int d = static_cast<int>(w.size());
  const long long total = std::llround(z / step);
  std::vector<long long> m(d, 0);
  Eigen::VectorXd best;
  double best_d2 = std::numeric_limits<double>::infinity();

  const std::function<void(int, long long)> rec = [&](int idx, long long rem) {
    if (idx == d - 1) {
      if (rem < floor_units) return;
      m[idx] = rem;
      double d2 = 0.0;
      for (int i = 0; i < d; ++i) {
        const double diff = step * static_cast<double>(m[i]) - w(i);
        d2 += diff * diff;
      }
      if (d2 < best_d2) {
        best_d2 = d2;
        best.resize(d);
        for (int i = 0; i < d; ++i) best(i) = step * static_cast<double>(m[i]);
      }
      return;
    }
    for (long long c = 0; c <= rem; ++c) {
      m[idx] = c;
      rec(idx + 1, rem - c);
    }
  };
  rec(0, total);
  return best;
}

// Central finite differences of a scalar function.
template <typename F>
Eigen::VectorXd finite_difference_gradient(F&& f, const Eigen::VectorXd& x, double h = 1e-6) {
  Eigen::VectorXd g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    g(i) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

// Regularized upper incomplete gamma Q(a, x); series/continued-fraction split.
inline double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) return 1.0;
  if (x == 0.0) return 1.0;
  const double gln = std::lgamma(a);
  if (x < a + 1.0) {
    // lower series
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
  }
  // continued fraction (modified Lentz)
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, dd = 1.0 / b, h = dd;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    dd = an * dd + b;
    if (std::abs(dd) < tiny) dd = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    dd = 1.0 / dd;
    const double del = dd * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - gln) * h;
}

// Upper-tail p-value of a chi-square statistic with the given dof.
inline double chi_square_pvalue(double stat, int dof) {
  return gamma_q(0.5 * dof, 0.5 * stat);
}

// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
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

}  // namespace testsupport
