#pragma once

// Random compositions and brute-force reference computations for tests.
// Nothing here calls the library code it is used to check.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace testsupport {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// n Dirichlet(concentration) rows with `parts` columns. With zero_prob > 0 each
// entry is first zeroed with that probability (a row keeps at least one part).
inline MatrixXd random_compositions(std::mt19937_64& rng, Index n, Index parts, double concentration = 1.0,
                                    double zero_prob = 0.0) {
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::bernoulli_distribution drop(zero_prob);
  std::uniform_int_distribution<Index> keep(0, parts - 1);
  MatrixXd out(n, parts);
  for (Index s = 0; s < n; ++s) {
    const Index kept = keep(rng);
    for (Index k = 0; k < parts; ++k) {
      double g = gamma(rng);
      while (g <= 0.0) g = gamma(rng);
      out(s, k) = (k != kept && zero_prob > 0.0 && drop(rng)) ? 0.0 : g;
    }
    out.row(s) /= out.row(s).sum();
  }
  return out;
}

// Arc length on the unit sphere via the chord: 2 asin(|x - y| / 2).
inline double chord_arc(const VectorXd& x, const VectorXd& y) {
  return 2.0 * std::asin(std::min(1.0, (x - y).norm() / 2.0));
}

// --- PSA-S reference -------------------------------------------------------

// Squared distance in barycentric coordinates between each row and its
// rank-reduced version, where the pair's pooled mass is split alpha : 1-alpha.
inline double psa_s_residual(const MatrixXd& coeffs, Index i, Index j, double alpha) {
  double total = 0.0;
  for (Index s = 0; s < coeffs.rows(); ++s) {
    const double pooled = coeffs(s, i) + coeffs(s, j);
    const double di = coeffs(s, i) - alpha * pooled;
    const double dj = coeffs(s, j) - (1.0 - alpha) * pooled;
    total += di * di + dj * dj;
  }
  return total;
}

struct GridChoice {
  Index i = 0;
  Index j = 1;
  double alpha = 0.0;
  double rss = std::numeric_limits<double>::infinity();
};

inline GridChoice psa_s_grid_argmin(const MatrixXd& coeffs, Index i, Index j, int points) {
  GridChoice best{i, j, 0.0, std::numeric_limits<double>::infinity()};
  for (int k = 0; k < points; ++k) {
    const double a = static_cast<double>(k) / (points - 1);
    const double r = psa_s_residual(coeffs, i, j, a);
    if (r < best.rss) best = {i, j, a, r};
  }
  return best;
}

// Exhaustive search over every pair, each at its grid-optimal ratio.
inline GridChoice psa_s_exhaustive(const MatrixXd& coeffs, int points) {
  GridChoice best;
  for (Index i = 0; i < coeffs.cols(); ++i) {
    for (Index j = i + 1; j < coeffs.cols(); ++j) {
      const GridChoice c = psa_s_grid_argmin(coeffs, i, j, points);
      if (c.rss < best.rss) best = c;
    }
  }
  return best;
}

// --- PSA-O reference -------------------------------------------------------

// Signed geodesic distance of each unit row to the great subsphere
// orthogonal to the removed direction is asin(x . u).
inline double psa_o_residual(const MatrixXd& rows, const MatrixXd& basis, Index i, Index j, double alpha) {
  VectorXd u = alpha * basis.row(j).transpose() - (1.0 - alpha) * basis.row(i).transpose();
  u /= u.norm();
  double total = 0.0;
  for (Index s = 0; s < rows.rows(); ++s) {
    const double a = std::asin(std::clamp(rows.row(s).dot(u), -1.0, 1.0));
    total += a * a;
  }
  return total;
}

inline GridChoice psa_o_exhaustive(const MatrixXd& rows, const MatrixXd& basis, int points) {
  GridChoice best;
  for (Index i = 0; i < basis.rows(); ++i) {
    for (Index j = i + 1; j < basis.rows(); ++j) {
      for (int k = 0; k < points; ++k) {
        const double a = static_cast<double>(k) / (points - 1);
        const double r = psa_o_residual(rows, basis, i, j, a);
        if (r < best.rss - 1e-12) best = {i, j, a, r};
      }
    }
  }
  return best;
}

// --- Score ranges ------------------------------------------------------------

// True when the values of group A and group B do not overlap.
inline bool separated(const VectorXd& scores, const std::vector<std::string>& labels,
                      const std::vector<std::string>& group_a, const std::vector<std::string>& group_b) {
  auto in = [](const std::string& l, const std::vector<std::string>& g) {
    for (const auto& x : g) {
      if (x == l) return true;
    }
    return false;
  };
  double a_lo = std::numeric_limits<double>::infinity(), a_hi = -a_lo;
  double b_lo = a_lo, b_hi = -a_lo;
  for (Index s = 0; s < scores.size(); ++s) {
    const std::string& l = labels[static_cast<std::size_t>(s)];
    if (in(l, group_a)) {
      a_lo = std::min(a_lo, scores[s]);
      a_hi = std::max(a_hi, scores[s]);
    } else if (in(l, group_b)) {
      b_lo = std::min(b_lo, scores[s]);
      b_hi = std::max(b_hi, scores[s]);
    }
  }
  return a_hi < b_lo || b_hi < a_lo;
}

}  // namespace testsupport
