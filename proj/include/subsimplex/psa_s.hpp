#pragma once

// Principal subsimplex analysis through simplices (PSA-S).
//
// Starting from the vertices e_1..e_{d+1} of the unit simplex, each backwards
// step merges two vertices of the current rank-r simplex into their convex
// combination, giving a rank r-1 subsimplex. Every sample is carried down
// along the edge direction of the merged pair, which pools the pair's two
// barycentric coordinates and leaves the rest untouched. The pair and ratio
// are chosen to minimise the sum of squared scores; the ratio has a closed
// form, the pair is found by enumeration.
//
// Sign convention: for a merge of (v_i, v_j) the score is positive when the
// sample carries more mass on v_j than the merged vertex predicts, and the
// loading vector is v_j - v_i. Swapping i and j negates both together, so
// modes of variation do not depend on the order.

#include "subsimplex/simplex_core.hpp"

#include <utility>
#include <vector>

namespace subsimplex::psa_s {

inline constexpr double kPairTieTolerance = 1e-12;

struct MergeRecord {
  Index rank_from = 0;
  std::pair<Index, Index> merged_pair{0, 1};
  double alpha = 0.5;
  double rss = 0.0;
  /// Set when no sample had mass on either vertex; alpha is then 0.5 by convention.
  bool degenerate = false;
};

/// Original parts aggregated by a vertex (sorted column indices).
using PartGroup = std::vector<Index>;

class Decomposition {
 public:
  Index dimension() const noexcept { return dimension_; }
  Index samples() const noexcept { return scores_.rows(); }

  /// Vertex set of the rank-r approximating subsimplex, r in [0, d].
  const SimplexVertexSet& vertex_set(Index rank) const { return vertex_sets_.at(rank); }
  const std::vector<PartGroup>& part_groups(Index rank) const { return groups_.at(rank); }
  /// Merge performed going from rank r to r-1, r in [1, d].
  const MergeRecord& merge(Index rank) const { return merges_.at(dimension_ - rank); }
  /// All merges in the order they were made (rank d first).
  const std::vector<MergeRecord>& merges() const noexcept { return merges_; }

  /// n x d; column k holds the scores for rank d-k.
  const MatrixXd& scores() const noexcept { return scores_; }
  Eigen::VectorXd scores_at(Index rank) const { return scores_.col(dimension_ - rank); }
  /// v_j - v_i in ambient coordinates for the rank-r merge.
  const VectorXd& loading(Index rank) const { return loadings_.at(rank - 1); }

  /// Barycentric coordinates of every sample in the rank-r basis (n x (r+1)).
  const MatrixXd& coefficients(Index rank) const { return coefficients_.at(rank); }
  /// Rank-r approximations in ambient coordinates (n x (d+1)).
  MatrixXd approximations(Index rank) const;
  /// Terminal rank-0 point.
  Composition backwards_mean() const;

 private:
  friend Decomposition fit(const MatrixXd& data);

  Index dimension_ = 0;
  std::vector<SimplexVertexSet> vertex_sets_;
  std::vector<std::vector<PartGroup>> groups_;
  std::vector<MergeRecord> merges_;
  MatrixXd scores_;
  std::vector<VectorXd> loadings_;
  std::vector<MatrixXd> coefficients_;
};

/// New basis whose first vertex is alpha*v_i + (1-alpha)*v_j, followed by the
/// remaining vertices in their original order.
SimplexVertexSet merge_vertices(const SimplexVertexSet& basis, Index i, Index j, double alpha);

/// Barycentric coordinates after the mass-preserving projection: the pooled
/// mass x_i + x_j first, other coordinates unchanged and in order.
VectorXd project_mass_preserving(const VectorXd& coeffs, Index i, Index j, double alpha);

/// RSS-minimising ratio for merging columns i and j, clipped to [0, 1].
/// Throws DegeneratePair when no row has mass on the pair.
double optimal_alpha(const MatrixXd& coeffs, Index i, Index j);

/// Signed distance between consecutive-rank approximations, measured in the
/// unit-scaled barycentric frame.
double score(const VectorXd& coeffs_row, Index i, Index j, double alpha);

/// Sum of squared scores over all rows for a given pair and ratio.
double residual_sum_of_squares(const MatrixXd& coeffs, Index i, Index j, double alpha);

/// Full backwards decomposition of n compositions (rows of `data`).
Decomposition fit(const MatrixXd& data);

/// v^(0) + (t / sqrt(2)) * l_r. Throws OutOfSimplex when t leaves the simplex.
Composition mode_of_variation(const Decomposition& decomp, Index rank, double t);

/// Interval of t for which mode_of_variation stays in the simplex.
std::pair<double, double> mode_range(const Decomposition& decomp, Index rank);

}  // namespace subsimplex::psa_s
