#pragma once

// Principal subsimplex analysis through orthants (PSA-O).
//
// Samples are moved to the unit nonnegative orthant by x / |x|_2. Merging two
// orthonormal vertices v_i, v_j at ratio alpha gives the unit vector along
// alpha*v_i + (1-alpha)*v_j; the direction removed from span{v_i, v_j} is the
// unit vector along alpha*v_j - (1-alpha)*v_i. Each sample is carried to the
// nearest point of the smaller orthant along the great circle through the
// removed direction, and its score is the signed arc length travelled
// (positive toward v_j). The pair and ratio minimising the sum of squared
// scores are found by a grid search over alpha for every pair. Vertex sets
// and approximations are mapped back to the simplex by x / |x|_1 at the end.

#include "subsimplex/simplex_core.hpp"

#include <utility>
#include <vector>

namespace subsimplex::psa_o {

inline constexpr double kPairTieTolerance = 1e-12;
/// Tangential norm below which a sample counts as sitting on the removed pole.
inline constexpr double kPoleTolerance = 1e-12;

struct Options {
  int grid_points = 101;
  /// One golden-section pass around the best grid point of the winning pair.
  bool refine = false;
};

struct OrthantMergeRecord {
  Index rank_from = 0;
  std::pair<Index, Index> merged_pair{0, 1};
  double alpha = 0.5;
  VectorXd new_vertex;
  VectorXd removed_direction;
  double rss = 0.0;
};

struct MergedVertices {
  VectorXd new_vertex;
  VectorXd removed_direction;
  OrthantVertexSet reduced;
};

struct SuborthantProjection {
  VectorXd projection;
  double signed_score = 0.0;
};

struct Diagnostics {
  /// Samples that sat on the removed pole during a chosen merge.
  int pole_samples = 0;
};

class Decomposition {
 public:
  Index dimension() const noexcept { return dimension_; }
  Index samples() const noexcept { return scores_.rows(); }

  const OrthantVertexSet& orthant_vertex_set(Index rank) const { return orthant_sets_.at(rank); }
  /// Simplex images (rows divided by their 1-norm) of the orthant vertices.
  const MatrixXd& simplex_vertices(Index rank) const { return simplex_vertices_.at(rank); }
  SimplexVertexSet simplex_vertex_set(Index rank) const;

  const OrthantMergeRecord& merge(Index rank) const { return merges_.at(dimension_ - rank); }
  const std::vector<OrthantMergeRecord>& merges() const noexcept { return merges_; }

  /// n x d; column k holds the signed geodesic scores for rank d-k.
  const MatrixXd& scores() const noexcept { return scores_; }
  VectorXd scores_at(Index rank) const { return scores_.col(dimension_ - rank); }
  /// Difference of the simplex images of the merged vertices, v_j - v_i.
  const VectorXd& loading(Index rank) const { return loadings_.at(rank - 1); }

  const MatrixXd& spherical_approximations(Index rank) const { return spherical_.at(rank); }
  const MatrixXd& simplex_approximations(Index rank) const { return simplex_.at(rank); }

  Composition backwards_mean() const;
  const Diagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  friend Decomposition fit_orthant(const MatrixXd& spherical_rows, const Options& options);

  Index dimension_ = 0;
  std::vector<OrthantVertexSet> orthant_sets_;
  std::vector<MatrixXd> simplex_vertices_;
  std::vector<OrthantMergeRecord> merges_;
  MatrixXd scores_;
  std::vector<VectorXd> loadings_;
  std::vector<MatrixXd> spherical_;
  std::vector<MatrixXd> simplex_;
  Diagnostics diagnostics_;
};

MergedVertices merge_orthant_vertices(const OrthantVertexSet& basis, Index i, Index j, double alpha);

/// Geodesic projection of x onto the great subsphere orthogonal to
/// `removed_direction`. Throws PoleSingularity when x is parallel to it.
SuborthantProjection project_to_suborthant(const SphericalPoint& x, const VectorXd& removed_direction);

/// Uniform grid over [0, 1] including both endpoints.
std::vector<double> alpha_grid(int points);

/// Sum of squared signed scores for merging rows i, j of `basis` at `alpha`;
/// samples on the removed pole contribute (pi/2)^2.
double residual_sum_of_squares(const MatrixXd& spherical_rows, const MatrixXd& basis, Index i, Index j,
                               double alpha);

/// Decomposition of compositions given as rows of `data`.
Decomposition fit(const MatrixXd& data, const Options& options = {});

/// Decomposition of points already on the unit orthant (rows of unit norm).
Decomposition fit_orthant(const MatrixXd& spherical_rows, const Options& options = {});

/// Point at signed arc length t from the backwards mean along the great
/// circle through the rank-r removed direction, mapped to the simplex.
Composition mode_of_variation(const Decomposition& decomp, Index rank, double t);

}  // namespace subsimplex::psa_o
