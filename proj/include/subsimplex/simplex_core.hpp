#pragma once

// Geometry of unit simplices and unit nonnegative orthants.
//
// A composition with d+1 parts lives in the unit d-simplex. The same point,
// rescaled to unit Euclidean length, lives in the unit nonnegative orthant of
// the sphere. Both PSA variants work with vertex sets spanning nested
// subsets of these spaces; this header holds the shared value types and the
// maps between the two pictures.

#include <Eigen/Dense>

#include <vector>

namespace subsimplex {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

inline constexpr double kCompositionTolerance = 1e-9;
inline constexpr double kRenormalizeTolerance = 1e-6;
inline constexpr double kBarycentricTolerance = 1e-8;
inline constexpr double kAffineRankThreshold = 1e-10;

/// A point of the unit simplex: nonnegative entries summing to one.
class Composition {
 public:
  /// Validates `entries` as-is (sum within 1e-9 of one, no negative entry).
  static Composition from(VectorXd entries);
  /// Accepts raw input whose sum is within 1e-6 of one and rescales it to unit sum.
  static Composition renormalized(VectorXd entries);
  static Composition vertex(Index parts, Index j);

  const VectorXd& values() const noexcept { return values_; }
  Index size() const noexcept { return values_.size(); }
  double operator[](Index i) const { return values_[i]; }

 private:
  explicit Composition(VectorXd v) : values_(std::move(v)) {}
  VectorXd values_;
};

/// A point of the unit nonnegative orthant (unit Euclidean norm, entries >= 0).
class SphericalPoint {
 public:
  static SphericalPoint from(VectorXd entries);

  const VectorXd& values() const noexcept { return values_; }
  Index size() const noexcept { return values_.size(); }
  double operator[](Index i) const { return values_[i]; }

 private:
  explicit SphericalPoint(VectorXd v) : values_(std::move(v)) {}
  VectorXd values_;
};

/// r+1 affinely independent compositions (one per row) spanning a subsimplex.
class SimplexVertexSet {
 public:
  static SimplexVertexSet from_rows(MatrixXd vertices);
  /// The vertices e_1..e_{parts} of the unit simplex.
  static SimplexVertexSet standard(Index parts);

  const MatrixXd& vertices() const noexcept { return vertices_; }
  Index rank() const noexcept { return vertices_.rows() - 1; }
  Index ambient_dim() const noexcept { return vertices_.cols(); }
  VectorXd vertex(Index j) const { return vertices_.row(j).transpose(); }

 private:
  explicit SimplexVertexSet(MatrixXd v) : vertices_(std::move(v)) {}
  MatrixXd vertices_;
};

/// r+1 orthonormal nonnegative unit vectors (one per row) spanning a suborthant.
class OrthantVertexSet {
 public:
  static OrthantVertexSet from_rows(MatrixXd vertices);
  static OrthantVertexSet standard(Index parts);

  const MatrixXd& vertices() const noexcept { return vertices_; }
  Index rank() const noexcept { return vertices_.rows() - 1; }
  Index ambient_dim() const noexcept { return vertices_.cols(); }
  VectorXd vertex(Index j) const { return vertices_.row(j).transpose(); }

 private:
  explicit OrthantVertexSet(MatrixXd v) : vertices_(std::move(v)) {}
  MatrixXd vertices_;
};

/// True when the rows of `vertices` are affinely independent.
bool affinely_independent(const MatrixXd& vertices);

/// Coefficients of x as a convex combination of the basis vertices (the
/// scaling function of the subsimplex). Throws NotInSimplex when x is not
/// in the hull.
VectorXd barycentric_coordinates(const Composition& x, const SimplexVertexSet& basis);

SphericalPoint simplex_to_orthant(const Composition& x);
Composition orthant_to_simplex(const SphericalPoint& x);

/// Arc length between two points of the unit sphere, in [0, pi].
double geodesic_distance(const SphericalPoint& x, const SphericalPoint& y);

namespace detail {
// Unchecked versions on raw unit vectors, shared with the PSA-O hot loop.
double arc_length(const Eigen::Ref<const VectorXd>& x, const Eigen::Ref<const VectorXd>& y);
}  // namespace detail

}  // namespace subsimplex
