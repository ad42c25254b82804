#include "subsimplex/simplex_core.hpp"

#include "subsimplex/errors.hpp"

#include <cmath>
#include <sstream>

namespace subsimplex {

int exit_code_for(ErrorClass c) noexcept {
  switch (c) {
    case ErrorClass::Parse:
      return 2;
    case ErrorClass::Validation:
      return 3;
    case ErrorClass::Numeric:
      return 4;
  }
  return 1;
}

namespace {

void require_nonnegative(const VectorXd& v, const char* what) {
  for (Index i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0.0)) {
      std::ostringstream msg;
      msg << what << ": entry " << i << " is " << v[i];
      throw InvalidComposition(msg.str());
    }
  }
}

}  // namespace

Composition Composition::from(VectorXd entries) {
  if (entries.size() == 0) throw InvalidComposition("composition has no parts");
  require_nonnegative(entries, "composition");
  const double sum = entries.sum();
  if (std::abs(sum - 1.0) > kCompositionTolerance) {
    std::ostringstream msg;
    msg << "composition sums to " << sum;
    throw InvalidComposition(msg.str());
  }
  return Composition(std::move(entries));
}

Composition Composition::renormalized(VectorXd entries) {
  if (entries.size() == 0) throw InvalidComposition("composition has no parts");
  require_nonnegative(entries, "composition");
  const double sum = entries.sum();
  if (std::abs(sum - 1.0) >= kRenormalizeTolerance) {
    std::ostringstream msg;
    msg << "composition sums to " << sum;
    throw InvalidComposition(msg.str());
  }
  entries /= sum;
  return Composition(std::move(entries));
}

Composition Composition::vertex(Index parts, Index j) {
  return Composition(VectorXd::Unit(parts, j));
}

SphericalPoint SphericalPoint::from(VectorXd entries) {
  if (entries.size() == 0) throw InvalidSphericalPoint("point has no coordinates");
  for (Index i = 0; i < entries.size(); ++i) {
    if (!(entries[i] >= 0.0)) throw InvalidSphericalPoint("negative coordinate in orthant point");
  }
  if (std::abs(entries.norm() - 1.0) > kCompositionTolerance) {
    throw InvalidSphericalPoint("orthant point is not unit norm");
  }
  return SphericalPoint(std::move(entries));
}

bool affinely_independent(const MatrixXd& vertices) {
  const Index r = vertices.rows() - 1;
  if (r <= 0) return vertices.rows() == 1;
  MatrixXd diffs(vertices.cols(), r);
  for (Index j = 0; j < r; ++j) {
    diffs.col(j) = (vertices.row(j) - vertices.row(r)).transpose();
  }
  Eigen::ColPivHouseholderQR<MatrixXd> qr(diffs);
  qr.setThreshold(kAffineRankThreshold);
  return qr.rank() == r;
}

SimplexVertexSet SimplexVertexSet::from_rows(MatrixXd vertices) {
  if (vertices.rows() == 0) throw AffinelyDependent("empty vertex set");
  for (Index j = 0; j < vertices.rows(); ++j) {
    Composition::from(vertices.row(j).transpose());
  }
  if (!affinely_independent(vertices)) throw AffinelyDependent("vertices are affinely dependent");
  return SimplexVertexSet(std::move(vertices));
}

SimplexVertexSet SimplexVertexSet::standard(Index parts) {
  return SimplexVertexSet(MatrixXd::Identity(parts, parts));
}

OrthantVertexSet OrthantVertexSet::from_rows(MatrixXd vertices) {
  if (vertices.rows() == 0) throw NotOrthonormal("empty vertex set");
  if ((vertices.array() < 0.0).any()) throw NotOrthonormal("vertex has a negative entry");
  const MatrixXd gram = vertices * vertices.transpose();
  const MatrixXd eye = MatrixXd::Identity(vertices.rows(), vertices.rows());
  if ((gram - eye).cwiseAbs().maxCoeff() > kCompositionTolerance) {
    throw NotOrthonormal("vertices are not orthonormal");
  }
  return OrthantVertexSet(std::move(vertices));
}

OrthantVertexSet OrthantVertexSet::standard(Index parts) {
  return OrthantVertexSet(MatrixXd::Identity(parts, parts));
}

VectorXd barycentric_coordinates(const Composition& x, const SimplexVertexSet& basis) {
  const MatrixXd& v = basis.vertices();
  if (v.cols() != x.size()) throw DimensionMismatch("composition and basis dimensions differ");
  const Index m = v.rows();
  const Index dim = v.cols();

  // Append the affine constraint sum(c) = 1 as an extra equation.
  MatrixXd a(dim + 1, m);
  a.topRows(dim) = v.transpose();
  a.row(dim).setOnes();
  VectorXd b(dim + 1);
  b.head(dim) = x.values();
  b[dim] = 1.0;

  VectorXd c = a.colPivHouseholderQr().solve(b);
  const double residual = (a * c - b).norm();
  if (!(residual <= kBarycentricTolerance)) {
    std::ostringstream msg;
    msg << "point lies off the subsimplex (residual " << residual << ")";
    throw NotInSimplex(msg.str());
  }
  if (c.minCoeff() < -kBarycentricTolerance) {
    std::ostringstream msg;
    msg << "point lies outside the subsimplex (coefficient " << c.minCoeff() << ")";
    throw NotInSimplex(msg.str());
  }
  c = c.cwiseMax(0.0);
  c /= c.sum();
  return c;
}

SphericalPoint simplex_to_orthant(const Composition& x) {
  return SphericalPoint::from(x.values() / x.values().norm());
}

Composition orthant_to_simplex(const SphericalPoint& x) {
  return Composition::from(x.values() / x.values().lpNorm<1>());
}

namespace detail {

double arc_length(const Eigen::Ref<const VectorXd>& x, const Eigen::Ref<const VectorXd>& y) {
  // Equal to acos(x.y) on the unit sphere, without the loss of precision
  // acos suffers near 0 and pi.
  return 2.0 * std::atan2((x - y).norm(), (x + y).norm());
}

}  // namespace detail

double geodesic_distance(const SphericalPoint& x, const SphericalPoint& y) {
  if (x.size() != y.size()) throw DimensionMismatch("points have different dimensions");
  return detail::arc_length(x.values(), y.values());
}

}  // namespace subsimplex
