#include "subsimplex/errors.hpp"
#include "subsimplex/simplex_core.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace subsimplex;

namespace {

VectorXd vec(std::initializer_list<double> v) {
  VectorXd out(static_cast<Index>(v.size()));
  Index k = 0;
  for (double x : v) out[k++] = x;
  return out;
}

}  // namespace

TEST(Composition, AcceptsValidAndRejectsInvalid) {
  EXPECT_NO_THROW(Composition::from(vec({0.2, 0.3, 0.5})));
  EXPECT_THROW(Composition::from(vec({0.2, 0.3, 0.6})), InvalidComposition);
  EXPECT_THROW(Composition::from(vec({-0.1, 0.6, 0.5})), InvalidComposition);
  EXPECT_THROW(Composition::from(VectorXd()), InvalidComposition);
}

TEST(Composition, RenormalizedWithinTolerance) {
  const Composition c = Composition::renormalized(vec({0.2, 0.3, 0.4999995}));
  EXPECT_NEAR(c.values().sum(), 1.0, 1e-15);
  EXPECT_THROW(Composition::renormalized(vec({0.2, 0.3, 0.4})), InvalidComposition);
}

TEST(SphericalPoint, UnitNormRequired) {
  EXPECT_NO_THROW(SphericalPoint::from(vec({0.6, 0.8, 0.0})));
  EXPECT_THROW(SphericalPoint::from(vec({0.6, 0.7, 0.0})), InvalidSphericalPoint);
  EXPECT_THROW(SphericalPoint::from(vec({-0.6, 0.8, 0.0})), InvalidSphericalPoint);
}

TEST(SimplexVertexSet, RejectsAffinelyDependentRows) {
  MatrixXd v(3, 3);
  v << 1, 0, 0, 0, 1, 0, 0.5, 0.5, 0;
  EXPECT_THROW(SimplexVertexSet::from_rows(v), AffinelyDependent);
  EXPECT_EQ(SimplexVertexSet::standard(4).rank(), 3);
}

TEST(OrthantVertexSet, RejectsNonOrthonormalRows) {
  MatrixXd v(2, 3);
  v << 1, 0, 0, std::sqrt(0.5), std::sqrt(0.5), 0;
  EXPECT_THROW(OrthantVertexSet::from_rows(v), NotOrthonormal);
  EXPECT_EQ(OrthantVertexSet::standard(3).rank(), 2);
}

TEST(Barycentric, VertexMapsToIndicator) {
  const VectorXd c = barycentric_coordinates(Composition::vertex(3, 1), SimplexVertexSet::standard(3));
  EXPECT_TRUE(c.isApprox(vec({0, 1, 0})));
}

TEST(Barycentric, IdentityBasis) {
  const VectorXd c = barycentric_coordinates(Composition::from(vec({0.5, 0.5, 0})), SimplexVertexSet::standard(3));
  EXPECT_NEAR((c - vec({0.5, 0.5, 0})).norm(), 0.0, 1e-12);
}

TEST(Barycentric, ReducedBasis) {
  MatrixXd v(2, 3);
  v << 0.5, 0.5, 0, 0, 0, 1;
  const VectorXd c = barycentric_coordinates(Composition::from(vec({0.25, 0.25, 0.5})), SimplexVertexSet::from_rows(v));
  EXPECT_NEAR(c[0], 0.5, 1e-12);
  EXPECT_NEAR(c[1], 0.5, 1e-12);
}

TEST(Barycentric, OutsideHullThrows) {
  MatrixXd v(2, 3);
  v << 0.5, 0.5, 0, 0, 0, 1;
  EXPECT_THROW(barycentric_coordinates(Composition::from(vec({0.6, 0.2, 0.2})), SimplexVertexSet::from_rows(v)),
               NotInSimplex);
}

TEST(Barycentric, RecombinationReconstructs) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const MatrixXd verts = testsupport::random_compositions(rng, 3, 5);
    const MatrixXd w = testsupport::random_compositions(rng, 1, 3);
    const VectorXd x = (w * verts).transpose();
    const VectorXd c = barycentric_coordinates(Composition::renormalized(x), SimplexVertexSet::from_rows(verts));
    EXPECT_NEAR((verts.transpose() * c - x).norm(), 0.0, 1e-9);
    EXPECT_GE(c.minCoeff(), 0.0);
    EXPECT_NEAR(c.sum(), 1.0, 1e-12);
  }
}

TEST(OrthantMaps, Examples) {
  EXPECT_TRUE(simplex_to_orthant(Composition::vertex(3, 0)).values().isApprox(vec({1, 0, 0})));
  const double h = 1.0 / std::sqrt(2.0);
  const double t = 1.0 / std::sqrt(3.0);
  EXPECT_NEAR((simplex_to_orthant(Composition::from(vec({0.5, 0.5, 0}))).values() - vec({h, h, 0})).norm(), 0.0,
              1e-15);
  EXPECT_NEAR(
      (simplex_to_orthant(Composition::from(vec({1.0 / 3, 1.0 / 3, 1.0 / 3}))).values() - vec({t, t, t})).norm(),
      0.0, 1e-15);
  EXPECT_NEAR((orthant_to_simplex(SphericalPoint::from(vec({h, h, 0}))).values() - vec({0.5, 0.5, 0})).norm(), 0.0,
              1e-15);
  EXPECT_NEAR(
      (orthant_to_simplex(SphericalPoint::from(vec({t, t, t}))).values() - vec({1.0 / 3, 1.0 / 3, 1.0 / 3})).norm(),
      0.0, 1e-15);
}

TEST(OrthantMaps, RoundTrip) {
  std::mt19937_64 rng(11);
  const MatrixXd data = testsupport::random_compositions(rng, 500, 6, 0.5, 0.3);
  for (Index s = 0; s < data.rows(); ++s) {
    const Composition x = Composition::from(data.row(s).transpose());
    EXPECT_NEAR((orthant_to_simplex(simplex_to_orthant(x)).values() - x.values()).lpNorm<Eigen::Infinity>(), 0.0,
                1e-9);
  }
}

TEST(Geodesic, Examples) {
  const SphericalPoint e1 = SphericalPoint::from(vec({1, 0, 0}));
  const SphericalPoint e2 = SphericalPoint::from(vec({0, 1, 0}));
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_EQ(geodesic_distance(e1, e1), 0.0);
  EXPECT_NEAR(geodesic_distance(e1, e2), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(geodesic_distance(e1, SphericalPoint::from(vec({h, h, 0}))), std::numbers::pi / 4, 1e-15);
}

TEST(Geodesic, SymmetricAndTriangle) {
  std::mt19937_64 rng(13);
  const MatrixXd data = testsupport::random_compositions(rng, 300, 4, 0.7);
  for (Index s = 0; s + 2 < data.rows(); s += 3) {
    const SphericalPoint a = simplex_to_orthant(Composition::from(data.row(s).transpose()));
    const SphericalPoint b = simplex_to_orthant(Composition::from(data.row(s + 1).transpose()));
    const SphericalPoint c = simplex_to_orthant(Composition::from(data.row(s + 2).transpose()));
    EXPECT_EQ(geodesic_distance(a, b), geodesic_distance(b, a));
    EXPECT_LE(geodesic_distance(a, c), geodesic_distance(a, b) + geodesic_distance(b, c) + 1e-9);
    EXPECT_NEAR(geodesic_distance(a, b), testsupport::chord_arc(a.values(), b.values()), 1e-14);
  }
}

TEST(ErrorClasses, ExitCodes) {
  EXPECT_EQ(exit_code_for(ErrorClass::Parse), 2);
  EXPECT_EQ(exit_code_for(ErrorClass::Validation), 3);
  EXPECT_EQ(exit_code_for(ErrorClass::Numeric), 4);
  EXPECT_EQ(InvalidComposition("x").error_class(), ErrorClass::Validation);
  EXPECT_EQ(ParseError("x").error_class(), ErrorClass::Parse);
  EXPECT_EQ(DegeneratePair("x").error_class(), ErrorClass::Numeric);
}
