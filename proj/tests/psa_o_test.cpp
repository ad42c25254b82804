#include "subsimplex/errors.hpp"
#include "subsimplex/psa_o.hpp"
#include "subsimplex/synthdata.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace subsimplex;
namespace po = subsimplex::psa_o;

namespace {

VectorXd vec(std::initializer_list<double> v) {
  VectorXd out(static_cast<Index>(v.size()));
  Index k = 0;
  for (double x : v) out[k++] = x;
  return out;
}

const double kH = 1.0 / std::sqrt(2.0);

}  // namespace

TEST(MergeOrthant, HalfwayExample) {
  const auto m = po::merge_orthant_vertices(OrthantVertexSet::standard(3), 0, 1, 0.5);
  EXPECT_NEAR((m.new_vertex - vec({kH, kH, 0})).norm(), 0.0, 1e-15);
  EXPECT_NEAR((m.removed_direction - vec({-kH, kH, 0})).norm(), 0.0, 1e-15);
  EXPECT_EQ(m.reduced.rank(), 1);
}

TEST(MergeOrthant, AlphaOne) {
  const auto m = po::merge_orthant_vertices(OrthantVertexSet::standard(3), 0, 1, 1.0);
  EXPECT_TRUE(m.new_vertex.isApprox(vec({1, 0, 0})));
  EXPECT_TRUE(m.removed_direction.isApprox(vec({0, 1, 0})));
}

TEST(MergeOrthant, ReducedBasisOrthonormal) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    OrthantVertexSet basis = OrthantVertexSet::standard(6);
    while (basis.rank() > 0) {
      const Index m = basis.rank() + 1;
      std::uniform_int_distribution<Index> pick(0, m - 1);
      Index i = pick(rng), j = pick(rng);
      while (j == i) j = pick(rng);
      if (i > j) std::swap(i, j);
      auto merged = po::merge_orthant_vertices(basis, i, j, unit(rng));
      EXPECT_NEAR(merged.new_vertex.dot(merged.removed_direction), 0.0, 1e-12);
      EXPECT_NEAR(merged.new_vertex.norm(), 1.0, 1e-12);
      EXPECT_NEAR(merged.removed_direction.norm(), 1.0, 1e-12);
      const MatrixXd& v = merged.reduced.vertices();
      EXPECT_NEAR((v * v.transpose() - MatrixXd::Identity(v.rows(), v.rows())).lpNorm<Eigen::Infinity>(), 0.0,
                  1e-12);
      EXPECT_GE(v.minCoeff(), 0.0);
      basis = std::move(merged.reduced);
    }
  }
}

TEST(ProjectSuborthant, Examples) {
  const auto p = po::project_to_suborthant(SphericalPoint::from(vec({1, 0, 0})), vec({-kH, kH, 0}));
  EXPECT_NEAR((p.projection - vec({kH, kH, 0})).norm(), 0.0, 1e-15);
  EXPECT_NEAR(p.signed_score, -std::numbers::pi / 4, 1e-15);

  const auto q = po::project_to_suborthant(SphericalPoint::from(vec({0, 0, 1})), vec({-kH, kH, 0}));
  EXPECT_TRUE(q.projection.isApprox(vec({0, 0, 1})));
  EXPECT_EQ(q.signed_score, 0.0);

  EXPECT_THROW(po::project_to_suborthant(SphericalPoint::from(vec({0, 1, 0})), vec({0, 1, 0})), PoleSingularity);
}

TEST(ProjectSuborthant, UnitOrthogonalIdempotent) {
  std::mt19937_64 rng(29);
  const MatrixXd data = testsupport::random_compositions(rng, 300, 4, 0.7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (Index s = 0; s < data.rows(); ++s) {
    const SphericalPoint x = simplex_to_orthant(Composition::from(data.row(s).transpose()));
    const auto merged = po::merge_orthant_vertices(OrthantVertexSet::standard(4), 1, 3, unit(rng));
    const auto p = po::project_to_suborthant(x, merged.removed_direction);
    EXPECT_NEAR(p.projection.norm(), 1.0, 1e-12);
    EXPECT_NEAR(p.projection.dot(merged.removed_direction), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(p.signed_score), testsupport::chord_arc(x.values(), p.projection), 1e-12);
    EXPECT_NEAR(p.signed_score, std::asin(x.values().dot(merged.removed_direction)), 1e-12);
    const auto again = po::project_to_suborthant(SphericalPoint::from(p.projection), merged.removed_direction);
    EXPECT_NEAR((again.projection - p.projection).norm(), 0.0, 1e-12);
    EXPECT_NEAR(again.signed_score, 0.0, 1e-12);
  }
}

TEST(ProjectSuborthant, ClosestPointInOrthant) {
  std::mt19937_64 rng(31);
  const MatrixXd data = testsupport::random_compositions(rng, 100, 3, 0.7);
  const MatrixXd competitors = testsupport::random_compositions(rng, 100, 2, 0.7);
  const auto merged = po::merge_orthant_vertices(OrthantVertexSet::standard(3), 0, 1, 0.3);
  const MatrixXd& basis = merged.reduced.vertices();
  for (Index s = 0; s < data.rows(); ++s) {
    const SphericalPoint x = simplex_to_orthant(Composition::from(data.row(s).transpose()));
    const auto p = po::project_to_suborthant(x, merged.removed_direction);
    for (Index c = 0; c < competitors.rows(); ++c) {
      VectorXd y = basis.transpose() * competitors.row(c).transpose();
      y.normalize();
      EXPECT_LE(testsupport::chord_arc(x.values(), p.projection), testsupport::chord_arc(x.values(), y) + 1e-12);
    }
  }
}

TEST(AlphaGrid, InclusiveUniform) {
  const auto g = po::alpha_grid(101);
  ASSERT_EQ(g.size(), 101u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 1.0);
  EXPECT_NEAR(g[37], 0.37, 1e-15);
  EXPECT_THROW(po::alpha_grid(1), ConfigError);
}

TEST(Fit, SinglePoint) {
  MatrixXd one(1, 3);
  one << 0.2, 0.5, 0.3;
  // The coarse grid only gets within one step of the point; refinement closes the gap.
  EXPECT_LT(po::fit(one).scores().cwiseAbs().maxCoeff(), 0.01);
  po::Options refined;
  refined.refine = true;
  const po::Decomposition d = po::fit(one, refined);
  EXPECT_NEAR((d.backwards_mean().values() - one.row(0).transpose()).norm(), 0.0, 1e-10);
  EXPECT_NEAR(d.scores().cwiseAbs().maxCoeff(), 0.0, 1e-10);
}

TEST(Fit, ChosenCandidateBeatsEveryOther) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixXd data = testsupport::random_compositions(rng, 12, 4, 0.8);
    const po::Decomposition d = po::fit(data, {21, false});
    for (Index r = 3; r >= 1; --r) {
      const MatrixXd& basis = d.orthant_vertex_set(r).vertices();
      const double chosen = d.merge(r).rss;
      for (Index i = 0; i <= r; ++i) {
        for (Index j = i + 1; j <= r; ++j) {
          for (double a : po::alpha_grid(21)) {
            EXPECT_LE(chosen, po::residual_sum_of_squares(d.spherical_approximations(r), basis, i, j, a) + 1e-12);
          }
        }
      }
      EXPECT_NEAR(chosen,
                  testsupport::psa_o_residual(d.spherical_approximations(r), basis, d.merge(r).merged_pair.first,
                                              d.merge(r).merged_pair.second, d.merge(r).alpha),
                  1e-10);
    }
  }
}

TEST(Fit, InvariantsWithZeros) {
  std::mt19937_64 rng(41);
  const MatrixXd data = testsupport::random_compositions(rng, 20, 5, 0.5, 0.45);
  const po::Decomposition d = po::fit(data);
  for (Index r = 0; r <= 4; ++r) {
    const MatrixXd& v = d.orthant_vertex_set(r).vertices();
    EXPECT_NEAR((v * v.transpose() - MatrixXd::Identity(r + 1, r + 1)).lpNorm<Eigen::Infinity>(), 0.0, 1e-12);
    const MatrixXd& sph = d.spherical_approximations(r);
    EXPECT_GE(sph.minCoeff(), 0.0);
    EXPECT_NEAR((sph.rowwise().norm().array() - 1.0).abs().maxCoeff(), 0.0, 1e-12);
    const MatrixXd& simp = d.simplex_approximations(r);
    EXPECT_GE(simp.minCoeff(), 0.0);
    EXPECT_NEAR((simp.rowwise().sum().array() - 1.0).abs().maxCoeff(), 0.0, 1e-12);
  }
  for (Index r = 1; r <= 4; ++r) {
    const VectorXd s = d.scores_at(r);
    for (Index k = 0; k < data.rows(); ++k) {
      const VectorXd from = d.spherical_approximations(r).row(k).transpose();
      const VectorXd to = d.spherical_approximations(r - 1).row(k).transpose();
      EXPECT_NEAR(std::abs(s[k]), testsupport::chord_arc(from, to), 1e-12);
    }
    EXPECT_NEAR(d.loading(r).sum(), 0.0, 1e-12);
  }
}

TEST(Fit, ScaleInvariant) {
  std::mt19937_64 rng(43);
  const MatrixXd data = testsupport::random_compositions(rng, 15, 4);
  MatrixXd scaled = data;
  for (Index s = 0; s < scaled.rows(); ++s) scaled.row(s) *= 0.5 + s;
  MatrixXd sph_a = data, sph_b = scaled;
  for (Index s = 0; s < data.rows(); ++s) {
    sph_a.row(s).normalize();
    sph_b.row(s).normalize();
  }
  const po::Decomposition a = po::fit_orthant(sph_a);
  const po::Decomposition b = po::fit_orthant(sph_b);
  EXPECT_NEAR((a.scores() - b.scores()).lpNorm<Eigen::Infinity>(), 0.0, 1e-12);
  for (Index r = 1; r <= 3; ++r) EXPECT_EQ(a.merge(r).merged_pair, b.merge(r).merged_pair);
}

TEST(Fit, PoleSamplesHandled) {
  // Samples at e2 sit on the removed pole when e1 and e2 merge at alpha = 1.
  MatrixXd data(4, 3);
  data << 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1;
  const po::Decomposition d = po::fit(data, {11, false});
  for (Index r = 0; r <= 2; ++r) EXPECT_GE(d.simplex_approximations(r).minCoeff(), 0.0);
  EXPECT_NEAR(std::abs(po::residual_sum_of_squares(d.spherical_approximations(2), OrthantVertexSet::standard(3).vertices(),
                                                   0, 1, 1.0) -
                       (std::numbers::pi / 2) * (std::numbers::pi / 2)),
              0.0, 1e-12);
}

TEST(Fit, RefineNeverWorse) {
  std::mt19937_64 rng(47);
  const MatrixXd data = testsupport::random_compositions(rng, 20, 3);
  const po::Decomposition coarse = po::fit(data, {11, false});
  const po::Decomposition fine = po::fit(data, {11, true});
  EXPECT_LE(fine.merge(2).rss, coarse.merge(2).rss);
}

TEST(ModeOfVariation, MeanAndUnitSpeed) {
  const po::Decomposition d = po::fit(synth::generate_example1(42).values);
  EXPECT_NEAR((po::mode_of_variation(d, 1, 0.0).values() - d.backwards_mean().values()).norm(), 0.0, 1e-12);
  const VectorXd m0 = simplex_to_orthant(po::mode_of_variation(d, 1, 0.0)).values();
  for (double t : {-0.05, -0.01, 0.01, 0.05}) {
    const VectorXd mt = simplex_to_orthant(po::mode_of_variation(d, 1, t)).values();
    EXPECT_NEAR(testsupport::chord_arc(m0, mt), std::abs(t), 1e-9);
  }
  EXPECT_THROW(po::mode_of_variation(d, 1, 3.0), OutOfOrthant);
}

TEST(Fit, ExampleOneResemblesSimplexVersion) {
  const po::Decomposition d = po::fit(synth::generate_example1(42).values);
  const VectorXd l = d.loading(1);
  EXPECT_LT(l[0] * l[1], 0.0);
  EXPECT_GT(l[0] * l[2], 0.0);
}
