#include "subsimplex/psa_o.hpp"

#include "subsimplex/dataset.hpp"
#include "subsimplex/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace subsimplex::psa_o {

namespace {

void check_pair(Index size, Index i, Index j) {
  if (i == j || i < 0 || j < 0 || i >= size || j >= size) {
    std::ostringstream msg;
    msg << "invalid merge pair (" << i << ", " << j << ") for " << size << " vertices";
    throw InvalidIndex(msg.str());
  }
}

struct MergeDirections {
  VectorXd new_vertex;
  VectorXd removed;
};

MergeDirections merge_directions(const Eigen::Ref<const VectorXd>& vi, const Eigen::Ref<const VectorXd>& vj,
                                 double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidIndex("merge ratio outside [0, 1]");
  VectorXd w = alpha * vi + (1.0 - alpha) * vj;
  VectorXd u = alpha * vj - (1.0 - alpha) * vi;
  const double wn = w.norm();
  const double un = u.norm();
  if (wn == 0.0 || un == 0.0) throw DegenerateRatio("merged vertices are not independent");
  return {w / wn, u / un};
}

struct Step {
  VectorXd projection;
  double score = 0.0;
  bool pole = false;
};

// Moves x onto the great subsphere orthogonal to u. vi, vj and w are only
// consulted when x sits on the pole, where the geodesic projection is undefined.
Step step_toward(const Eigen::Ref<const VectorXd>& x, const VectorXd& u, const Eigen::Ref<const VectorXd>& vi,
                 const Eigen::Ref<const VectorXd>& vj, const VectorXd& w) {
  Step out;
  const double t = x.dot(u);
  VectorXd tangential = x - t * u;
  const double tn = tangential.norm();
  if (tn >= kPoleTolerance) {
    out.projection = tangential / tn;
  } else {
    // Replace the pair's coordinates by the merged direction scaled by the
    // pooled norm and renormalise the remainder.
    const double ci = x.dot(vi);
    const double cj = x.dot(vj);
    VectorXd y = x - ci * vi - cj * vj + std::hypot(ci, cj) * w;
    const double yn = y.norm();
    out.projection = yn > 0.0 ? VectorXd(y / yn) : w;
    out.pole = true;
  }
  if ((out.projection.array() < 0.0).any()) {
    out.projection = out.projection.cwiseMax(0.0);
    out.projection.normalize();
  }
  const double arc = detail::arc_length(x, out.projection);
  out.score = t < 0.0 ? -arc : arc;
  return out;
}

double rss_for(const MatrixXd& rows, const MatrixXd& basis, Index i, Index j, double alpha) {
  const auto dirs = merge_directions(basis.row(i).transpose(), basis.row(j).transpose(), alpha);
  double rss = 0.0;
  for (Index s = 0; s < rows.rows(); ++s) {
    const Step st = step_toward(rows.row(s).transpose(), dirs.removed, basis.row(i).transpose(),
                                basis.row(j).transpose(), dirs.new_vertex);
    rss += st.score * st.score;
  }
  return rss;
}

// Golden-section search for the minimum of f on [lo, hi].
template <typename F>
double golden_section(F f, double lo, double hi, int iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < iterations; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

void validate_spherical_rows(const MatrixXd& rows) {
  if (rows.rows() == 0) throw EmptyDataset("no samples");
  if (rows.cols() < 2) throw DimensionMismatch("need at least two parts");
  for (Index s = 0; s < rows.rows(); ++s) {
    if ((rows.row(s).array() < 0.0).any() || !rows.row(s).allFinite() ||
        std::abs(rows.row(s).norm() - 1.0) > kCompositionTolerance) {
      std::ostringstream msg;
      msg << "row " << s << " is not a point of the unit nonnegative orthant";
      throw InvalidSphericalPoint(msg.str());
    }
  }
}

MatrixXd l1_normalized_rows(const MatrixXd& rows) {
  MatrixXd out = rows;
  for (Index s = 0; s < out.rows(); ++s) out.row(s) /= out.row(s).lpNorm<1>();
  return out;
}

}  // namespace

MergedVertices merge_orthant_vertices(const OrthantVertexSet& basis, Index i, Index j, double alpha) {
  const MatrixXd& v = basis.vertices();
  if (v.rows() < 2) throw RankZero("cannot merge a rank-0 vertex set");
  check_pair(v.rows(), i, j);
  auto dirs = merge_directions(v.row(i).transpose(), v.row(j).transpose(), alpha);

  MatrixXd reduced(v.rows() - 1, v.cols());
  reduced.row(0) = dirs.new_vertex.transpose();
  Index out = 1;
  for (Index k = 0; k < v.rows(); ++k) {
    if (k != i && k != j) reduced.row(out++) = v.row(k);
  }
  return {std::move(dirs.new_vertex), std::move(dirs.removed), OrthantVertexSet::from_rows(std::move(reduced))};
}

SuborthantProjection project_to_suborthant(const SphericalPoint& x, const VectorXd& removed_direction) {
  if (removed_direction.size() != x.size()) throw DimensionMismatch("direction and point dimensions differ");
  const double t = x.values().dot(removed_direction);
  VectorXd tangential = x.values() - t * removed_direction;
  const double tn = tangential.norm();
  if (tn < kPoleTolerance) throw PoleSingularity("point is parallel to the removed direction");
  SuborthantProjection out;
  out.projection = tangential / tn;
  const double arc = detail::arc_length(x.values(), out.projection);
  out.signed_score = t < 0.0 ? -arc : arc;
  return out;
}

std::vector<double> alpha_grid(int points) {
  if (points < 2) throw ConfigError("alpha grid needs at least two points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) grid[static_cast<std::size_t>(k)] = static_cast<double>(k) / (points - 1);
  return grid;
}

double residual_sum_of_squares(const MatrixXd& spherical_rows, const MatrixXd& basis, Index i, Index j,
                               double alpha) {
  check_pair(basis.rows(), i, j);
  return rss_for(spherical_rows, basis, i, j, alpha);
}

SimplexVertexSet Decomposition::simplex_vertex_set(Index rank) const {
  return SimplexVertexSet::from_rows(simplex_vertices_.at(rank));
}

Composition Decomposition::backwards_mean() const {
  return Composition::from(simplex_vertices_.at(0).row(0).transpose());
}

Decomposition fit(const MatrixXd& data, const Options& options) {
  validate_compositions(data);
  MatrixXd spherical = data;
  for (Index s = 0; s < spherical.rows(); ++s) spherical.row(s) /= spherical.row(s).norm();
  return fit_orthant(spherical, options);
}

Decomposition fit_orthant(const MatrixXd& spherical_rows, const Options& options) {
  validate_spherical_rows(spherical_rows);
  const std::vector<double> grid = alpha_grid(options.grid_points);
  const Index n = spherical_rows.rows();
  const Index d = spherical_rows.cols() - 1;

  Decomposition out;
  out.dimension_ = d;
  out.orthant_sets_.assign(d + 1, OrthantVertexSet::standard(d + 1));
  out.spherical_.resize(d + 1);
  out.scores_.resize(n, d);
  out.spherical_[d] = spherical_rows;

  for (Index r = d; r >= 1; --r) {
    const MatrixXd& basis = out.orthant_sets_[r].vertices();
    const MatrixXd& rows = out.spherical_[r];
    const Index m = r + 1;

    // Reduction order: smallest RSS; ties go to the lexicographically first
    // pair, then the smallest alpha.
    Index best_i = 0, best_j = 1;
    double best_alpha = 0.0;
    double best_rss = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < m; ++i) {
      for (Index j = i + 1; j < m; ++j) {
        for (double alpha : grid) {
          const double rss = rss_for(rows, basis, i, j, alpha);
          if (rss < best_rss - kPairTieTolerance) {
            best_rss = rss;
            best_alpha = alpha;
            best_i = i;
            best_j = j;
          }
        }
      }
    }

    if (options.refine) {
      const double h = 1.0 / (options.grid_points - 1);
      const double lo = std::max(0.0, best_alpha - h);
      const double hi = std::min(1.0, best_alpha + h);
      const double refined =
          golden_section([&](double a) { return rss_for(rows, basis, best_i, best_j, a); }, lo, hi, 60);
      const double refined_rss = rss_for(rows, basis, best_i, best_j, refined);
      if (refined_rss < best_rss) {
        best_rss = refined_rss;
        best_alpha = refined;
      }
    }

    MergedVertices merged = merge_orthant_vertices(out.orthant_sets_[r], best_i, best_j, best_alpha);

    MatrixXd next(n, d + 1);
    for (Index s = 0; s < n; ++s) {
      const Step st = step_toward(rows.row(s).transpose(), merged.removed_direction, basis.row(best_i).transpose(),
                                  basis.row(best_j).transpose(), merged.new_vertex);
      next.row(s) = st.projection.transpose();
      out.scores_(s, d - r) = st.score;
      if (st.pole) ++out.diagnostics_.pole_samples;
    }

    OrthantMergeRecord rec;
    rec.rank_from = r;
    rec.merged_pair = {best_i, best_j};
    rec.alpha = best_alpha;
    rec.new_vertex = merged.new_vertex;
    rec.removed_direction = merged.removed_direction;
    rec.rss = best_rss;
    out.merges_.push_back(std::move(rec));

    out.spherical_[r - 1] = std::move(next);
    out.orthant_sets_[r - 1] = std::move(merged.reduced);
  }

  out.simplex_vertices_.resize(d + 1);
  out.simplex_.resize(d + 1);
  for (Index r = 0; r <= d; ++r) {
    out.simplex_vertices_[r] = l1_normalized_rows(out.orthant_sets_[r].vertices());
    out.simplex_[r] = l1_normalized_rows(out.spherical_[r]);
  }
  out.loadings_.resize(d);
  for (Index r = 1; r <= d; ++r) {
    const auto& [i, j] = out.merge(r).merged_pair;
    out.loadings_[r - 1] = (out.simplex_vertices_[r].row(j) - out.simplex_vertices_[r].row(i)).transpose();
  }
  return out;
}

Composition mode_of_variation(const Decomposition& decomp, Index rank, double t) {
  if (rank < 1 || rank > decomp.dimension()) throw InvalidIndex("mode rank out of range");
  const VectorXd mean = decomp.orthant_vertex_set(0).vertex(0);
  const VectorXd& u = decomp.merge(rank).removed_direction;
  VectorXd point = std::cos(t) * mean + std::sin(t) * u;
  if (point.minCoeff() < -kCompositionTolerance) {
    std::ostringstream msg;
    msg << "t = " << t << " leaves the orthant along mode " << rank;
    throw OutOfOrthant(msg.str());
  }
  point = point.cwiseMax(0.0);
  return Composition::from(point / point.sum());
}

}  // namespace subsimplex::psa_o
