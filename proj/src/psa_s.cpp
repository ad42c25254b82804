#include "subsimplex/psa_s.hpp"

#include "subsimplex/dataset.hpp"
#include "subsimplex/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace subsimplex::psa_s {

namespace {

void check_pair(Index size, Index i, Index j) {
  if (i == j || i < 0 || j < 0 || i >= size || j >= size) {
    std::ostringstream msg;
    msg << "invalid merge pair (" << i << ", " << j << ") for " << size << " vertices";
    throw InvalidIndex(msg.str());
  }
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidIndex("merge ratio outside [0, 1]");
}

// Keeps column/entry order: `first` goes to slot 0, then everything except i and j.
template <typename Fill>
void reorder_after_merge(Index size, Index i, Index j, Fill fill) {
  Index out = 1;
  for (Index k = 0; k < size; ++k) {
    if (k == i || k == j) continue;
    fill(out++, k);
  }
}

struct PairFit {
  double alpha = 0.5;
  double rss = 0.0;
  bool degenerate = false;
};

PairFit fit_pair(const MatrixXd& coeffs, Index i, Index j) {
  PairFit out;
  try {
    out.alpha = optimal_alpha(coeffs, i, j);
    out.rss = residual_sum_of_squares(coeffs, i, j, out.alpha);
  } catch (const DegeneratePair&) {
    out.alpha = 0.5;
    out.rss = 0.0;
    out.degenerate = true;
  }
  return out;
}

}  // namespace

SimplexVertexSet merge_vertices(const SimplexVertexSet& basis, Index i, Index j, double alpha) {
  const MatrixXd& v = basis.vertices();
  if (v.rows() < 2) throw RankZero("cannot merge a rank-0 vertex set");
  check_pair(v.rows(), i, j);
  check_alpha(alpha);

  MatrixXd merged(v.rows() - 1, v.cols());
  merged.row(0) = alpha * v.row(i) + (1.0 - alpha) * v.row(j);
  reorder_after_merge(v.rows(), i, j, [&](Index out, Index k) { merged.row(out) = v.row(k); });
  return SimplexVertexSet::from_rows(std::move(merged));
}

VectorXd project_mass_preserving(const VectorXd& coeffs, Index i, Index j, double alpha) {
  check_pair(coeffs.size(), i, j);
  check_alpha(alpha);
  // alpha only decides where the pooled mass sits in ambient space; in the
  // merged basis the new vertex carries all of it.
  VectorXd out(coeffs.size() - 1);
  out[0] = coeffs[i] + coeffs[j];
  reorder_after_merge(coeffs.size(), i, j, [&](Index o, Index k) { out[o] = coeffs[k]; });
  return out;
}

double optimal_alpha(const MatrixXd& coeffs, Index i, Index j) {
  check_pair(coeffs.cols(), i, j);
  const auto xi = coeffs.col(i).array();
  const auto pooled = (coeffs.col(i) + coeffs.col(j)).array();
  const double denom = pooled.square().sum();
  if (denom == 0.0) throw DegeneratePair("no sample has mass on the merged pair");
  const double numer = (xi * pooled).sum();
  return std::clamp(numer / denom, 0.0, 1.0);
}

double score(const VectorXd& coeffs_row, Index i, Index j, double alpha) {
  check_pair(coeffs_row.size(), i, j);
  return std::numbers::sqrt2 * (-(1.0 - alpha) * coeffs_row[i] + alpha * coeffs_row[j]);
}

double residual_sum_of_squares(const MatrixXd& coeffs, Index i, Index j, double alpha) {
  check_pair(coeffs.cols(), i, j);
  const auto s = -(1.0 - alpha) * coeffs.col(i).array() + alpha * coeffs.col(j).array();
  return 2.0 * s.square().sum();
}

MatrixXd Decomposition::approximations(Index rank) const {
  return coefficients_.at(rank) * vertex_sets_.at(rank).vertices();
}

Composition Decomposition::backwards_mean() const {
  return Composition::from(vertex_sets_.at(0).vertex(0));
}

Decomposition fit(const MatrixXd& data) {
  validate_compositions(data);
  const Index n = data.rows();
  const Index d = data.cols() - 1;
  if (d < 1) throw DimensionMismatch("need at least two parts");

  Decomposition out;
  out.dimension_ = d;
  out.vertex_sets_.assign(d + 1, SimplexVertexSet::standard(d + 1));
  out.groups_.resize(d + 1);
  out.coefficients_.resize(d + 1);
  out.loadings_.resize(d);
  out.scores_.resize(n, d);

  out.coefficients_[d] = data;
  for (Index k = 0; k <= d; ++k) out.groups_[d].push_back({k});

  for (Index r = d; r >= 1; --r) {
    const MatrixXd& coeffs = out.coefficients_[r];
    const Index m = r + 1;

    // Lexicographic scan; a later pair wins only when strictly better by more
    // than the tie tolerance, so ties resolve to the smallest (i, j).
    Index best_i = 0, best_j = 1;
    PairFit best;
    double best_rss = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < m; ++i) {
      for (Index j = i + 1; j < m; ++j) {
        const PairFit f = fit_pair(coeffs, i, j);
        if (f.rss < best_rss - kPairTieTolerance) {
          best_rss = f.rss;
          best = f;
          best_i = i;
          best_j = j;
        }
      }
    }

    MergeRecord rec;
    rec.rank_from = r;
    rec.merged_pair = {best_i, best_j};
    rec.alpha = best.alpha;
    rec.rss = best.rss;
    rec.degenerate = best.degenerate;
    out.merges_.push_back(rec);

    const SimplexVertexSet& basis = out.vertex_sets_[r];
    out.loadings_[r - 1] = basis.vertex(best_j) - basis.vertex(best_i);
    for (Index s = 0; s < n; ++s) {
      out.scores_(s, d - r) = score(coeffs.row(s).transpose(), best_i, best_j, best.alpha);
    }

    MatrixXd next(n, r);
    next.col(0) = coeffs.col(best_i) + coeffs.col(best_j);
    reorder_after_merge(m, best_i, best_j, [&](Index o, Index k) { next.col(o) = coeffs.col(k); });
    out.coefficients_[r - 1] = std::move(next);
    out.vertex_sets_[r - 1] = merge_vertices(basis, best_i, best_j, best.alpha);

    const auto& groups = out.groups_[r];
    std::vector<PartGroup> merged_groups(r);
    merged_groups[0] = groups[best_i];
    merged_groups[0].insert(merged_groups[0].end(), groups[best_j].begin(), groups[best_j].end());
    std::sort(merged_groups[0].begin(), merged_groups[0].end());
    reorder_after_merge(m, best_i, best_j, [&](Index o, Index k) { merged_groups[o] = groups[k]; });
    out.groups_[r - 1] = std::move(merged_groups);
  }
  return out;
}

std::pair<double, double> mode_range(const Decomposition& decomp, Index rank) {
  if (rank < 1 || rank > decomp.dimension()) throw InvalidIndex("mode rank out of range");
  const VectorXd& mean = decomp.vertex_set(0).vertices().row(0).transpose();
  const VectorXd& l = decomp.loading(rank);
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  // mean_k + (t / sqrt2) l_k >= 0 for every part k
  for (Index k = 0; k < l.size(); ++k) {
    if (l[k] > 0.0) lo = std::max(lo, -std::numbers::sqrt2 * mean[k] / l[k]);
    if (l[k] < 0.0) hi = std::min(hi, -std::numbers::sqrt2 * mean[k] / l[k]);
  }
  return {lo, hi};
}

Composition mode_of_variation(const Decomposition& decomp, Index rank, double t) {
  if (rank < 1 || rank > decomp.dimension()) throw InvalidIndex("mode rank out of range");
  VectorXd point = decomp.vertex_set(0).vertex(0) + (t / std::numbers::sqrt2) * decomp.loading(rank);
  if (point.minCoeff() < -kCompositionTolerance) {
    std::ostringstream msg;
    msg << "t = " << t << " leaves the simplex along mode " << rank;
    throw OutOfSimplex(msg.str());
  }
  point = point.cwiseMax(0.0);
  point /= point.sum();
  return Composition::from(std::move(point));
}

}  // namespace subsimplex::psa_s
