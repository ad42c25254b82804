#include "subsimplex/benchmarks.hpp"

#include "subsimplex/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace subsimplex::benchmarks {

namespace {

void require_positive(const VectorXd& x) {
  for (Index k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0)) {
      std::ostringstream msg;
      msg << "log-ratio transform needs positive entries; entry " << k << " is " << x[k];
      throw NonPositiveEntry(msg.str());
    }
  }
}

VectorXd softmax(const VectorXd& w) {
  VectorXd e = (w.array() - w.maxCoeff()).exp();
  return e / e.sum();
}

Index resolve_reference(Index parts, Index reference) {
  const Index ref = reference < 0 ? parts - 1 : reference;
  if (ref >= parts) throw InvalidTransform("alr reference column out of range");
  return ref;
}

// Each component's largest-magnitude entry is made positive.
void fix_signs(MatrixXd& components) {
  for (Index c = 0; c < components.cols(); ++c) {
    Index arg = 0;
    components.col(c).cwiseAbs().maxCoeff(&arg);
    if (components(arg, c) < 0.0) components.col(c) *= -1.0;
  }
}

MatrixXd inverse_rows(const MatrixXd& rows, const TransformSpec& spec) {
  MatrixXd out(rows.rows(), spec.kind == TransformKind::Clr ? rows.cols() : rows.cols() + 1);
  for (Index s = 0; s < rows.rows(); ++s) out.row(s) = inverse_transform(rows.row(s).transpose(), spec).transpose();
  return out;
}

}  // namespace

std::string to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::Identity:
      return "identity";
    case TransformKind::Power:
      return "power";
    case TransformKind::Clr:
      return "clr";
    case TransformKind::Alr:
      return "alr";
    case TransformKind::Ilr:
      return "ilr";
  }
  return "unknown";
}

TransformKind transform_from_string(const std::string& name) {
  if (name == "identity") return TransformKind::Identity;
  if (name == "power") return TransformKind::Power;
  if (name == "clr") return TransformKind::Clr;
  if (name == "alr") return TransformKind::Alr;
  if (name == "ilr") return TransformKind::Ilr;
  throw InvalidTransform("unknown transform '" + name + "'");
}

void TransformSpec::validate() const {
  if (!(exponent > 0.0)) throw InvalidTransform("power exponent must be positive");
  if (!(zero_factor > 0.0)) throw InvalidTransform("zero replacement factor must be positive");
}

VectorXd clr(const VectorXd& x) {
  require_positive(x);
  VectorXd logs = x.array().log();
  return logs.array() - logs.mean();
}

VectorXd clr_inverse(const VectorXd& w) { return softmax(w); }

VectorXd alr(const VectorXd& x, Index reference) {
  require_positive(x);
  const Index ref = resolve_reference(x.size(), reference);
  VectorXd out(x.size() - 1);
  Index o = 0;
  for (Index k = 0; k < x.size(); ++k) {
    if (k != ref) out[o++] = std::log(x[k] / x[ref]);
  }
  return out;
}

VectorXd alr_inverse(const VectorXd& w, Index reference) {
  const Index parts = w.size() + 1;
  const Index ref = resolve_reference(parts, reference);
  VectorXd full(parts);
  Index o = 0;
  for (Index k = 0; k < parts; ++k) full[k] = k == ref ? 0.0 : w[o++];
  return softmax(full);
}

MatrixXd helmert_submatrix(Index parts) {
  MatrixXd h = MatrixXd::Zero(parts - 1, parts);
  for (Index k = 1; k < parts; ++k) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(k * (k + 1)));
    h.row(k - 1).head(k).setConstant(scale);
    h(k - 1, k) = -static_cast<double>(k) * scale;
  }
  return h;
}

VectorXd ilr(const VectorXd& x) { return helmert_submatrix(x.size()) * clr(x); }

VectorXd ilr_inverse(const VectorXd& w) { return softmax(helmert_submatrix(w.size() + 1).transpose() * w); }

VectorXd inverse_transform(const VectorXd& w, const TransformSpec& spec) {
  switch (spec.kind) {
    case TransformKind::Clr:
      return clr_inverse(w);
    case TransformKind::Alr:
      return alr_inverse(w, spec.alr_reference);
    case TransformKind::Ilr:
      return ilr_inverse(w);
    default:
      throw InvalidTransform(to_string(spec.kind) + " has no inverse to the simplex");
  }
}

VectorXd power_transform(const VectorXd& x, double exponent) {
  if (!(exponent > 0.0)) throw InvalidTransform("power exponent must be positive");
  return x.array().pow(exponent);
}

ZeroReplacement zero_replace(const MatrixXd& data, double factor, bool renormalize) {
  if (data.size() == 0) throw EmptyDataset("no samples");
  if (!(factor > 0.0)) throw InvalidTransform("zero replacement factor must be positive");
  if ((data.array() < 0.0).any()) throw NegativeEntry("negative entry in data");

  double min_nonzero = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < data.size(); ++k) {
    if (data.data()[k] > 0.0) min_nonzero = std::min(min_nonzero, data.data()[k]);
  }
  if (!std::isfinite(min_nonzero)) throw AllZeroMatrix("data has no nonzero entry");

  ZeroReplacement out;
  out.nonzero_mask = (data.array() > 0.0).matrix();
  out.replacement_value = factor * min_nonzero;
  out.values = data;
  for (Index k = 0; k < out.values.size(); ++k) {
    if (out.values.data()[k] == 0.0) {
      out.values.data()[k] = out.replacement_value;
      ++out.replaced_count;
    }
  }
  if (renormalize && out.replaced_count > 0) {
    for (Index s = 0; s < out.values.rows(); ++s) out.values.row(s) /= out.values.row(s).sum();
  }
  return out;
}

MatrixXd transform_rows(const MatrixXd& data, const TransformSpec& spec) {
  spec.validate();
  const Index parts = data.cols();
  const Index width = (spec.kind == TransformKind::Alr || spec.kind == TransformKind::Ilr) ? parts - 1 : parts;
  MatrixXd out(data.rows(), width);
  const MatrixXd helmert = spec.kind == TransformKind::Ilr ? helmert_submatrix(parts) : MatrixXd();
  for (Index s = 0; s < data.rows(); ++s) {
    const VectorXd x = data.row(s).transpose();
    switch (spec.kind) {
      case TransformKind::Identity:
        out.row(s) = x.transpose();
        break;
      case TransformKind::Power:
        out.row(s) = power_transform(x, spec.exponent).transpose();
        break;
      case TransformKind::Clr:
        out.row(s) = clr(x).transpose();
        break;
      case TransformKind::Alr:
        out.row(s) = alr(x, spec.alr_reference).transpose();
        break;
      case TransformKind::Ilr:
        out.row(s) = (helmert * clr(x)).transpose();
        break;
    }
  }
  return out;
}

PcaResult pca(const MatrixXd& data, const TransformSpec& spec) {
  spec.validate();
  if (data.rows() < 2) throw EmptyDataset("PCA needs at least two samples");
  if (data.cols() < 1) throw DimensionMismatch("PCA needs at least one column");

  PcaResult out;
  out.spec = spec;
  MatrixXd input = data;
  if (spec.is_log_ratio()) {
    ZeroReplacement zr = zero_replace(data, spec.zero_factor, spec.renormalize_after_replacement);
    if (zr.replaced_count > 0) {
      out.replacement_value = zr.replacement_value;
      out.replaced_count = zr.replaced_count;
    }
    input = std::move(zr.values);
  } else if (spec.kind == TransformKind::Power && (data.array() < 0.0).any()) {
    throw NegativeEntry("power transform needs nonnegative data");
  }

  const MatrixXd y = transform_rows(input, spec);
  const Index n = y.rows();
  const Index m = y.cols();
  out.mean = y.colwise().mean().transpose();
  const MatrixXd centred = y.rowwise() - out.mean.transpose();
  const MatrixXd cov = (centred.transpose() * centred) / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) throw NumericFailure("covariance eigendecomposition failed");
  out.eigenvalues = eig.eigenvalues().reverse().cwiseMax(0.0);
  out.components = eig.eigenvectors().rowwise().reverse();
  fix_signs(out.components);
  out.scores = centred * out.components;

  out.approximations.reserve(static_cast<std::size_t>(m + 1));
  for (Index k = 0; k <= m; ++k) {
    MatrixXd approx = out.scores.leftCols(k) * out.components.leftCols(k).transpose();
    approx.rowwise() += out.mean.transpose();
    out.approximations.push_back(std::move(approx));
  }

  switch (spec.kind) {
    case TransformKind::Identity: {
      std::vector<std::vector<bool>> flags;
      for (const MatrixXd& a : out.approximations) {
        std::vector<bool> row_flags(static_cast<std::size_t>(n));
        for (Index s = 0; s < n; ++s) row_flags[static_cast<std::size_t>(s)] = a.row(s).minCoeff() < -kCompositionTolerance;
        flags.push_back(std::move(row_flags));
      }
      out.out_of_simplex = std::move(flags);
      break;
    }
    case TransformKind::Power: {
      std::vector<MatrixXd> projected;
      for (const MatrixXd& a : out.approximations) {
        MatrixXd p = a;
        const VectorXd shift = (1.0 - a.rowwise().sum().array()) / static_cast<double>(m);
        p.colwise() += shift;
        projected.push_back(std::move(p));
      }
      out.hyperplane_approximations = std::move(projected);
      break;
    }
    default: {
      std::vector<MatrixXd> simplex;
      for (const MatrixXd& a : out.approximations) simplex.push_back(inverse_rows(a, spec));
      out.simplex_approximations = std::move(simplex);
      break;
    }
  }
  return out;
}

}  // namespace subsimplex::benchmarks
