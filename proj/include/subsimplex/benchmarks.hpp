#pragma once

// Comparison methods: PCA on raw compositions, on entrywise powers, and on
// log-ratio coordinates (clr, alr, ilr).

#include "subsimplex/simplex_core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace subsimplex::benchmarks {

enum class TransformKind { Identity, Power, Clr, Alr, Ilr };

std::string to_string(TransformKind kind);
TransformKind transform_from_string(const std::string& name);

struct TransformSpec {
  TransformKind kind = TransformKind::Identity;
  double exponent = 0.5;
  /// Zeros become factor * (smallest nonzero entry of the whole matrix).
  double zero_factor = 0.5;
  /// Rescale rows to unit sum after zero replacement.
  bool renormalize_after_replacement = true;
  /// alr divisor column; -1 means the last column.
  Index alr_reference = -1;

  void validate() const;
  bool is_log_ratio() const noexcept {
    return kind == TransformKind::Clr || kind == TransformKind::Alr || kind == TransformKind::Ilr;
  }
};

struct ZeroReplacement {
  MatrixXd values;
  /// True where the original entry was nonzero.
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> nonzero_mask;
  double replacement_value = 0.0;
  Index replaced_count = 0;
};

struct PcaResult {
  TransformSpec spec;
  VectorXd mean;
  /// Columns are orthonormal loading directions, ordered by eigenvalue.
  MatrixXd components;
  VectorXd eigenvalues;
  /// n x k, centred data times components.
  MatrixXd scores;
  /// Index k holds the rank-k reconstruction in transform space (k = 0 is the mean).
  std::vector<MatrixXd> approximations;
  /// Log-ratio kinds: reconstructions mapped back to the simplex.
  std::optional<std::vector<MatrixXd>> simplex_approximations;
  /// Power kind: reconstructions moved orthogonally onto the hyperplane sum = 1.
  std::optional<std::vector<MatrixXd>> hyperplane_approximations;
  /// Identity kind: per rank, per sample flag for a reconstruction leaving the simplex.
  std::optional<std::vector<std::vector<bool>>> out_of_simplex;
  /// Set when zeros were replaced before a log-ratio transform.
  std::optional<double> replacement_value;
  Index replaced_count = 0;

  Index component_count() const noexcept { return components.cols(); }
};

VectorXd clr(const VectorXd& x);
VectorXd clr_inverse(const VectorXd& w);
VectorXd alr(const VectorXd& x, Index reference = -1);
VectorXd alr_inverse(const VectorXd& w, Index reference = -1);
VectorXd ilr(const VectorXd& x);
VectorXd ilr_inverse(const VectorXd& w);
VectorXd power_transform(const VectorXd& x, double exponent);

/// Lower (D-1) x D block of the Helmert matrix of order D.
MatrixXd helmert_submatrix(Index parts);

ZeroReplacement zero_replace(const MatrixXd& data, double factor = 0.5, bool renormalize = true);

/// Row-wise transform of a data matrix (no zero replacement).
MatrixXd transform_rows(const MatrixXd& data, const TransformSpec& spec);

/// Maps one transform-space point back to the simplex (log-ratio kinds only).
VectorXd inverse_transform(const VectorXd& w, const TransformSpec& spec);

PcaResult pca(const MatrixXd& data, const TransformSpec& spec);

}  // namespace subsimplex::benchmarks
