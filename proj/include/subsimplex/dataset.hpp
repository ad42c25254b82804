#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace subsimplex {

struct MetaColumn {
  std::string name;
  std::vector<std::string> values;
};

/// n compositions with d+1 parts, one per row, plus optional per-row metadata
/// such as sample depth or cluster label.
struct Dataset {
  Eigen::MatrixXd values;
  std::vector<std::string> column_labels;
  std::vector<MetaColumn> metadata;

  Eigen::Index rows() const noexcept { return values.rows(); }
  Eigen::Index parts() const noexcept { return values.cols(); }
  /// d, the dimension of the simplex the rows live in.
  Eigen::Index dimension() const noexcept { return values.cols() - 1; }

  const MetaColumn* find_meta(const std::string& name) const;
};

/// Default labels "V1".."V{parts}".
std::vector<std::string> default_part_labels(Eigen::Index parts);

/// Checks every row is a composition (entries >= 0, sum within 1e-9 of one).
/// Throws EmptyDataset or InvalidComposition naming the offending row.
void validate_compositions(const Eigen::MatrixXd& rows);

}  // namespace subsimplex
