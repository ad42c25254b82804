#pragma once

// Static ternary plots: data, rank-1 approximating subset, rank-1
// approximations with residual segments, and the (backwards) mean.

#include "subsimplex/benchmarks.hpp"
#include "subsimplex/dataset.hpp"
#include "subsimplex/psa_o.hpp"
#include "subsimplex/psa_s.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace subsimplex::ternary {

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;
};

/// Unit-edge triangle: e1 -> (0,0), e2 -> (1,0), e3 -> (1/2, sqrt(3)/2).
PlanePoint to_plane(const Eigen::Vector3d& abc);

struct Scene {
  std::string title;
  std::array<std::string, 3> corner_labels{"V1", "V2", "V3"};
  /// n x 3 barycentric coordinates of the plotted samples.
  MatrixXd points;
  /// n x 3 rank-1 approximations; empty when not drawn.
  MatrixXd approximations;
  /// Optional extra markers (e.g. transformed data projected onto the plane).
  MatrixXd projected;
  /// Rank-1 approximating subset as one or more polylines.
  std::vector<std::vector<Eigen::Vector3d>> subset;
  std::optional<Eigen::Vector3d> mean;
  /// Per-sample category used for colouring; empty for a single colour.
  std::vector<std::string> groups;
};

std::string render_svg(const Scene& scene);
void emit_svg(const Scene& scene, const std::filesystem::path& path);

/// Category column used for colours: "cluster" if present, else the first metadata column.
std::vector<std::string> colour_groups(const Dataset& data, const std::string& preferred = "cluster");

/// Label of a vertex by the parts it carries, e.g. "V1+V3".
std::string vertex_label(const VectorXd& vertex, const std::vector<std::string>& part_labels);

/// Scenes for each method. PSA scenes for d > 2 are drawn in the rank-2
/// subsimplex; PCA scenes require d == 2 and throw DimensionNotTwo otherwise.
Scene scene_from_psa_s(const Dataset& data, const psa_s::Decomposition& decomp);
Scene scene_from_psa_o(const Dataset& data, const psa_o::Decomposition& decomp);
Scene scene_from_pca(const Dataset& data, const benchmarks::PcaResult& result);

}  // namespace subsimplex::ternary
