#include "subsimplex/ternary.hpp"

#include "subsimplex/dataset_io.hpp"
#include "subsimplex/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace subsimplex::ternary {

namespace {

constexpr double kSqrt3Over2 = 0.86602540378443864676;
constexpr double kCanvas = 520.0;
constexpr double kMargin = 50.0;
constexpr double kScale = kCanvas - 2.0 * kMargin;

const char* const kPalette[] = {"#d62728", "#2ca02c", "#17becf", "#9467bd", "#ff7f0e",
                                "#1f77b4", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"};

std::string num(double v) { return io::format_double(v, 6); }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

struct Canvas {
  double x = 0.0;
  double y = 0.0;
};

Canvas to_canvas(const Eigen::Vector3d& abc) {
  const PlanePoint p = to_plane(abc);
  return {kMargin + kScale * p.x, kMargin + kScale * (kSqrt3Over2 - p.y)};
}

MatrixXd in_basis(const MatrixXd& ambient_rows, const SimplexVertexSet& basis) {
  MatrixXd out(ambient_rows.rows(), basis.rank() + 1);
  for (Index s = 0; s < ambient_rows.rows(); ++s) {
    const Composition x = Composition::renormalized(ambient_rows.row(s).transpose());
    out.row(s) = barycentric_coordinates(x, basis).transpose();
  }
  return out;
}

std::array<std::string, 3> labels_for(const MatrixXd& vertices, const std::vector<std::string>& part_labels) {
  std::array<std::string, 3> out;
  for (Index k = 0; k < 3; ++k) out[static_cast<std::size_t>(k)] = vertex_label(vertices.row(k).transpose(), part_labels);
  return out;
}

template <typename Decomp>
void require_rank_two(const Decomp& decomp) {
  if (decomp.dimension() < 2) throw DimensionNotTwo("ternary plot needs at least three parts");
}

}  // namespace

PlanePoint to_plane(const Eigen::Vector3d& abc) { return {abc[1] + abc[2] / 2.0, kSqrt3Over2 * abc[2]}; }

std::vector<std::string> colour_groups(const Dataset& data, const std::string& preferred) {
  if (const MetaColumn* m = data.find_meta(preferred)) return m->values;
  if (!data.metadata.empty()) return data.metadata.front().values;
  return {};
}

std::string vertex_label(const VectorXd& vertex, const std::vector<std::string>& part_labels) {
  std::string out;
  for (Index k = 0; k < vertex.size(); ++k) {
    if (vertex[k] > 0.0) {
      if (!out.empty()) out += '+';
      out += k < static_cast<Index>(part_labels.size()) ? part_labels[static_cast<std::size_t>(k)]
                                                        : "V" + std::to_string(k + 1);
    }
  }
  return out;
}

std::string render_svg(const Scene& scene) {
  if (scene.points.cols() != 3) throw DimensionNotTwo("ternary plot needs three coordinates");

  std::map<std::string, std::string> colours;
  {
    std::vector<std::string> distinct = scene.groups;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t k = 0; k < distinct.size(); ++k) colours[distinct[k]] = kPalette[k % std::size(kPalette)];
  }
  auto colour_of = [&](Index s) -> std::string {
    if (scene.groups.empty()) return "#1f77b4";
    return colours[scene.groups.at(static_cast<std::size_t>(s))];
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\"" << kCanvas
      << "\" viewBox=\"0 0 " << kCanvas << ' ' << kCanvas << "\">\n";
  if (!scene.title.empty()) {
    svg << "<title>" << escape(scene.title) << "</title>\n";
    svg << "<text class=\"title\" x=\"" << kCanvas / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << escape(scene.title) << "</text>\n";
  }

  const Canvas c1 = to_canvas({1, 0, 0}), c2 = to_canvas({0, 1, 0}), c3 = to_canvas({0, 0, 1});
  svg << "<polygon class=\"simplex\" points=\"" << num(c1.x) << ',' << num(c1.y) << ' ' << num(c2.x) << ','
      << num(c2.y) << ' ' << num(c3.x) << ',' << num(c3.y) << "\" fill=\"none\" stroke=\"black\"/>\n";
  const Canvas corners[3] = {c1, c2, c3};
  const double dy[3] = {18, 18, -8};
  for (int k = 0; k < 3; ++k) {
    svg << "<text class=\"vertex-label\" x=\"" << num(corners[k].x) << "\" y=\"" << num(corners[k].y + dy[k])
        << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(scene.corner_labels[static_cast<std::size_t>(k)])
        << "</text>\n";
  }

  for (const auto& line : scene.subset) {
    svg << "<polyline class=\"subset\" fill=\"none\" stroke=\"red\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < line.size(); ++k) {
      const Canvas p = to_canvas(line[k]);
      svg << (k ? " " : "") << num(p.x) << ',' << num(p.y);
    }
    svg << "\"/>\n";
  }

  const bool with_approx = scene.approximations.rows() == scene.points.rows() && scene.approximations.cols() == 3;
  if (with_approx) {
    for (Index s = 0; s < scene.points.rows(); ++s) {
      const Canvas a = to_canvas(scene.points.row(s).transpose());
      const Canvas b = to_canvas(scene.approximations.row(s).transpose());
      svg << "<line class=\"residual\" x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\"" << num(b.x)
          << "\" y2=\"" << num(b.y) << "\" stroke=\"#999999\" stroke-dasharray=\"3,2\"/>\n";
    }
  }
  for (Index s = 0; s < scene.points.rows(); ++s) {
    const Canvas p = to_canvas(scene.points.row(s).transpose());
    svg << "<circle class=\"data\" cx=\"" << num(p.x) << "\" cy=\"" << num(p.y) << "\" r=\"3.5\" fill=\""
        << colour_of(s) << "\"/>\n";
  }
  if (with_approx) {
    for (Index s = 0; s < scene.approximations.rows(); ++s) {
      const Canvas p = to_canvas(scene.approximations.row(s).transpose());
      svg << "<circle class=\"approximation\" cx=\"" << num(p.x) << "\" cy=\"" << num(p.y)
          << "\" r=\"3.5\" fill=\"none\" stroke=\"" << colour_of(s) << "\"/>\n";
    }
  }
  for (Index s = 0; s < scene.projected.rows(); ++s) {
    const Canvas p = to_canvas(scene.projected.row(s).transpose());
    svg << "<text class=\"projected\" x=\"" << num(p.x) << "\" y=\"" << num(p.y + 4)
        << "\" text-anchor=\"middle\" font-size=\"12\" fill=\"" << colour_of(s) << "\">*</text>\n";
  }
  if (scene.mean) {
    const Canvas p = to_canvas(*scene.mean);
    svg << "<circle class=\"mean\" cx=\"" << num(p.x) << "\" cy=\"" << num(p.y) << "\" r=\"5\" fill=\"black\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_svg(const Scene& scene, const std::filesystem::path& path) { io::write_file_atomic(path, render_svg(scene)); }

Scene scene_from_psa_s(const Dataset& data, const psa_s::Decomposition& decomp) {
  require_rank_two(decomp);
  const SimplexVertexSet& basis = decomp.vertex_set(2);
  Scene scene;
  scene.title = "PSA-S";
  scene.corner_labels = labels_for(basis.vertices(), data.column_labels);
  scene.points = decomp.coefficients(2);
  scene.approximations = in_basis(decomp.approximations(1), basis);
  const MatrixXd ends = in_basis(decomp.vertex_set(1).vertices(), basis);
  scene.subset.push_back({ends.row(0).transpose(), ends.row(1).transpose()});
  scene.mean = in_basis(decomp.vertex_set(0).vertices(), basis).row(0).transpose();
  scene.groups = colour_groups(data);
  return scene;
}

Scene scene_from_psa_o(const Dataset& data, const psa_o::Decomposition& decomp) {
  require_rank_two(decomp);
  const SimplexVertexSet basis = decomp.simplex_vertex_set(2);
  Scene scene;
  scene.title = "PSA-O";
  scene.corner_labels = labels_for(basis.vertices(), data.column_labels);
  scene.points = decomp.dimension() == 2 ? data.values : in_basis(decomp.simplex_approximations(2), basis);
  scene.approximations = in_basis(decomp.simplex_approximations(1), basis);
  const MatrixXd ends = in_basis(decomp.simplex_vertices(1), basis);
  scene.subset.push_back({ends.row(0).transpose(), ends.row(1).transpose()});
  scene.mean = in_basis(decomp.simplex_vertices(0), basis).row(0).transpose();
  scene.groups = colour_groups(data);
  return scene;
}

Scene scene_from_pca(const Dataset& data, const benchmarks::PcaResult& result) {
  using benchmarks::TransformKind;
  if (data.parts() != 3) throw DimensionNotTwo("PCA ternary plot needs exactly three parts");
  Scene scene;
  scene.corner_labels = {data.column_labels.at(0), data.column_labels.at(1), data.column_labels.at(2)};
  scene.points = data.values;
  scene.groups = colour_groups(data);

  const VectorXd first = result.scores.col(0);
  const double lo = first.minCoeff();
  const double hi = first.maxCoeff();
  const VectorXd c1 = result.components.col(0);

  switch (result.spec.kind) {
    case TransformKind::Identity: {
      scene.title = "PCA";
      scene.approximations = result.approximations.at(1);
      scene.subset.push_back({result.mean + lo * c1, result.mean + hi * c1});
      scene.mean = result.mean;
      break;
    }
    case TransformKind::Power: {
      scene.title = "Power-transform PCA";
      const auto& plane = *result.hyperplane_approximations;
      scene.approximations = plane.at(1);
      scene.projected = plane.back();
      const Index m = result.mean.size();
      auto onto_plane = [&](const VectorXd& y) -> Eigen::Vector3d {
        return y.array() + (1.0 - y.sum()) / static_cast<double>(m);
      };
      scene.subset.push_back({onto_plane(result.mean + lo * c1), onto_plane(result.mean + hi * c1)});
      scene.mean = onto_plane(result.mean);
      break;
    }
    default: {
      scene.title = "Log-ratio PCA (" + benchmarks::to_string(result.spec.kind) + ")";
      scene.approximations = result.simplex_approximations->at(1);
      std::vector<Eigen::Vector3d> curve;
      constexpr int kSteps = 100;
      for (int k = 0; k <= kSteps; ++k) {
        const double t = lo + (hi - lo) * k / kSteps;
        curve.push_back(benchmarks::inverse_transform(result.mean + t * c1, result.spec));
      }
      scene.subset.push_back(std::move(curve));
      scene.mean = benchmarks::inverse_transform(result.mean, result.spec);
      break;
    }
  }
  return scene;
}

}  // namespace subsimplex::ternary
