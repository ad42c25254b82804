#include "subsimplex/run.hpp"

#include "subsimplex/benchmarks.hpp"
#include "subsimplex/dataset_io.hpp"
#include "subsimplex/errors.hpp"
#include "subsimplex/psa_o.hpp"
#include "subsimplex/psa_s.hpp"
#include "subsimplex/synthdata.hpp"
#include "subsimplex/ternary.hpp"

#include <chrono>
#include <functional>
#include <fstream>
#include <map>
#include <ostream>

namespace subsimplex::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

// Collected output files, written in one pass at the end.
class OutputSet {
 public:
  void add(const std::string& name, std::string content) { files_[name] = std::move(content); }
  const std::map<std::string, std::string>& files() const noexcept { return files_; }

 private:
  std::map<std::string, std::string> files_;
};

std::vector<double> as_list(const Composition& c) {
  const VectorXd& v = c.values();
  return {v.begin(), v.end()};
}

std::string rank_file(const std::string& stem, Index rank) { return stem + "_rank_" + std::to_string(rank) + ".csv"; }

std::vector<std::string> rank_header(Index d) {
  std::vector<std::string> h;
  for (Index r = d; r >= 1; --r) h.push_back("rank_" + std::to_string(r));
  return h;
}

// Rows = modes (rank 1 first); leading column names the mode.
std::string loadings_csv(const std::vector<VectorXd>& loadings_by_mode, const std::vector<std::string>& labels,
                         int precision, const std::string& prefix) {
  if (loadings_by_mode.empty()) return io::matrix_csv(MatrixXd(0, static_cast<Index>(labels.size())), labels, precision);
  MatrixXd m(static_cast<Index>(loadings_by_mode.size()), loadings_by_mode.front().size());
  MetaColumn mode{"mode", {}};
  for (std::size_t k = 0; k < loadings_by_mode.size(); ++k) {
    m.row(static_cast<Index>(k)) = loadings_by_mode[k].transpose();
    mode.values.push_back(prefix + std::to_string(k + 1));
  }
  return io::matrix_csv(m, labels, precision, {mode});
}

std::string variance_csv(const std::vector<double>& amounts, const std::string& amount_name,
                         const std::string& prefix, int precision) {
  double total = 0.0;
  for (double a : amounts) total += a;
  std::string out = "mode," + amount_name + ",proportion,cumulative\n";
  double cumulative = 0.0;
  for (std::size_t k = 0; k < amounts.size(); ++k) {
    const double p = total > 0.0 ? amounts[k] / total : 0.0;
    cumulative += p;
    out += prefix + std::to_string(k + 1) + "," + io::format_double(amounts[k], precision) + "," +
           io::format_double(p, precision) + "," + io::format_double(cumulative, precision) + "\n";
  }
  return out;
}

std::string vertices_csv(const MatrixXd& vertices, const std::vector<std::string>& labels, int precision) {
  MetaColumn names{"vertex", {}};
  for (Index k = 0; k < vertices.rows(); ++k) names.values.push_back(ternary::vertex_label(vertices.row(k).transpose(), labels));
  return io::matrix_csv(vertices, labels, precision, {names});
}

void maybe_plot(const RunConfig& config, const Dataset& data, OutputSet& out, json& diag,
                const std::function<ternary::Scene()>& make_scene) {
  if (!config.plot) return;
  try {
    ternary::Scene scene = make_scene();
    if (config.colour_by != "cluster") scene.groups = ternary::colour_groups(data, config.colour_by);
    out.add("ternary.svg", ternary::render_svg(scene));
  } catch (const DimensionNotTwo& e) {
    diag["ternary"] = std::string("skipped: ") + e.what();
  }
}

json run_psa_s(const RunConfig& config, const Dataset& data, OutputSet& out, int precision) {
  const psa_s::Decomposition dec = psa_s::fit(data.values);
  const Index d = dec.dimension();
  const auto& labels = data.column_labels;

  out.add("scores.csv", io::matrix_csv(dec.scores(), rank_header(d), precision));
  std::vector<VectorXd> loadings;
  std::vector<double> rss;
  for (Index r = 1; r <= d; ++r) {
    loadings.push_back(dec.loading(r));
    rss.push_back(dec.merge(r).rss);
  }
  out.add("loadings.csv", loadings_csv(loadings, labels, precision, "mode_"));
  out.add("variance.csv", variance_csv(rss, "rss", "mode_", precision));
  for (Index r = 0; r <= d; ++r) {
    out.add(rank_file("vertices", r), vertices_csv(dec.vertex_set(r).vertices(), labels, precision));
    out.add(rank_file("approximations", r), io::matrix_csv(dec.approximations(r), labels, precision));
  }

  std::string merges = "rank,i,j,group_i,group_j,alpha,rss,degenerate\n";
  int degenerate = 0;
  for (const auto& m : dec.merges()) {
    const auto& basis = dec.vertex_set(m.rank_from).vertices();
    merges += std::to_string(m.rank_from) + "," + std::to_string(m.merged_pair.first + 1) + "," +
              std::to_string(m.merged_pair.second + 1) + "," +
              ternary::vertex_label(basis.row(m.merged_pair.first).transpose(), labels) + "," +
              ternary::vertex_label(basis.row(m.merged_pair.second).transpose(), labels) + "," +
              io::format_double(m.alpha, precision) + "," + io::format_double(m.rss, precision) + "," +
              (m.degenerate ? "1" : "0") + "\n";
    degenerate += m.degenerate ? 1 : 0;
  }
  out.add("merges.csv", merges);

  json diag;
  diag["degenerate_merges"] = degenerate;
  diag["backwards_mean"] = as_list(dec.backwards_mean());
  maybe_plot(config, data, out, diag, [&] { return ternary::scene_from_psa_s(data, dec); });
  return diag;
}

json run_psa_o(const RunConfig& config, const Dataset& data, OutputSet& out, int precision) {
  psa_o::Options opts;
  opts.grid_points = config.grid_points;
  opts.refine = config.refine;
  const psa_o::Decomposition dec = psa_o::fit(data.values, opts);
  const Index d = dec.dimension();
  const auto& labels = data.column_labels;

  out.add("scores.csv", io::matrix_csv(dec.scores(), rank_header(d), precision));
  std::vector<VectorXd> loadings;
  std::vector<double> rss;
  for (Index r = 1; r <= d; ++r) {
    loadings.push_back(dec.loading(r));
    rss.push_back(dec.merge(r).rss);
  }
  out.add("loadings.csv", loadings_csv(loadings, labels, precision, "mode_"));
  out.add("variance.csv", variance_csv(rss, "rss", "mode_", precision));
  for (Index r = 0; r <= d; ++r) {
    out.add(rank_file("vertices", r), vertices_csv(dec.simplex_vertices(r), labels, precision));
    out.add(rank_file("orthant_vertices", r), vertices_csv(dec.orthant_vertex_set(r).vertices(), labels, precision));
    out.add(rank_file("approximations", r), io::matrix_csv(dec.simplex_approximations(r), labels, precision));
    out.add(rank_file("spherical_approximations", r),
            io::matrix_csv(dec.spherical_approximations(r), labels, precision));
  }

  std::string merges = "rank,i,j,group_i,group_j,alpha,rss\n";
  for (const auto& m : dec.merges()) {
    const auto& basis = dec.orthant_vertex_set(m.rank_from).vertices();
    merges += std::to_string(m.rank_from) + "," + std::to_string(m.merged_pair.first + 1) + "," +
              std::to_string(m.merged_pair.second + 1) + "," +
              ternary::vertex_label(basis.row(m.merged_pair.first).transpose(), labels) + "," +
              ternary::vertex_label(basis.row(m.merged_pair.second).transpose(), labels) + "," +
              io::format_double(m.alpha, precision) + "," + io::format_double(m.rss, precision) + "\n";
  }
  out.add("merges.csv", merges);

  json diag;
  diag["pole_samples"] = dec.diagnostics().pole_samples;
  diag["grid_points"] = config.grid_points;
  diag["backwards_mean"] = as_list(dec.backwards_mean());
  maybe_plot(config, data, out, diag, [&] { return ternary::scene_from_psa_o(data, dec); });
  return diag;
}

json run_pca(const RunConfig& config, const Dataset& data, OutputSet& out, int precision) {
  using benchmarks::TransformKind;
  benchmarks::TransformSpec spec;
  switch (config.method) {
    case Method::Pca:
      spec.kind = TransformKind::Identity;
      break;
    case Method::PowerPca:
      spec.kind = TransformKind::Power;
      break;
    default:
      spec.kind = benchmarks::transform_from_string(config.log_ratio);
      break;
  }
  spec.exponent = config.exponent;
  spec.zero_factor = config.zero_factor;
  spec.renormalize_after_replacement = config.renormalize_after_replacement;
  spec.alr_reference = config.alr_reference;

  const benchmarks::PcaResult res = benchmarks::pca(data.values, spec);
  const Index k = res.component_count();

  std::vector<std::string> coords;
  if (k == data.parts()) {
    coords = data.column_labels;
  } else {
    for (Index c = 0; c < k; ++c) coords.push_back(benchmarks::to_string(spec.kind) + std::to_string(c + 1));
  }
  std::vector<std::string> pcs;
  for (Index c = 0; c < k; ++c) pcs.push_back("PC" + std::to_string(c + 1));

  out.add("scores.csv", io::matrix_csv(res.scores, pcs, precision));
  std::vector<VectorXd> comps;
  std::vector<double> eig;
  for (Index c = 0; c < k; ++c) {
    comps.push_back(res.components.col(c));
    eig.push_back(res.eigenvalues[c]);
  }
  out.add("loadings.csv", loadings_csv(comps, coords, precision, "PC"));
  out.add("variance.csv", variance_csv(eig, "eigenvalue", "PC", precision));
  for (Index r = 0; r <= k; ++r) {
    out.add(rank_file("approximations", r), io::matrix_csv(res.approximations[static_cast<std::size_t>(r)], coords, precision));
    if (res.simplex_approximations) {
      out.add(rank_file("simplex_approximations", r),
              io::matrix_csv((*res.simplex_approximations)[static_cast<std::size_t>(r)], data.column_labels, precision));
    }
    if (res.hyperplane_approximations) {
      out.add(rank_file("hyperplane_approximations", r),
              io::matrix_csv((*res.hyperplane_approximations)[static_cast<std::size_t>(r)], data.column_labels, precision));
    }
  }

  json diag;
  diag["transform"] = benchmarks::to_string(spec.kind);
  if (spec.kind == TransformKind::Power) diag["exponent"] = spec.exponent;
  if (spec.is_log_ratio()) {
    diag["zero_factor"] = spec.zero_factor;
    diag["replaced_zeros"] = res.replaced_count;
    diag["replacement_value"] = res.replacement_value ? json(*res.replacement_value) : json(nullptr);
  }
  if (res.out_of_simplex) {
    const auto& flags = *res.out_of_simplex;
    MatrixXd m(data.rows(), k + 1);
    json counts = json::array();
    for (Index r = 0; r <= k; ++r) {
      int count = 0;
      for (Index s = 0; s < data.rows(); ++s) {
        const bool f = flags[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)];
        m(s, r) = f ? 1.0 : 0.0;
        count += f ? 1 : 0;
      }
      counts.push_back(count);
    }
    std::vector<std::string> header;
    for (Index r = 0; r <= k; ++r) header.push_back("rank_" + std::to_string(r));
    out.add("out_of_simplex.csv", io::matrix_csv(m, header, precision));
    diag["out_of_simplex_by_rank"] = counts;
  }
  maybe_plot(config, data, out, diag, [&] { return ternary::scene_from_pca(data, res); });
  return diag;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::PsaS:
      return "psa-s";
    case Method::PsaO:
      return "psa-o";
    case Method::Pca:
      return "pca";
    case Method::PowerPca:
      return "power-pca";
    case Method::LogRatioPca:
      return "logratio-pca";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  for (Method m : {Method::PsaS, Method::PsaO, Method::Pca, Method::PowerPca, Method::LogRatioPca}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown method '" + name + "'");
}

void RunConfig::validate() const {
  if (input.has_value() == synth_example.has_value()) {
    throw ConfigError("give exactly one of an input CSV or a synthetic example");
  }
  if (synth_example && *synth_example != 1 && *synth_example != 2) throw ConfigError("synthetic example must be 1 or 2");
  if (out_dir.empty()) throw ConfigError("output directory is empty");
  if (method == Method::PsaO && grid_points < 2) throw ConfigError("grid must have at least two points");
  if (method == Method::PowerPca && !(exponent > 0.0)) throw ConfigError("power exponent must be positive");
  if (method == Method::LogRatioPca) {
    if (!(zero_factor > 0.0)) throw ConfigError("zero replacement factor must be positive");
    if (log_ratio != "clr" && log_ratio != "alr" && log_ratio != "ilr") {
      throw ConfigError("log-ratio transform must be clr, alr or ilr");
    }
  }
}

json to_json(const RunConfig& c) {
  json j;
  j["method"] = to_string(c.method);
  j["input"] = c.input ? json(*c.input) : json(nullptr);
  j["meta"] = c.meta;
  j["synth_example"] = c.synth_example ? json(*c.synth_example) : json(nullptr);
  j["seed"] = c.seed;
  j["cluster_sizes"] = c.cluster_sizes;
  j["out_dir"] = c.out_dir;
  j["grid_points"] = c.grid_points;
  j["refine"] = c.refine;
  j["exponent"] = c.exponent;
  j["zero_factor"] = c.zero_factor;
  j["renormalize_after_replacement"] = c.renormalize_after_replacement;
  j["log_ratio"] = c.log_ratio;
  j["alr_reference"] = c.alr_reference;
  j["plot"] = c.plot;
  j["colour_by"] = c.colour_by;
  return j;
}

RunConfig config_from_json(const json& j) {
  try {
    RunConfig c;
    c.method = method_from_string(j.at("method").get<std::string>());
    if (!j.at("input").is_null()) c.input = j.at("input").get<std::string>();
    c.meta = j.at("meta").get<std::vector<std::string>>();
    if (!j.at("synth_example").is_null()) c.synth_example = j.at("synth_example").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.cluster_sizes = j.value("cluster_sizes", std::vector<int>{});
    c.out_dir = j.at("out_dir").get<std::string>();
    c.grid_points = j.at("grid_points").get<int>();
    c.refine = j.at("refine").get<bool>();
    c.exponent = j.at("exponent").get<double>();
    c.zero_factor = j.at("zero_factor").get<double>();
    c.renormalize_after_replacement = j.at("renormalize_after_replacement").get<bool>();
    c.log_ratio = j.at("log_ratio").get<std::string>();
    c.alr_reference = j.at("alr_reference").get<int>();
    c.plot = j.at("plot").get<bool>();
    c.colour_by = j.at("colour_by").get<std::string>();
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed run configuration: ") + e.what());
  }
}

RunConfig config_from_manifest(const fs::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot open " + manifest.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(manifest.string() + ": " + e.what());
  }
  if (!j.contains("config")) throw ParseError(manifest.string() + ": no config block");
  return config_from_json(j.at("config"));
}

Dataset synthesize(int example, std::uint64_t seed, const std::vector<int>& cluster_sizes) {
  if (example != 1 && example != 2) throw ConfigError("synthetic example must be 1 or 2");
  auto clusters = synth::example1_clusters();
  if (!cluster_sizes.empty()) {
    if (cluster_sizes.size() != clusters.size()) throw ConfigError("expected four cluster sizes");
    for (std::size_t k = 0; k < clusters.size(); ++k) {
      if (cluster_sizes[k] < 1) throw ConfigError("cluster sizes must be positive");
      clusters[k].count = cluster_sizes[k];
    }
  }
  Dataset base = synth::generate_clusters(clusters, seed);
  if (example == 1) return base;
  return synth::append_noise_parts(base, {}, seed);
}

Dataset load_dataset(const RunConfig& config) {
  if (config.synth_example) return synthesize(*config.synth_example, config.seed, config.cluster_sizes);
  return io::ingest_csv(*config.input, config.meta);
}

void execute(const RunConfig& config) {
  config.validate();
  const int precision = io::output_precision();
  const Dataset data = load_dataset(config);

  OutputSet out;
  const auto start = std::chrono::steady_clock::now();
  json diag;
  switch (config.method) {
    case Method::PsaS:
      diag = run_psa_s(config, data, out, precision);
      break;
    case Method::PsaO:
      diag = run_psa_o(config, data, out, precision);
      break;
    default:
      diag = run_pca(config, data, out, precision);
      break;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json manifest;
  manifest["tool"] = "subsimplex";
  manifest["version"] = kVersion;
  manifest["config"] = to_json(config);
  json input;
  input["source"] = config.input ? *config.input
                                 : "synthetic example " + std::to_string(*config.synth_example) + ", seed " +
                                       std::to_string(config.seed);
  input["rows"] = data.rows();
  input["parts"] = data.parts();
  input["labels"] = data.column_labels;
  manifest["input"] = input;
  manifest["precision"] = precision;
  manifest["diagnostics"] = diag;
  json files = json::array();
  for (const auto& [name, _] : out.files()) files.push_back(name);
  manifest["outputs"] = files;
  manifest["build"] = {{"compiler", __VERSION__},
                       {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                     "." + std::to_string(EIGEN_MINOR_VERSION)},
                       {"cplusplus", __cplusplus}};
  manifest["timing"] = {{"fit_seconds", seconds}};

  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) throw IoError("cannot create " + config.out_dir + ": " + ec.message());
  for (const auto& [name, content] : out.files()) io::write_file_atomic(fs::path(config.out_dir) / name, content);
  io::write_file_atomic(fs::path(config.out_dir) / "manifest.json", manifest.dump(2) + "\n");
}

int run(const RunConfig& config, std::ostream& err) {
  try {
    execute(config);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.error_class());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

void write_synthetic(int example, std::uint64_t seed, const fs::path& path, const std::vector<int>& cluster_sizes) {
  const Dataset data = synthesize(example, seed, cluster_sizes);
  io::write_file_atomic(path, io::matrix_csv(data.values, data.column_labels, io::output_precision(), data.metadata));
}

}  // namespace subsimplex::cli
