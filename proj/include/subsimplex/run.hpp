#pragma once

// Orchestration behind the `subsimplex` command: dataset loading, method
// dispatch and the on-disk result layout.

#include "subsimplex/dataset.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace subsimplex::cli {

enum class Method { PsaS, PsaO, Pca, PowerPca, LogRatioPca };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

struct RunConfig {
  Method method = Method::PsaS;
  /// CSV input; mutually exclusive with synth_example.
  std::optional<std::string> input;
  std::vector<std::string> meta;
  std::optional<int> synth_example;
  std::uint64_t seed = 42;
  /// Synthetic cluster sizes; empty means 5, 10, 10, 5.
  std::vector<int> cluster_sizes;
  std::string out_dir = "results";
  int grid_points = 101;
  bool refine = false;
  double exponent = 0.5;
  double zero_factor = 0.5;
  bool renormalize_after_replacement = true;
  std::string log_ratio = "clr";
  int alr_reference = -1;
  bool plot = true;
  std::string colour_by = "cluster";

  /// Throws ConfigError on inconsistent or out-of-range settings.
  void validate() const;
};

nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);
/// Reads the "config" block of a manifest written by a previous run.
RunConfig config_from_manifest(const std::filesystem::path& manifest);

/// Example 1 or 2 of the simulation study.
Dataset synthesize(int example, std::uint64_t seed, const std::vector<int>& cluster_sizes = {});
Dataset load_dataset(const RunConfig& config);

/// Runs the method and writes every output file. Throws subsimplex::Error.
void execute(const RunConfig& config);

/// execute() with errors reported on `err` and mapped to exit codes
/// (0 success, 2 parse, 3 validation, 4 numeric failure).
int run(const RunConfig& config, std::ostream& err);

/// Writes a synthetic dataset as CSV (metadata columns first).
void write_synthetic(int example, std::uint64_t seed, const std::filesystem::path& path,
                     const std::vector<int>& cluster_sizes = {});

}  // namespace subsimplex::cli
