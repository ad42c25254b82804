#include "subsimplex/errors.hpp"
#include "subsimplex/run.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace subsimplex;

int main(int argc, char** argv) {
  CLI::App app{"Principal subsimplex analysis of compositional data"};
  app.require_subcommand(1);

  cli::RunConfig config;
  std::string method = "psa-s";
  std::string input;
  std::string manifest;
  int example = 0;
  bool no_plot = false;
  bool keep_sums = false;

  auto* run = app.add_subcommand("run", "Fit a method and write its results");
  run->add_option("--method", method, "psa-s, psa-o, pca, power-pca or logratio-pca");
  run->add_option("--input", input, "CSV of compositions, one row per sample");
  run->add_option("--meta", config.meta, "Non-numeric columns kept as row metadata")->delimiter(',');
  run->add_option("--example", example, "Use synthetic example 1 or 2 instead of --input");
  run->add_option("--seed", config.seed, "Seed for --example");
  run->add_option("--sizes", config.cluster_sizes, "Cluster sizes for --example")->delimiter(',');
  run->add_option("--out", config.out_dir, "Output directory");
  run->add_option("--grid", config.grid_points, "Grid points over alpha (psa-o)");
  run->add_flag("--refine", config.refine, "Golden-section refinement of alpha (psa-o)");
  run->add_option("--exponent", config.exponent, "Power exponent (power-pca)");
  run->add_option("--transform", config.log_ratio, "clr, alr or ilr (logratio-pca)");
  run->add_option("--alr-reference", config.alr_reference, "0-based alr divisor column, -1 for the last");
  run->add_option("--zero-factor", config.zero_factor, "Zeros become factor * smallest nonzero entry");
  run->add_flag("--no-renormalize", keep_sums, "Skip rescaling rows after zero replacement");
  run->add_flag("--no-plot", no_plot, "Do not write ternary.svg");
  run->add_option("--colour-by", config.colour_by, "Metadata column used to colour points");
  run->add_option("--manifest", manifest, "Repeat the run recorded in a manifest.json");

  std::string synth_out;
  int synth_example = 1;
  std::uint64_t synth_seed = 42;
  std::vector<int> synth_sizes;
  auto* synth = app.add_subcommand("synth", "Write a simulated dataset as CSV");
  synth->add_option("--example", synth_example, "1 (three parts) or 2 (three noise parts appended)");
  synth->add_option("--seed", synth_seed, "Random seed");
  synth->add_option("--sizes", synth_sizes, "Cluster sizes, default 5,10,10,5")->delimiter(',');
  synth->add_option("--out", synth_out, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code_for(ErrorClass::Parse);
  }

  if (synth->parsed()) {
    try {
      cli::write_synthetic(synth_example, synth_seed, synth_out, synth_sizes);
      return 0;
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return exit_code_for(e.error_class());
    }
  }

  try {
    if (!manifest.empty()) {
      const std::string out_dir = run->count("--out") ? config.out_dir : std::string();
      config = cli::config_from_manifest(manifest);
      if (!out_dir.empty()) config.out_dir = out_dir;
    } else {
      config.method = cli::method_from_string(method);
      if (!input.empty()) config.input = input;
      if (example != 0) config.synth_example = example;
      config.plot = !no_plot;
      config.renormalize_after_replacement = !keep_sums;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.error_class());
  }
  return cli::run(config, std::cerr);
}
