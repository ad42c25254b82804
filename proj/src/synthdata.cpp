#include "subsimplex/synthdata.hpp"

#include "subsimplex/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace subsimplex::synth {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t stream) : engine_(splitmix64(seed + stream)) {}

double NormalStream::uniform() {
  // 53 random bits in [0, 1)
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double NormalStream::normal(double mean, double sd) {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mean + sd * z;
}

std::vector<ClusterSpec> example1_clusters(double sd) {
  auto make = [&](double a, double b, double c, int count) {
    return ClusterSpec{Composition::from(Eigen::Vector3d(a, b, c)), count, sd};
  };
  return {make(0.05, 0.05, 0.9, 5), make(0.05, 0.9, 0.05, 10), make(0.9, 0.05, 0.05, 10),
          make(0.25, 0.7, 0.05, 5)};
}

Dataset generate_clusters(const std::vector<ClusterSpec>& clusters, std::uint64_t seed) {
  if (clusters.empty()) throw ConfigError("no clusters to draw from");
  const Index parts = clusters.front().center.size();
  Index total = 0;
  for (const auto& c : clusters) {
    if (c.count < 1) throw ConfigError("cluster size must be at least one");
    if (!(c.sd >= 0.0)) throw ConfigError("cluster standard deviation must be nonnegative");
    if (c.center.size() != parts) throw DimensionMismatch("cluster centres differ in length");
    total += c.count;
  }

  NormalStream rng(seed, 0);
  Dataset out;
  out.values.resize(total, parts);
  out.column_labels = default_part_labels(parts);
  MetaColumn labels{"cluster", {}};

  Index row = 0;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const ClusterSpec& spec = clusters[c];
    for (int k = 0; k < spec.count; ++k, ++row) {
      VectorXd x(parts);
      do {
        for (Index p = 0; p < parts; ++p) x[p] = std::max(0.0, rng.normal(spec.center[p], spec.sd));
      } while (x.sum() == 0.0);
      out.values.row(row) = (x / x.sum()).transpose();
      labels.values.push_back(std::to_string(c + 1));
    }
  }
  out.metadata.push_back(std::move(labels));
  return out;
}

Dataset generate_example1(std::uint64_t seed) { return generate_clusters(example1_clusters(), seed); }

Dataset append_noise_parts(const Dataset& base, const NoiseSpec& noise, std::uint64_t seed) {
  if (noise.columns < 0) throw ConfigError("noise column count must be nonnegative");
  if (!(noise.sd >= 0.0)) throw ConfigError("noise standard deviation must be nonnegative");
  NormalStream rng(seed, 1);
  const Index parts = base.parts();
  Dataset out = base;
  out.values.resize(base.rows(), parts + noise.columns);
  for (Index s = 0; s < base.rows(); ++s) {
    VectorXd x(parts + noise.columns);
    x.head(parts) = base.values.row(s).transpose();
    for (Index p = 0; p < noise.columns; ++p) x[parts + p] = std::max(0.0, rng.normal(0.0, noise.sd));
    out.values.row(s) = (x / x.sum()).transpose();
  }
  out.column_labels = base.column_labels;
  for (Index p = 0; p < noise.columns; ++p) out.column_labels.push_back("V" + std::to_string(parts + p + 1));
  return out;
}

Dataset generate_example2(std::uint64_t seed) { return append_noise_parts(generate_example1(seed), NoiseSpec{}, seed); }

}  // namespace subsimplex::synth
