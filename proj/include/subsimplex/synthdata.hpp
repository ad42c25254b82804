#pragma once

// Seeded generators for the two simulated studies: four Gaussian clusters in
// the 2-simplex, and the same data with pure-noise parts appended.
//
// Randomness comes from std::mt19937_64 (whose output sequence is fixed by
// the C++ standard) with our own uniform and Box-Muller normal draws, so a
// seed gives the same numbers with any standard library. Each consumer draws
// from its own stream: stream k is seeded with splitmix64(seed + k). Stream 0
// produces the cluster points and stream 1 the appended noise parts, which
// means the first parts of Example 2 are exactly the Example 1 draw.

#include "subsimplex/dataset.hpp"
#include "subsimplex/simplex_core.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace subsimplex::synth {

struct ClusterSpec {
  Composition center;
  int count = 1;
  double sd = 0.0;
};

/// Normal draws from a named stream of a seed.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream);
  double uniform();
  double normal(double mean, double sd);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Centres (0.05,0.05,0.9), (0.05,0.9,0.05), (0.9,0.05,0.05), (0.25,0.7,0.05)
/// with sizes 5, 10, 10, 5.
std::vector<ClusterSpec> example1_clusters(double sd = 0.04);

/// Centre plus isotropic noise per point, negatives set to zero, rows
/// rescaled to unit sum. Row metadata "cluster" holds the 1-based cluster id.
Dataset generate_clusters(const std::vector<ClusterSpec>& clusters, std::uint64_t seed);

Dataset generate_example1(std::uint64_t seed);

struct NoiseSpec {
  int columns = 3;
  double sd = 0.04;
};

/// Appends |N(0, sd^2)|-clipped noise parts to each row of `base` and rescales rows.
Dataset append_noise_parts(const Dataset& base, const NoiseSpec& noise, std::uint64_t seed);

Dataset generate_example2(std::uint64_t seed);

}  // namespace subsimplex::synth
