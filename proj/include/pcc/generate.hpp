#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "pcc/graph.hpp"

namespace pcc {

/// Deterministic 64-bit generator that can hand out independent child streams.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : state_(seed), engine_(mix(seed)) {}

  /// Child stream whose sequence depends only on this stream's seed and `stream`.
  SplitRng split(std::uint64_t stream) const { return SplitRng(mix(state_ ^ mix(stream + 0x9e3779b97f4a7c15ULL))); }

  std::mt19937_64& engine() { return engine_; }
  /// Uniform integer in [lo, hi].
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
  std::mt19937_64 engine_;
};

enum class GenMode { Latin, Rainbow, Monochromatic, RandomMinDegree, AdversarialStar };

std::string to_string(GenMode mode);
/// Accepts latin, rainbow, mono|monochromatic, random, star.
GenMode parse_gen_mode(const std::string& text);

struct GenSpec {
  int n = 2;
  GenMode mode = GenMode::Latin;
  std::uint64_t seed = 0;
  int delta = 1;      // random_min_degree: target minimum color degree
  int palette = 1;    // random_min_degree: palette size q
  int star_size = 1;  // adversarial_star: s
};

/// Throws PreconditionViolated if the spec's invariants fail.
void validate(const GenSpec& spec);

/// Pure function of `spec`. random_min_degree throws GenerationFailure if the final
/// coloring misses the target (cannot happen for palette >= delta).
ColoredBipartiteGraph generate(const GenSpec& spec);

}  // namespace pcc
