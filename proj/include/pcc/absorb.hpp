#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pcc/errors.hpp"
#include "pcc/graph.hpp"

namespace pcc {

/// An edge xy to be absorbed.
struct D1Element {
  Vertex x;
  Vertex y;
};

/// The ends x1 y1 ... x2 y2 of an odd path to be absorbed.
struct D2Element {
  Vertex x1;
  Vertex y1;
  Vertex x2;
  Vertex y2;
};

using Element = std::variant<D1Element, D2Element>;

/// The element an odd path presents to an absorber: D1 for a single edge, otherwise
/// D2 built from its first two and last two vertices. The path is read X-first.
Element element_of(const AlternatingWalk& odd_path);
/// The path reversed if needed so that it starts in X.
AlternatingWalk x_first(const AlternatingWalk& odd_path);

class InvalidParams : public Error {
 public:
  using Error::Error;
};

struct AbsorberParams {
  double epsilon = 1.0 / 3.0;
  std::optional<double> gamma;           // default 16 epsilon^2 / 9
  std::optional<double> p;               // default gamma / (32 n (n-1)^2)
  std::optional<double> expected_draws;  // overrides p with expected_draws / (n^2 (n-1)^2)
  int max_rounds = 200;
  bool engineering_mode = false;
  double size_threshold = 0;      // engineering mode: largest accepted family
  double coverage_threshold = 0;  // engineering mode: absorbers required per element
  int min_family_size = 1;
  int short_max_length = 0;  // engineering mode: longest target for the greedy regime
  int retries = 20;
  std::uint64_t seed = 0;

  double gamma_value() const;
  double probability(int n) const;
  double size_limit(int n) const;
  double coverage_limit(int n) const;
  int short_limit(int n) const;
  /// Throws InvalidParams.
  void validate() const;
  /// Sets one key (epsilon, gamma, p, expected_draws, max_rounds, engineering,
  /// size_threshold, coverage_threshold, min_family_size, short_max_length, retries, seed).
  void set(const std::string& key, const std::string& value);
  std::string to_text() const;
};

/// Flat `key=value` lines; '#' comments and blank lines ignored.
AbsorberParams parse_params(std::istream& in, AbsorberParams base = {});
AbsorberParams read_params(const std::filesystem::path& path, AbsorberParams base = {});

/// P = x'y'x''y'' is PC, avoids x and y, and x'y' x y x''y'' is PC.
bool is_absorbing_d1(const ColoredBipartiteGraph& g, const AlternatingWalk& p, const D1Element& e);
/// P is PC, avoids the four element vertices, and x'y'x1y1 and y''x''y2x2 are PC.
bool is_absorbing_d2(const ColoredBipartiteGraph& g, const AlternatingWalk& p, const D2Element& e);
bool is_absorbing(const ColoredBipartiteGraph& g, const AlternatingWalk& p, const Element& e);

/// x'y' . path . x''y'' for a PC path x1 y1 ... xl yl (l >= 2) and an absorber A of its ends.
/// Throws OverlapError or NotAbsorbing.
AlternatingWalk insert_element(const ColoredBipartiteGraph& g, const AlternatingWalk& path, const AlternatingWalk& a);

/// Exact number of absorbing 4-vertex paths over all ordered (x', y', x'', y'').
std::uint64_t count_absorbing_paths(const ColoredBipartiteGraph& g, const Element& e);

/// 3 * min_color_degree >= 2n + 6.
bool linking_hypothesis_holds(const ColoredBipartiteGraph& g);

struct LinkingEdge {
  Vertex x;
  Vertex y;
  bool hypothesis_holds = false;
};

/// Lowest-index edge xy (x != x1, x2; y != y1, y2; both outside `blocked`) making
/// x1 y1 x y x2 y2 PC. Throws NoLinkingEdge if there is none.
LinkingEdge find_linking_edge(const ColoredBipartiteGraph& g, const D2Element& e, const VertexSet* blocked = nullptr);
int count_linking_edges(const ColoredBipartiteGraph& g, const D2Element& e);

struct AbsorbingFamily {
  std::vector<AlternatingWalk> paths;
  AbsorberParams params;
};

struct SampleStats {
  int round = 0;
  int drawn = 0;
  int family_size = 0;
  int min_coverage = 0;
};

class ResampleBudgetExhausted : public Error {
 public:
  ResampleBudgetExhausted(const std::string& what, SampleStats best) : Error(what), best_(best) {}
  const SampleStats& best() const { return best_; }

 private:
  SampleStats best_;
};

/// Bounded resampling: each round draws every candidate 3-path independently with
/// probability p, keeps a vertex-disjoint PC subfamily, and accepts it if the size and
/// per-element coverage thresholds hold. Candidates touching `blocked` are discarded.
AbsorbingFamily sample_absorbing_family(const ColoredBipartiteGraph& g, const std::vector<Element>& elems,
                                        const AbsorberParams& params, const VertexSet* blocked = nullptr,
                                        SampleStats* stats = nullptr);

/// PC cycle F1 link1 F2 link2 ... Ff linkf with the family paths kept in forward order.
struct AbsorbingCycle {
  AlternatingWalk cycle;
  std::vector<AlternatingWalk> family;
};

/// Throws LinkFailure if some pair of consecutive family paths cannot be linked.
AbsorbingCycle build_absorbing_cycle(const ColoredBipartiteGraph& g, const AbsorbingFamily& family,
                                     const VertexSet* blocked = nullptr);

class MatchingDeficient : public Error {
 public:
  MatchingDeficient(const std::string& what, std::vector<int> paths, std::vector<int> absorbers)
      : Error(what), paths_(std::move(paths)), absorbers_(std::move(absorbers)) {}
  /// Indices into R violating Hall's condition and their joint absorber neighborhood.
  const std::vector<int>& paths() const { return paths_; }
  const std::vector<int>& absorbers() const { return absorbers_; }

 private:
  std::vector<int> paths_;
  std::vector<int> absorbers_;
};

/// Splices every odd path of `r` into a distinct matched absorber of `c`.
/// Throws PreconditionViolated on malformed input, MatchingDeficient, SpliceInvariantViolated.
AlternatingWalk absorb_paths(const ColoredBipartiteGraph& g, const AbsorbingCycle& c,
                             const std::vector<AlternatingWalk>& r);

class RegimeFailure : public Error {
 public:
  RegimeFailure(std::string stage, const std::string& cause)
      : Error(stage + ": " + cause), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

enum class Regime : std::uint8_t { FourCycle, Greedy, Absorbing };
std::string to_string(Regime r);

struct EvenCycleResult {
  AlternatingWalk cycle;
  Regime regime = Regime::Greedy;
  int attempts = 1;
};

/// PC cycle of exactly `target_length` vertices through u. Throws RegimeFailure.
EvenCycleResult find_pc_even_cycle_through(const ColoredBipartiteGraph& g, const Vertex& u, int target_length,
                                           const AbsorberParams& params);

}  // namespace pcc
