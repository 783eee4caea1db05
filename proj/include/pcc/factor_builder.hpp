#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pcc/exchange.hpp"
#include "pcc/graph.hpp"

namespace pcc {

enum class MoveKind : std::uint8_t {
  ReplaceSingleton,  // |P| = 1: P becomes an edge outside the cycles
  Extend,            // an endpoint grabs a vertex outside H
  Splice,            // an endpoint absorbs a whole cycle of H
};

struct Move {
  PathCycleSystem system;
  MoveKind kind = MoveKind::Extend;
};

/// One improving move, or nullopt when every color-compatible neighbor of both
/// endpoints already lies on P. Throws InvalidSystem if `h` is not a 1^{(t)}-system of `g`.
std::optional<Move> next_move(const ColoredBipartiteGraph& g, const PathCycleSystem& h, int t);
std::optional<PathCycleSystem> maximality_move(const ColoredBipartiteGraph& g, const PathCycleSystem& h, int t);

/// n >= 3t and 3 * min_color_degree >= 2n + 3t.
bool factor_hypotheses_hold(const ColoredBipartiteGraph& g, int t);

enum class StepKind : std::uint8_t { ReplaceSingleton, Extend, Splice, EvenExchange, OddExchange, Seed };
std::string to_string(StepKind kind);

struct BuilderStep {
  StepKind kind = StepKind::Extend;
  int h_size = 0;  // |H| after the step
  int p_size = 0;  // |P| after the step
  std::optional<ExchangeRecord> exchange;
};

struct BuildTrace {
  std::vector<BuilderStep> steps;
  /// |P| at every stuck state with even |P|.
  std::vector<int> stuck_even_path_sizes;
};

/// Where the builder stopped without a factor.
struct StuckReport {
  PathCycleSystem state;
  int path_size = 0;
  int left_vertices = 0;   // rotation vertices attached to u_1
  int right_vertices = 0;  // rotation vertices attached to u_k
  std::size_t arcs = 0;
  std::size_t two_cycles = 0;
  bool hypotheses_hold = false;
  std::string reason;

  std::string to_text() const;
};

using FactorResult = std::variant<TwoFactor, StuckReport>;

struct FactorOptions {
  /// Reject t > n/3. Turning this off lets the search run on small sides, where it
  /// carries no guarantee.
  bool enforce_side_bound = true;
};

/// Local search for a PC 2^{(t)}-factor: improving moves until stuck, then an exchange
/// on the first directed 2-cycle whose surgery applies. Throws PreconditionViolated
/// unless 3 <= t <= n/3.
FactorResult find_pc_2factor(const ColoredBipartiteGraph& g, int t, BuildTrace* trace = nullptr,
                             FactorOptions options = {});

using CoverResult = std::variant<std::vector<AlternatingWalk>, StuckReport>;

/// Spanning vertex-disjoint PC odd paths, one per cycle of a PC 2^{(t)}-factor.
CoverResult cover_by_pc_odd_paths(const ColoredBipartiteGraph& g, int t);

}  // namespace pcc
