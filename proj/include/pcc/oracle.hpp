#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pcc/errors.hpp"
#include "pcc/graph.hpp"

namespace pcc {

/// Exact depth-first search for a PC cycle of length k (even, 4 <= k <= 2n) through u.
/// A nonzero `node_budget` bounds the number of search nodes; exceeding it throws
/// SearchBudgetExceeded.
std::optional<AlternatingWalk> find_pc_cycle_through(const ColoredBipartiteGraph& g, const Vertex& u, int k,
                                                     std::uint64_t node_budget = 0);

class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// PC 4-cycle through u by direct scan.
std::optional<AlternatingWalk> find_pc_4cycle_through(const ColoredBipartiteGraph& g, const Vertex& u);

inline constexpr int kDefaultFactorCap = 7;
inline constexpr int kDefaultPancyclicCap = 8;

/// Every PC 2-factor whose cycles all have length >= t, each listed once.
/// Throws SideSizeTooLarge when n > cap.
std::vector<TwoFactor> enumerate_pc_two_factors(const ColoredBipartiteGraph& g, int t,
                                                int cap = kDefaultFactorCap);

/// Same search, stopping at the first factor.
bool has_pc_two_factor(const ColoredBipartiteGraph& g, int t, int cap = kDefaultFactorCap);

/// Witnesses per vertex and even length; `std::nullopt` marks a cell with no PC cycle.
struct PancyclicReport {
  int n = 0;
  // cells[vertex id][(k - 4) / 2]
  std::vector<std::vector<std::optional<AlternatingWalk>>> cells;
  bool complete = true;  // false when the search stopped early

  bool verdict() const;
  int witnessed() const;
  int cell_count() const;
  const std::optional<AlternatingWalk>& cell(int vertex_id, int k) const { return cells[vertex_id][(k - 4) / 2]; }
};

class BudgetExhausted : public Error {
 public:
  BudgetExhausted(PancyclicReport partial)
      : Error("pancyclicity search budget exhausted"), partial_(std::move(partial)) {}
  const PancyclicReport& partial() const { return partial_; }

 private:
  PancyclicReport partial_;
};

/// Exhaustive check. Throws SideSizeTooLarge when n > cap and `node_budget` is zero;
/// with a budget, throws BudgetExhausted carrying the cells finished so far.
PancyclicReport verify_vertex_even_pancyclic(const ColoredBipartiteGraph& g, int cap = kDefaultPancyclicCap,
                                             std::uint64_t node_budget = 0);

}  // namespace pcc
