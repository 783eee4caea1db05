#pragma once

#include <optional>
#include <string>

#include "pcc/graph.hpp"
#include "pcc/rotation.hpp"

namespace pcc {

/// Which surgery produced an exchange result.
///
/// `case_id` (1..9) is the membership class of the pair: rows first-only / second-only /
/// both for x, columns the same for y, numbered
///   1 (F,F) 2 (F,S) 3 (S,F) 4 (S,S) 5 (F,B) 6 (S,B) 7 (B,F) 8 (B,S) 9 (B,B).
/// `construction` names the assembled cycles, e.g. "C1+C6+C7" (even) or "H4" (odd).
struct ExchangeRecord {
  Parity parity = Parity::Even;
  int case_id = 0;
  std::string construction;
  ExchangePair pair;
};

int membership_case(std::uint8_t x_flags, std::uint8_t y_flags);

struct EvenExchange {
  TwoFactor factor;  // spans V(H)
  ExchangeRecord record;
};

struct OddExchange {
  PathCycleSystem system;  // V(H) plus y_star
  ExchangeRecord record;
};

/// Even |P|: turns H into a PC 2^{(t)}-factor of G[V(H)] using the pair (x, y) of P positions.
/// Constructions are tried in listed order; the first whose color, order, and length
/// preconditions hold is assembled. Returns nullopt if none applies to this pair.
/// Throws SurgeryInvariantViolated if an applicable construction yields an invalid factor.
std::optional<EvenExchange> apply_even_exchange(const ColoredBipartiteGraph& g, const PathCycleSystem& h,
                                                const RotationStructures& rs, ExchangePair pair, int t);
std::optional<EvenExchange> apply_even_exchange(const ColoredBipartiteGraph& g, const PathCycleSystem& h,
                                                ExchangePair pair, int t);

/// Odd |P|: builds a 1^{(t)}-path-cycle on V(H) + y_star whose path is a single edge to y_star.
/// Throws NoOutsideVertex if y_star is on H or on the side of the path endpoints.
std::optional<OddExchange> apply_odd_exchange(const ColoredBipartiteGraph& g, const PathCycleSystem& h,
                                              const RotationStructures& rs, ExchangePair pair, int t,
                                              const Vertex& y_star);
std::optional<OddExchange> apply_odd_exchange(const ColoredBipartiteGraph& g, const PathCycleSystem& h,
                                              ExchangePair pair, int t, const Vertex& y_star);

}  // namespace pcc
