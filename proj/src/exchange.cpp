#include "pcc/exchange.hpp"

#include <algorithm>

#include "pcc/errors.hpp"
#include "pcc/verify.hpp"

namespace pcc {
namespace {

enum class Role : std::uint8_t { First, Second };

// Inclusive run of P positions walked from `from` to `to` (either direction).
struct Piece {
  int from;
  int to;
  int size() const { return std::abs(to - from) + 1; }
};

struct Construction {
  std::string name;
  std::vector<std::vector<Piece>> cycles;
  int leftover = -1;
};

std::vector<int> expand(const std::vector<Piece>& pieces) {
  std::vector<int> out;
  for (const auto& piece : pieces) {
    const int dir = piece.to >= piece.from ? 1 : -1;
    for (int pos = piece.from;; pos += dir) {
      out.push_back(pos);
      if (pos == piece.to) break;
    }
  }
  return out;
}

// The roles a left vertex may play against y, most specific first: the second
// (predecessor-labelled) role, then the first (successor-labelled) one.
std::vector<Role> x_roles(const PathView& p, std::uint8_t flags, int x, int y) {
  std::vector<Role> roles;
  const Color cxy = p.color(x, y);
  if ((flags & RotationSets::kSecond) && cxy != p.step(x - 1)) roles.push_back(Role::Second);
  if ((flags & RotationSets::kFirst) && cxy != p.step(x)) roles.push_back(Role::First);
  return roles;
}

std::vector<Role> y_roles(const PathView& p, std::uint8_t flags, int x, int y) {
  std::vector<Role> roles;
  const Color cxy = p.color(x, y);
  if ((flags & RotationSets::kSecond) && cxy != p.step(y - 1)) roles.push_back(Role::Second);
  if ((flags & RotationSets::kFirst) && cxy != p.step(y)) roles.push_back(Role::First);
  return roles;
}

// Even |P|: cycles covering all of P. i = position of x, j = position of y, K = last position.
std::optional<Construction> even_construction(Role rx, Role ry, int i, int j, int K) {
  const bool before = i < j;
  if (rx == Role::First && ry == Role::First) {
    if (before) return Construction{"C1+C2", {{{0, i - 1}}, {{i, j - 1}, {K, j}}}};
    return Construction{"C3", {{{0, j - 1}, {K, i}, {j, i - 1}}}};
  }
  if (rx == Role::First && ry == Role::Second) {
    if (before) return Construction{"C1+C6+C7", {{{0, i - 1}}, {{i, j}}, {{j + 1, K}}}};
    return Construction{"C8", {{{0, j}, {i, K}, {j + 1, i - 1}}}};
  }
  if (rx == Role::Second && ry == Role::First) {
    if (before) return Construction{"C10", {{{0, i}, {j, K}, {j - 1, i + 1}}}};
    return Construction{"C11+C12", {{{0, j - 1}, {K, i + 1}}, {{j, i}}}};
  }
  if (before) return Construction{"C7+C13", {{{j + 1, K}}, {{0, i}, {j, i + 1}}}};
  return Construction{"C14", {{{0, j}, {i, j + 1}, {K, i + 1}}}};
}

// Odd |P|: cycles covering P minus one leftover vertex, which is later joined to y*.
std::optional<Construction> odd_construction(Role rx, Role ry, int i, int j, int K) {
  const bool before = i < j;
  if (rx == Role::First && ry == Role::First) {
    if (before) return Construction{"H1", {{{0, i - 1}}, {{i, i}, {j, K}, {j - 2, i + 1}}}, j - 1};
    return Construction{"H2", {{{0, j - 2}, {K, i}, {j, i - 1}}}, j - 1};
  }
  if (rx == Role::First && ry == Role::Second) {
    if (before) return Construction{"H4", {{{0, i - 1}}, {{i, j}}, {{j + 2, K}}}, j + 1};
    // The stretch between y^{++} and x^- must hold an edge (d_P(x, y) != 3).
    if (i - 1 <= j + 2) return std::nullopt;
    return Construction{"H5", {{{0, j}, {i, K}, {j + 2, i - 1}}}, j + 1};
  }
  if (rx == Role::Second && ry == Role::First) {
    if (before) {
      if (j - 2 <= i + 1) return std::nullopt;
      return Construction{"H7", {{{0, i}, {j, K}, {j - 2, i + 1}}}, j - 1};
    }
    return Construction{"H8", {{{0, j - 2}, {K, i + 1}}, {{j, i}}}, j - 1};
  }
  if (before) return Construction{"H9", {{{0, i}, {j, i + 1}}, {{j + 2, K}}}, j + 1};
  return Construction{"H10", {{{0, j}, {i, j + 2}, {K, i + 1}}}, j + 1};
}

// Positions in range, every cycle at least max(t, 4) long, and the pieces partition
// P minus the leftover vertex.
bool shape_ok(const Construction& c, int k, int t) {
  std::vector<int> hits(static_cast<std::size_t>(k), 0);
  for (const auto& cycle : c.cycles) {
    int length = 0;
    for (const auto& piece : cycle) {
      if (piece.from < 0 || piece.to < 0 || piece.from >= k || piece.to >= k) return false;
      length += piece.size();
    }
    if (length < std::max(t, 4)) return false;
    for (int pos : expand(cycle)) ++hits[pos];
  }
  for (int pos = 0; pos < k; ++pos)
    if (hits[pos] != (pos == c.leftover ? 0 : 1)) return false;
  return true;
}

struct Chosen {
  Construction construction;
  ExchangeRecord record;
};

std::optional<Chosen> choose(const PathView& p, const RotationStructures& rs, ExchangePair pair, int t) {
  const int k = p.size();
  const int i = pair.x;
  const int j = pair.y;
  if (i <= 0 || j <= 0 || i >= k - 1 || j >= k - 1) return std::nullopt;
  const std::uint8_t fx = rs.rotation.left[i];
  const std::uint8_t fy = rs.rotation.right[j];
  if (fx == 0 || fy == 0) return std::nullopt;
  const bool even = rs.parity == Parity::Even;
  const int K = k - 1;

  ExchangeRecord record{rs.parity, membership_case(fx, fy), {}, pair};
  auto accept = [&](std::optional<Construction> c) -> std::optional<Chosen> {
    if (!c || !shape_ok(*c, k, t)) return std::nullopt;
    record.construction = c->name;
    return Chosen{std::move(*c), record};
  };

  // Path-adjacent pairs use the endpoint chords only; the edge xy itself is not needed.
  if (i == j + 1) {
    if (!(fx & RotationSets::kFirst) || !(fy & RotationSets::kSecond)) return std::nullopt;
    if (even) return accept(Construction{"C4+C5", {{{0, j}}, {{i, K}}}});
    return accept(Construction{"H3", {{{0, j}}, {{i + 1, K}}}, i});
  }
  if (i == j - 1) {
    if (!(fx & RotationSets::kSecond) || !(fy & RotationSets::kFirst)) return std::nullopt;
    if (even) return accept(Construction{"C9", {{{0, i}, {K, j}}}});
    return accept(Construction{"H6", {{{0, j - 2}, {K, j}}}, i});
  }

  for (Role rx : x_roles(p, fx, i, j))
    for (Role ry : y_roles(p, fy, i, j)) {
      auto c = even ? even_construction(rx, ry, i, j, K) : odd_construction(rx, ry, i, j, K);
      if (auto chosen = accept(std::move(c))) return chosen;
    }
  return std::nullopt;
}

AlternatingWalk to_cycle(const PathView& p, const std::vector<Piece>& pieces) {
  std::vector<Vertex> vs;
  for (int pos : expand(pieces)) vs.push_back(p.graph().vertex(p.id(pos)));
  return AlternatingWalk::cycle(std::move(vs));
}

std::string describe(const ExchangeRecord& r) {
  return std::string(r.parity == Parity::Even ? "even" : "odd") + " case " + std::to_string(r.case_id) + " via " +
         r.construction + " at positions (" + std::to_string(r.pair.x) + "," + std::to_string(r.pair.y) + ")";
}

VertexSet vertices_of(const ColoredBipartiteGraph& g, const PathCycleSystem& h) {
  VertexSet set(g.vertex_count());
  for (const auto& v : h.path.vertices) set.insert(g.id(v));
  for (const auto& c : h.cycles)
    for (const auto& v : c.vertices) set.insert(g.id(v));
  return set;
}

}  // namespace

int membership_case(std::uint8_t x_flags, std::uint8_t y_flags) {
  auto cx = classify(x_flags);
  auto cy = classify(y_flags);
  if (!cx || !cy) return 0;
  static constexpr int table[3][3] = {{1, 2, 5}, {3, 4, 6}, {7, 8, 9}};
  return table[static_cast<int>(*cx)][static_cast<int>(*cy)];
}

std::optional<EvenExchange> apply_even_exchange(const ColoredBipartiteGraph& g, const PathCycleSystem& h,
                                                const RotationStructures& rs, ExchangePair pair, int t) {
  if (rs.parity != Parity::Even) throw PreconditionViolated("even exchange needs a path of even order");
  const PathView p(g, h.path);
  auto chosen = choose(p, rs, pair, t);
  if (!chosen) return std::nullopt;

  EvenExchange out;
  out.record = chosen->record;
  out.factor.cycles = h.cycles;
  for (const auto& spec : chosen->construction.cycles) out.factor.cycles.push_back(to_cycle(p, spec));

  const auto report = verify_two_factor_on(g, out.factor, t, vertices_of(g, h));
  if (!report.passed())
    throw SurgeryInvariantViolated(describe(out.record) + " produced an invalid factor:\n" + report.to_text());
  return out;
}

std::optional<EvenExchange> apply_even_exchange(const ColoredBipartiteGraph& g, const PathCycleSystem& h,
                                                ExchangePair pair, int t) {
  return apply_even_exchange(g, h, compute_rotation_structures(g, h, t), pair, t);
}

std::optional<OddExchange> apply_odd_exchange(const ColoredBipartiteGraph& g, const PathCycleSystem& h,
                                              const RotationStructures& rs, ExchangePair pair, int t,
                                              const Vertex& y_star) {
  if (rs.parity != Parity::Odd) throw PreconditionViolated("odd exchange needs a path of odd order");
  const VertexSet before = vertices_of(g, h);
  if (!g.valid(y_star) || before.contains(g.id(y_star)) || y_star.side == h.path.vertices.front().side)
    throw NoOutsideVertex("y* must be an uncovered vertex opposite the path endpoints, got " + to_string(y_star));
  const PathView p(g, h.path);
  auto chosen = choose(p, rs, pair, t);
  if (!chosen) return std::nullopt;

  OddExchange out;
  out.record = chosen->record;
  out.system.cycles = h.cycles;
  for (const auto& spec : chosen->construction.cycles) out.system.cycles.push_back(to_cycle(p, spec));
  out.system.path = AlternatingWalk::path({g.vertex(p.id(chosen->construction.leftover)), y_star});

  auto report = verify_path_cycle_system(g, out.system, t);
  VertexSet after = vertices_of(g, out.system);
  VertexSet expected = before;
  expected.insert(g.id(y_star));
  bool same = after.size() == expected.size();
  for (int id = 0; same && id < g.vertex_count(); ++id) same = after.contains(id) == expected.contains(id);
  report.add("vertex_set", same, same ? "" : "result does not cover V(H) + y*");
  if (!report.passed())
    throw SurgeryInvariantViolated(describe(out.record) + " produced an invalid system:\n" + report.to_text());
  return out;
}

std::optional<OddExchange> apply_odd_exchange(const ColoredBipartiteGraph& g, const PathCycleSystem& h,
                                              ExchangePair pair, int t, const Vertex& y_star) {
  return apply_odd_exchange(g, h, compute_rotation_structures(g, h, t), pair, t, y_star);
}

}  // namespace pcc
