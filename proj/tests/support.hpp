#pragma once

// Independent reference computations for the tests. Nothing here calls the library's
// own verification code, so agreement between the two is meaningful.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pcc/generate.hpp"
#include "pcc/graph.hpp"

namespace testing {

using pcc::AlternatingWalk;
using pcc::Color;
using pcc::ColoredBipartiteGraph;
using pcc::Side;
using pcc::Vertex;

inline Color edge_color(const ColoredBipartiteGraph& g, const Vertex& a, const Vertex& b) {
  const Vertex& x = a.side == Side::X ? a : b;
  const Vertex& y = a.side == Side::X ? b : a;
  return g.matrix()[static_cast<std::size_t>(x.index) * g.n() + y.index];
}

/// Edge colors along the walk, including the closing edge of a cycle.
inline std::vector<Color> colors_along(const ColoredBipartiteGraph& g, const AlternatingWalk& w) {
  std::vector<Color> out;
  const auto& v = w.vertices;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) out.push_back(edge_color(g, v[i], v[i + 1]));
  if (w.is_cycle() && v.size() >= 2) out.push_back(edge_color(g, v.back(), v.front()));
  return out;
}

inline bool naive_pc(const ColoredBipartiteGraph& g, const AlternatingWalk& w) {
  const auto c = colors_along(g, w);
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    if (c[i] == c[i + 1]) return false;
  if (w.is_cycle() && c.size() >= 2 && c.front() == c.back()) return false;
  return true;
}

inline bool simple_alternating(const AlternatingWalk& w, int n) {
  std::set<Vertex> seen;
  for (std::size_t i = 0; i < w.vertices.size(); ++i) {
    const Vertex& v = w.vertices[i];
    if (v.index < 0 || v.index >= n || !seen.insert(v).second) return false;
    if (i > 0 && w.vertices[i - 1].side == v.side) return false;
  }
  if (w.is_cycle()) return w.size() >= 4 && w.size() % 2 == 0;
  return true;
}

/// Sorted (x, y) edge list of a collection of cycles.
inline std::vector<std::pair<int, int>> edges_of(const std::vector<AlternatingWalk>& cycles) {
  std::vector<std::pair<int, int>> out;
  for (const auto& c : cycles) {
    const auto& v = c.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Vertex& a = v[i];
      const Vertex& b = v[(i + 1) % v.size()];
      out.emplace_back(a.side == Side::X ? a.index : b.index, a.side == Side::X ? b.index : a.index);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Edge subsets of K_{n,n} (n <= 4) that form a PC 2-factor with all cycles >= t,
/// found by checking degrees and walking the components.
inline std::set<std::vector<std::pair<int, int>>> subset_two_factors(const ColoredBipartiteGraph& g, int t) {
  const int n = g.n();
  const int m = n * n;
  std::set<std::vector<std::pair<int, int>>> out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (__builtin_popcount(mask) != 2 * n) continue;
    std::vector<std::vector<int>> adj(2 * n);
    for (int e = 0; e < m; ++e)
      if (mask >> e & 1u) {
        adj[e / n].push_back(n + e % n);
        adj[n + e % n].push_back(e / n);
      }
    if (std::any_of(adj.begin(), adj.end(), [](const auto& a) { return a.size() != 2; })) continue;
    auto col = [&](int a, int b) { return a < n ? g.color(a, b - n) : g.color(b, a - n); };
    bool ok = true;
    for (int v = 0; v < 2 * n && ok; ++v) ok = col(v, adj[v][0]) != col(v, adj[v][1]);
    std::vector<bool> seen(2 * n, false);
    for (int s = 0; s < 2 * n && ok; ++s) {
      if (seen[s]) continue;
      int len = 0, prev = -1, cur = s;
      do {
        seen[cur] = true;
        ++len;
        const int next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
        prev = cur;
        cur = next;
      } while (cur != s);
      ok = len >= t;
    }
    if (!ok) continue;
    std::vector<std::pair<int, int>> edges;
    for (int e = 0; e < m; ++e)
      if (mask >> e & 1u) edges.emplace_back(e / n, e % n);
    out.insert(edges);
  }
  return out;
}

/// Whether some edge subset of K_{n,n} (n <= 4) is a single PC k-cycle through u.
inline bool subset_cycle_exists(const ColoredBipartiteGraph& g, const Vertex& u, int k) {
  const int n = g.n();
  const int m = n * n;
  const int uid = u.side == Side::X ? u.index : n + u.index;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<std::vector<int>> adj(2 * n);
    for (int e = 0; e < m; ++e)
      if (mask >> e & 1u) {
        adj[e / n].push_back(n + e % n);
        adj[n + e % n].push_back(e / n);
      }
    if (adj[uid].size() != 2) continue;
    bool ok = true;
    for (const auto& a : adj) ok = ok && (a.empty() || a.size() == 2);
    if (!ok) continue;
    auto col = [&](int a, int b) { return a < n ? g.color(a, b - n) : g.color(b, a - n); };
    for (int v = 0; v < 2 * n && ok; ++v)
      if (adj[v].size() == 2) ok = col(v, adj[v][0]) != col(v, adj[v][1]);
    if (!ok) continue;
    int len = 0, prev = -1, cur = uid;
    do {
      ++len;
      const int next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
      prev = cur;
      cur = next;
    } while (cur != uid);
    if (len == k) return true;
  }
  return false;
}

inline ColoredBipartiteGraph random_graph(std::uint64_t seed, int n, int delta) {
  pcc::GenSpec spec;
  spec.n = n;
  spec.mode = pcc::GenMode::RandomMinDegree;
  spec.delta = delta;
  spec.palette = delta;
  spec.seed = seed;
  return pcc::generate(spec);
}

inline ColoredBipartiteGraph latin(int n) {
  pcc::GenSpec spec;
  spec.n = n;
  return pcc::generate(spec);
}

inline ColoredBipartiteGraph mono(int n) {
  pcc::GenSpec spec;
  spec.n = n;
  spec.mode = pcc::GenMode::Monochromatic;
  return pcc::generate(spec);
}

/// A path covering V(G) (even) or V(G) minus one Y vertex (odd), recolored so that the
/// path is PC and no endpoint has a compatible neighbor off the path. With no cycles,
/// such a system is stuck and its exchange digraph is well defined.
struct StuckState {
  ColoredBipartiteGraph g;
  pcc::PathCycleSystem h;
  Vertex y_star;
  int t = 3;
};

inline StuckState random_stuck_state(std::uint64_t seed, bool odd) {
  pcc::SplitRng rng(seed);
  const int n = rng.uniform(6, 14);
  const int t = rng.uniform(3, 5);
  const int q = rng.uniform(3, n);
  std::vector<Color> col(static_cast<std::size_t>(n) * n);
  for (auto& c : col) c = rng.uniform(0, q - 1);
  std::vector<int> xs(n), ys(n);
  for (int i = 0; i < n; ++i) xs[i] = ys[i] = i;
  std::shuffle(xs.begin(), xs.end(), rng.engine());
  std::shuffle(ys.begin(), ys.end(), rng.engine());
  const int k = odd ? 2 * n - 1 : 2 * n;
  std::vector<Vertex> pv;
  for (int p = 0; p < k; ++p) pv.push_back(p % 2 == 0 ? pcc::x_vertex(xs[p / 2]) : pcc::y_vertex(ys[p / 2]));
  auto cell = [&](const Vertex& a, const Vertex& b) -> Color& {
    const int i = a.side == Side::X ? a.index : b.index;
    const int j = a.side == Side::X ? b.index : a.index;
    return col[static_cast<std::size_t>(i) * n + j];
  };
  for (int p = 1; p + 1 < k; ++p)
    while (cell(pv[p - 1], pv[p]) == cell(pv[p], pv[p + 1])) cell(pv[p], pv[p + 1]) = rng.uniform(0, q - 1);
  const Vertex y_star = pcc::y_vertex(ys[n - 1]);
  if (odd) {
    cell(pv[0], y_star) = cell(pv[0], pv[1]);
    cell(pv[k - 1], y_star) = cell(pv[k - 1], pv[k - 2]);
  }
  StuckState s{ColoredBipartiteGraph(n, col), {}, y_star, t};
  s.h.path = AlternatingWalk::path(pv);
  return s;
}

}  // namespace testing
