#include "pcc/graph.hpp"

#include <algorithm>

#include "pcc/errors.hpp"

namespace pcc {

std::string to_string(const Vertex& v) {
  return (v.side == Side::X ? "x" : "y") + std::to_string(v.index);
}

ColoredBipartiteGraph::ColoredBipartiteGraph(int n, std::vector<Color> colors)
    : n_(n), colors_(std::move(colors)) {
  if (n <= 0) throw InvalidInstance("side size must be positive, got " + std::to_string(n));
  if (colors_.size() != static_cast<std::size_t>(n) * n)
    throw InvalidInstance("color matrix must have n*n entries");
  for (Color c : colors_)
    if (c < 0) throw InvalidInstance("colors must be non-negative");
}

ColoredBipartiteGraph ColoredBipartiteGraph::from_rows(const std::vector<std::vector<Color>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<Color> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) throw InvalidInstance("color matrix is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return ColoredBipartiteGraph(n, std::move(flat));
}

Color ColoredBipartiteGraph::color(const Vertex& a, const Vertex& b) const {
  return a.side == Side::X ? color(a.index, b.index) : color(b.index, a.index);
}

ColoredBipartiteGraph ColoredBipartiteGraph::induced(const std::vector<int>& xs,
                                                     const std::vector<int>& ys) const {
  if (xs.size() != ys.size()) throw InvalidInstance("induced subgraph must stay balanced");
  const int m = static_cast<int>(xs.size());
  std::vector<Color> sub(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) sub[static_cast<std::size_t>(i) * m + j] = color(xs[i], ys[j]);
  return ColoredBipartiteGraph(m, std::move(sub));
}

ColoredBipartiteGraph ColoredBipartiteGraph::transposed() const {
  std::vector<Color> t(colors_.size());
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t[static_cast<std::size_t>(j) * n_ + i] = color(i, j);
  return ColoredBipartiteGraph(n_, std::move(t));
}

bool AlternatingWalk::contains(const Vertex& v) const {
  return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

std::size_t PathCycleSystem::order() const {
  std::size_t total = path.size();
  for (const auto& c : cycles) total += c.size();
  return total;
}

std::size_t TwoFactor::min_cycle_length() const {
  std::size_t best = 0;
  for (const auto& c : cycles)
    if (best == 0 || c.size() < best) best = c.size();
  return best;
}

std::vector<Edge> edge_set(const std::vector<AlternatingWalk>& cycles) {
  std::vector<Edge> edges;
  for (const auto& c : cycles) {
    const auto& vs = c.vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const Vertex& a = vs[i];
      const Vertex& b = vs[(i + 1) % vs.size()];
      if (a.side == b.side) continue;
      edges.push_back(a.side == Side::X ? Edge{a.index, b.index} : Edge{b.index, a.index});
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

int VertexSet::size() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), true));
}

}  // namespace pcc
