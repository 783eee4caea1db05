#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace pcc {

/// Colors are opaque; only equality matters.
using Color = std::int32_t;

/// Label used for vertices that carry no real edge color (a color absent from every graph).
inline constexpr Color kFreshColor = -1;

enum class Side : std::uint8_t { X = 0, Y = 1 };

constexpr Side opposite(Side s) { return s == Side::X ? Side::Y : Side::X; }

struct Vertex {
  Side side = Side::X;
  int index = 0;

  friend constexpr auto operator<=>(const Vertex&, const Vertex&) = default;
};

constexpr Vertex x_vertex(int i) { return {Side::X, i}; }
constexpr Vertex y_vertex(int j) { return {Side::Y, j}; }

std::string to_string(const Vertex& v);

/// Complete balanced bipartite graph K_{n,n} with an arbitrary edge coloring.
/// Entry (i, j) of the color matrix is the color of edge x_i y_j.
///
/// Algorithms address vertices either as `Vertex` or by a dense id in [0, 2n):
/// x_i has id i and y_j has id n + j.
class ColoredBipartiteGraph {
 public:
  ColoredBipartiteGraph() = default;
  /// Throws InvalidInstance unless `colors` is n*n with non-negative entries.
  ColoredBipartiteGraph(int n, std::vector<Color> colors);
  static ColoredBipartiteGraph from_rows(const std::vector<std::vector<Color>>& rows);

  int n() const { return n_; }
  int vertex_count() const { return 2 * n_; }

  Color color(int i, int j) const { return colors_[static_cast<std::size_t>(i) * n_ + j]; }
  /// Color of the edge between two vertices on opposite sides.
  Color color(const Vertex& a, const Vertex& b) const;
  /// Same as above on dense ids. Both ids must be on opposite sides.
  Color color_by_id(int a, int b) const {
    return a < n_ ? color(a, b - n_) : color(b, a - n_);
  }

  bool valid(const Vertex& v) const { return v.index >= 0 && v.index < n_; }
  int id(const Vertex& v) const { return v.side == Side::X ? v.index : n_ + v.index; }
  Vertex vertex(int id) const { return id < n_ ? x_vertex(id) : y_vertex(id - n_); }
  Side side_of(int id) const { return id < n_ ? Side::X : Side::Y; }

  const std::vector<Color>& matrix() const { return colors_; }

  /// Induced subgraph on the given X and Y index lists (must have equal length).
  ColoredBipartiteGraph induced(const std::vector<int>& xs, const std::vector<int>& ys) const;

  /// Swaps the roles of X and Y.
  ColoredBipartiteGraph transposed() const;

  friend bool operator==(const ColoredBipartiteGraph&, const ColoredBipartiteGraph&) = default;

 private:
  int n_ = 0;
  std::vector<Color> colors_;
};

enum class WalkKind : std::uint8_t { Path, Cycle };

/// A path or cycle given by its vertex sequence. For cycles the edge between the
/// last and first vertex is implicit. Size conventions: a path's size is its vertex
/// count; a cycle's length is its vertex count (= edge count).
struct AlternatingWalk {
  std::vector<Vertex> vertices;
  WalkKind kind = WalkKind::Path;

  static AlternatingWalk path(std::vector<Vertex> vs) { return {std::move(vs), WalkKind::Path}; }
  static AlternatingWalk cycle(std::vector<Vertex> vs) { return {std::move(vs), WalkKind::Cycle}; }

  std::size_t size() const { return vertices.size(); }
  bool is_cycle() const { return kind == WalkKind::Cycle; }
  std::size_t edge_count() const {
    if (vertices.empty()) return 0;
    return is_cycle() ? vertices.size() : vertices.size() - 1;
  }
  bool contains(const Vertex& v) const;

  friend bool operator==(const AlternatingWalk&, const AlternatingWalk&) = default;
};

/// One PC path plus vertex-disjoint PC cycles.
struct PathCycleSystem {
  AlternatingWalk path;
  std::vector<AlternatingWalk> cycles;

  /// |H|: total number of vertices.
  std::size_t order() const;
};

/// Vertex-disjoint cycles meant to cover every vertex.
struct TwoFactor {
  std::vector<AlternatingWalk> cycles;

  std::size_t min_cycle_length() const;
};

/// Undirected edge as (x index, y index).
struct Edge {
  int x = 0;
  int y = 0;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Sorted edge list of a set of cycles; the canonical key for comparing factors.
std::vector<Edge> edge_set(const std::vector<AlternatingWalk>& cycles);

/// Dense boolean membership over vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int vertex_count) : bits_(static_cast<std::size_t>(vertex_count), false) {}

  bool contains(int id) const { return id >= 0 && id < static_cast<int>(bits_.size()) && bits_[id]; }
  void insert(int id) { bits_[id] = true; }
  void erase(int id) { bits_[id] = false; }
  int size() const;
  int capacity() const { return static_cast<int>(bits_.size()); }

 private:
  std::vector<bool> bits_;
};

}  // namespace pcc
