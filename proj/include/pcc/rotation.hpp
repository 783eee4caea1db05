#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pcc/graph.hpp"

namespace pcc {

enum class Parity : std::uint8_t { Even, Odd };

/// Neighbors of the path endpoints whose edge color differs from the adjacent path edge,
/// as positions along P. `first_*` belong to u_1 = P[0], `last_*` to u_k = P[k-1].
/// The trimmed sets drop the 2(t-1) positions nearest the ends.
struct EndpointSets {
  std::vector<int> first_all;    // S'_1
  std::vector<int> last_all;     // S'_k
  std::vector<int> first;        // S_1
  std::vector<int> last;         // S_k
  bool contained_in_path = true; // S'_1 and S'_k lie on P
};

/// Membership flags of one rotation-set side, indexed by position on P.
/// Bit kFirst: predecessor-based set (R^{(1)} or Q^{(1)}), bit kSecond: successor-based set.
struct RotationSets {
  static constexpr std::uint8_t kFirst = 1;
  static constexpr std::uint8_t kSecond = 2;

  Parity parity = Parity::Even;
  std::vector<std::uint8_t> left;   // sets attached to u_1
  std::vector<std::uint8_t> right;  // sets attached to u_k (R_k for even, Q_k for odd)

  std::vector<int> left_members(std::uint8_t mask) const;
  std::vector<int> right_members(std::uint8_t mask) const;
  /// Sizes |R^{(1)}| + |R^{(2)}| on each side.
  int left_total() const;
  int right_total() const;
};

enum class MemberClass : std::uint8_t { FirstOnly, SecondOnly, Both };
std::optional<MemberClass> classify(std::uint8_t flags);

/// The path P as vertex ids with color lookups by position.
class PathView {
 public:
  PathView(const ColoredBipartiteGraph& g, std::vector<int> ids) : g_(&g), ids_(std::move(ids)) {}
  PathView(const ColoredBipartiteGraph& g, const AlternatingWalk& path);

  int size() const { return static_cast<int>(ids_.size()); }
  int id(int pos) const { return ids_[pos]; }
  const std::vector<int>& ids() const { return ids_; }
  bool has(int pos) const { return pos >= 0 && pos < size(); }
  /// Color of the edge between the vertices at two positions (opposite sides).
  Color color(int a, int b) const { return g_->color_by_id(ids_[a], ids_[b]); }
  /// Color of the path edge between positions pos and pos + 1.
  Color step(int pos) const { return color(pos, pos + 1); }
  const ColoredBipartiteGraph& graph() const { return *g_; }

 private:
  const ColoredBipartiteGraph* g_;
  std::vector<int> ids_;
};

struct RotationStructures {
  EndpointSets endpoints;
  RotationSets rotation;
  Parity parity = Parity::Even;
};

/// Endpoint and rotation sets of a stuck path (no maximality move applies).
/// Throws PreconditionViolated if S'_1 or S'_k leaves V(P).
RotationStructures compute_rotation_structures(const ColoredBipartiteGraph& g, const PathCycleSystem& h, int t);
RotationStructures compute_rotation_structures(const PathView& p, int t);

enum class DigraphVariant : std::uint8_t {
  Even,      // guard d_P >= t-1 or d_P = 1
  OddShort,  // t <= 4: guard d_P != 3
  OddLong,   // t >= 5: guard d_P >= t-1 or d_P = 1
};

/// Directed bipartite graph between the u_1-side rotation vertices (left) and the
/// u_k-side ones (right). Vertices are P positions. Labels follow the vertex coloring:
/// the successor edge color for first-only members, the predecessor edge color for
/// second-only members, and kFreshColor for members of both sets.
struct ExchangeDigraph {
  DigraphVariant variant = DigraphVariant::Even;
  std::vector<int> left;
  std::vector<int> right;
  std::vector<Color> left_label;
  std::vector<Color> right_label;
  std::vector<std::uint8_t> forward;   // arc left[a] -> right[b] at a * right.size() + b
  std::vector<std::uint8_t> backward;  // arc right[b] -> left[a] at the same index

  bool has_forward(std::size_t a, std::size_t b) const { return forward[a * right.size() + b] != 0; }
  bool has_backward(std::size_t a, std::size_t b) const { return backward[a * right.size() + b] != 0; }
  std::size_t arc_count() const;
};

DigraphVariant variant_for(Parity parity, int t);
bool distance_guard(DigraphVariant variant, int distance, int t);

ExchangeDigraph build_exchange_digraph(const PathView& p, const RotationSets& rot, int t);

/// A pair of P positions (left vertex, right vertex) joined by arcs in both directions.
struct ExchangePair {
  int x = 0;
  int y = 0;
  friend bool operator==(const ExchangePair&, const ExchangePair&) = default;
};

std::optional<ExchangePair> find_directed_2cycle(const ExchangeDigraph& d);
/// All directed 2-cycles, ordered by (left index, right index).
std::vector<ExchangePair> directed_2cycles(const ExchangeDigraph& d);

}  // namespace pcc
