#include "pcc/rotation.hpp"

#include <cstdlib>

#include "pcc/errors.hpp"

namespace pcc {
namespace {

std::vector<int> members(const std::vector<std::uint8_t>& flags, std::uint8_t mask) {
  std::vector<int> out;
  for (int pos = 0; pos < static_cast<int>(flags.size()); ++pos)
    if ((flags[pos] & mask) == mask && flags[pos] != 0) out.push_back(pos);
  return out;
}

int total(const std::vector<std::uint8_t>& flags) {
  int sum = 0;
  for (auto f : flags) sum += ((f & RotationSets::kFirst) ? 1 : 0) + ((f & RotationSets::kSecond) ? 1 : 0);
  return sum;
}

Color label_of(const PathView& p, int pos, std::uint8_t flags) {
  switch (*classify(flags)) {
    case MemberClass::FirstOnly: return p.step(pos);
    case MemberClass::SecondOnly: return p.step(pos - 1);
    case MemberClass::Both: return kFreshColor;
  }
  return kFreshColor;
}

}  // namespace

std::vector<int> RotationSets::left_members(std::uint8_t mask) const { return members(left, mask); }
std::vector<int> RotationSets::right_members(std::uint8_t mask) const { return members(right, mask); }
int RotationSets::left_total() const { return total(left); }
int RotationSets::right_total() const { return total(right); }

std::optional<MemberClass> classify(std::uint8_t flags) {
  switch (flags & 3) {
    case RotationSets::kFirst: return MemberClass::FirstOnly;
    case RotationSets::kSecond: return MemberClass::SecondOnly;
    case RotationSets::kFirst | RotationSets::kSecond: return MemberClass::Both;
    default: return std::nullopt;
  }
}

PathView::PathView(const ColoredBipartiteGraph& g, const AlternatingWalk& path) : g_(&g) {
  ids_.reserve(path.size());
  for (const auto& v : path.vertices) ids_.push_back(g.id(v));
}

RotationStructures compute_rotation_structures(const ColoredBipartiteGraph& g, const PathCycleSystem& h, int t) {
  return compute_rotation_structures(PathView(g, h.path), t);
}

RotationStructures compute_rotation_structures(const PathView& p, int t) {
  const ColoredBipartiteGraph& g = p.graph();
  const int k = p.size();
  if (k < 2) throw PreconditionViolated("rotation structures need a path with at least two vertices");

  std::vector<int> pos_of(static_cast<std::size_t>(g.vertex_count()), -1);
  for (int pos = 0; pos < k; ++pos) pos_of[p.id(pos)] = pos;

  RotationStructures out;
  out.parity = k % 2 == 0 ? Parity::Even : Parity::Odd;
  EndpointSets& ends = out.endpoints;

  auto collect = [&](int end_pos, Color path_color, std::vector<int>& into) {
    const int end_id = p.id(end_pos);
    const int base = end_id < g.n() ? g.n() : 0;
    for (int k2 = 0; k2 < g.n(); ++k2) {
      const int w = base + k2;
      if (g.color_by_id(end_id, w) == path_color) continue;
      if (pos_of[w] < 0) {
        ends.contained_in_path = false;
        continue;
      }
      into.push_back(pos_of[w]);
    }
  };
  collect(0, p.step(0), ends.first_all);
  collect(k - 1, p.step(k - 2), ends.last_all);
  if (!ends.contained_in_path)
    throw PreconditionViolated("an endpoint has a color-compatible neighbor off the path; a maximality move applies");

  auto in_window = [&](int pos) { return pos <= t - 2 || (pos >= k - t && pos <= k - 2); };
  std::vector<bool> in_first(static_cast<std::size_t>(k), false), in_last(static_cast<std::size_t>(k), false);
  for (int pos : ends.first_all)
    if (!in_window(pos)) {
      ends.first.push_back(pos);
      in_first[pos] = true;
    }
  for (int pos : ends.last_all)
    if (!in_window(pos)) {
      ends.last.push_back(pos);
      in_last[pos] = true;
    }

  RotationSets& rot = out.rotation;
  rot.parity = out.parity;
  rot.left.assign(static_cast<std::size_t>(k), 0);
  rot.right.assign(static_cast<std::size_t>(k), 0);
  const int last = k - 1;
  // Only interior positions carry labels, so endpoints never join a set.
  for (int u = 1; u + 1 < k; ++u) {
    // u^- in S_1 with c(u_1 u^-) != c(u^- u^--)
    if (u - 2 >= 0 && in_first[u - 1] && p.color(0, u - 1) != p.step(u - 2)) rot.left[u] |= RotationSets::kFirst;
    // u^+ in S_1 with c(u_1 u^+) != c(u^+ u^++)
    if (u + 2 < k && in_first[u + 1] && p.color(0, u + 1) != p.step(u + 1)) rot.left[u] |= RotationSets::kSecond;

    if (out.parity == Parity::Even) {
      if (u - 2 >= 0 && in_last[u - 1] && p.color(last, u - 1) != p.step(u - 2)) rot.right[u] |= RotationSets::kFirst;
      if (u + 2 < k && in_last[u + 1] && p.color(last, u + 1) != p.step(u + 1)) rot.right[u] |= RotationSets::kSecond;
    } else {
      // Offset-two sets at u_k: u^-- (resp. u^++) in S_k.
      if (u - 3 >= 0 && in_last[u - 2] && p.color(last, u - 2) != p.step(u - 3)) rot.right[u] |= RotationSets::kFirst;
      if (u + 3 < k && in_last[u + 2] && p.color(last, u + 2) != p.step(u + 2)) rot.right[u] |= RotationSets::kSecond;
    }
  }
  return out;
}

DigraphVariant variant_for(Parity parity, int t) {
  if (parity == Parity::Even) return DigraphVariant::Even;
  return t <= 4 ? DigraphVariant::OddShort : DigraphVariant::OddLong;
}

bool distance_guard(DigraphVariant variant, int distance, int t) {
  if (variant == DigraphVariant::OddShort) return distance != 3;
  return distance >= t - 1 || distance == 1;
}

std::size_t ExchangeDigraph::arc_count() const {
  std::size_t count = 0;
  for (auto a : forward) count += a;
  for (auto a : backward) count += a;
  return count;
}

ExchangeDigraph build_exchange_digraph(const PathView& p, const RotationSets& rot, int t) {
  ExchangeDigraph d;
  d.variant = variant_for(rot.parity, t);
  for (int pos = 0; pos < p.size(); ++pos) {
    if (rot.left[pos] != 0) {
      d.left.push_back(pos);
      d.left_label.push_back(label_of(p, pos, rot.left[pos]));
    }
    if (rot.right[pos] != 0) {
      d.right.push_back(pos);
      d.right_label.push_back(label_of(p, pos, rot.right[pos]));
    }
  }
  d.forward.assign(d.left.size() * d.right.size(), 0);
  d.backward.assign(d.left.size() * d.right.size(), 0);
  for (std::size_t a = 0; a < d.left.size(); ++a)
    for (std::size_t b = 0; b < d.right.size(); ++b) {
      const int x = d.left[a];
      const int y = d.right[b];
      if (!distance_guard(d.variant, std::abs(x - y), t)) continue;
      const Color cxy = p.color(x, y);
      d.forward[a * d.right.size() + b] = cxy != d.left_label[a];
      d.backward[a * d.right.size() + b] = cxy != d.right_label[b];
    }
  return d;
}

std::optional<ExchangePair> find_directed_2cycle(const ExchangeDigraph& d) {
  for (std::size_t a = 0; a < d.left.size(); ++a)
    for (std::size_t b = 0; b < d.right.size(); ++b)
      if (d.has_forward(a, b) && d.has_backward(a, b)) return ExchangePair{d.left[a], d.right[b]};
  return std::nullopt;
}

std::vector<ExchangePair> directed_2cycles(const ExchangeDigraph& d) {
  std::vector<ExchangePair> out;
  for (std::size_t a = 0; a < d.left.size(); ++a)
    for (std::size_t b = 0; b < d.right.size(); ++b)
      if (d.has_forward(a, b) && d.has_backward(a, b)) out.push_back({d.left[a], d.right[b]});
  return out;
}

}  // namespace pcc
