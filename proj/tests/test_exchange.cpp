#include <doctest.h>

#include <cstdlib>
#include <set>

#include "pcc/errors.hpp"
#include "pcc/exchange.hpp"
#include "support.hpp"

using namespace pcc;

namespace {

std::set<Vertex> vertex_set(const std::vector<AlternatingWalk>& walks) {
  std::set<Vertex> out;
  for (const auto& w : walks) out.insert(w.vertices.begin(), w.vertices.end());
  return out;
}

// Rotation sets straight from their definitions, on P positions.
struct NaiveRotation {
  std::vector<std::uint8_t> left, right;
};

NaiveRotation naive_rotation(const ColoredBipartiteGraph& g, const AlternatingWalk& path, int t) {
  const auto& p = path.vertices;
  const int k = static_cast<int>(p.size());
  auto c = [&](int a, int b) { return testing::edge_color(g, p[a], p[b]); };
  auto trimmed = [&](int end, int other_end_step, int pos) {
    if (pos == end || p[pos].side == p[end].side) return false;
    if (c(end, pos) == c(end, other_end_step)) return false;
    return !(pos <= t - 2 || (pos >= k - t && pos <= k - 2));
  };
  auto in_s1 = [&](int pos) { return trimmed(0, 1, pos); };
  auto in_sk = [&](int pos) { return trimmed(k - 1, k - 2, pos); };
  NaiveRotation r{std::vector<std::uint8_t>(k, 0), std::vector<std::uint8_t>(k, 0)};
  const int off = k % 2 == 0 ? 1 : 2;
  for (int u = 1; u + 1 < k; ++u) {
    if (u >= 2 && in_s1(u - 1) && c(0, u - 1) != c(u - 1, u - 2)) r.left[u] |= RotationSets::kFirst;
    if (u + 2 < k && in_s1(u + 1) && c(0, u + 1) != c(u + 1, u + 2)) r.left[u] |= RotationSets::kSecond;
    const int a = u - off, b = u + off;
    if (a >= 1 && in_sk(a) && c(k - 1, a) != c(a, a - 1)) r.right[u] |= RotationSets::kFirst;
    if (b + 1 < k && in_sk(b) && c(k - 1, b) != c(b, b + 1)) r.right[u] |= RotationSets::kSecond;
  }
  return r;
}

}  // namespace

TEST_CASE("membership case numbering") {
  const auto F = RotationSets::kFirst, S = RotationSets::kSecond, B = static_cast<std::uint8_t>(F | S);
  CHECK(membership_case(F, F) == 1);
  CHECK(membership_case(F, S) == 2);
  CHECK(membership_case(S, F) == 3);
  CHECK(membership_case(S, S) == 4);
  CHECK(membership_case(F, B) == 5);
  CHECK(membership_case(S, B) == 6);
  CHECK(membership_case(B, F) == 7);
  CHECK(membership_case(B, S) == 8);
  CHECK(membership_case(B, B) == 9);
}

TEST_CASE("distance guards") {
  CHECK(variant_for(Parity::Even, 6) == DigraphVariant::Even);
  CHECK(variant_for(Parity::Odd, 4) == DigraphVariant::OddShort);
  CHECK(variant_for(Parity::Odd, 5) == DigraphVariant::OddLong);
  CHECK(distance_guard(DigraphVariant::Even, 1, 6));
  CHECK_FALSE(distance_guard(DigraphVariant::Even, 3, 6));
  CHECK(distance_guard(DigraphVariant::Even, 5, 6));
  CHECK(distance_guard(DigraphVariant::OddShort, 5, 4));
  CHECK_FALSE(distance_guard(DigraphVariant::OddShort, 3, 4));
  CHECK_FALSE(distance_guard(DigraphVariant::OddLong, 3, 6));
  CHECK(distance_guard(DigraphVariant::OddLong, 7, 6));
}

TEST_CASE("rotation structures match their definitions") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const bool odd = seed % 2 == 1;
    const auto s = testing::random_stuck_state(seed, odd);
    const auto rs = compute_rotation_structures(s.g, s.h, s.t);
    const auto naive = naive_rotation(s.g, s.h.path, s.t);
    CHECK(rs.rotation.left == naive.left);
    CHECK(rs.rotation.right == naive.right);
    CHECK(rs.parity == (odd ? Parity::Odd : Parity::Even));
    // Every trimmed interior neighbor of u_1 puts its successor or predecessor into a rotation set.
    const int k = static_cast<int>(s.h.path.size());
    const auto interior = std::count_if(rs.endpoints.first.begin(), rs.endpoints.first.end(),
                                        [&](int pos) { return pos != k - 1; });
    CHECK(rs.rotation.left_total() >= interior);
  }
}

TEST_CASE("rotation structures reject a non-stuck path") {
  const auto g = testing::latin(4);
  PathCycleSystem h;
  h.path = AlternatingWalk::path({x_vertex(0), y_vertex(0), x_vertex(1), y_vertex(1)});
  CHECK_THROWS_AS(compute_rotation_structures(g, h, 3), PreconditionViolated);
}

TEST_CASE("exchange digraph arcs follow the vertex labels") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto s = testing::random_stuck_state(seed, seed % 3 == 0);
    const PathView p(s.g, s.h.path);
    const auto rs = compute_rotation_structures(p, s.t);
    const auto d = build_exchange_digraph(p, rs.rotation, s.t);
    auto label = [&](int pos, std::uint8_t flags) {
      if (flags == RotationSets::kFirst) return p.step(pos);
      if (flags == RotationSets::kSecond) return p.step(pos - 1);
      return kFreshColor;
    };
    for (std::size_t a = 0; a < d.left.size(); ++a)
      for (std::size_t b = 0; b < d.right.size(); ++b) {
        const int x = d.left[a], y = d.right[b];
        const bool guarded = distance_guard(d.variant, std::abs(x - y), s.t);
        const Color cxy = p.color(x, y);
        CHECK(d.has_forward(a, b) == (guarded && cxy != label(x, rs.rotation.left[x])));
        CHECK(d.has_backward(a, b) == (guarded && cxy != label(y, rs.rotation.right[y])));
      }
    const auto cycles = directed_2cycles(d);
    CHECK(find_directed_2cycle(d).has_value() == !cycles.empty());
    if (!cycles.empty()) CHECK(*find_directed_2cycle(d) == cycles.front());
  }
}

TEST_CASE("exchanges produce valid structures and reach every case") {
  std::set<int> even_cases, odd_cases;
  for (std::uint64_t seed = 0; seed < 4000; ++seed) {
    const bool odd = seed % 2 == 1;
    const auto s = testing::random_stuck_state(seed, odd);
    const int n = s.g.n();
    const auto rs = compute_rotation_structures(s.g, s.h, s.t);
    const auto d = build_exchange_digraph(PathView(s.g, s.h.path), rs.rotation, s.t);
    for (const auto pair : directed_2cycles(d)) {
      if (!odd) {
        const auto r = apply_even_exchange(s.g, s.h, rs, pair, s.t);
        if (!r) continue;
        even_cases.insert(r->record.case_id);
        std::set<Vertex> expected(s.h.path.vertices.begin(), s.h.path.vertices.end());
        CHECK(vertex_set(r->factor.cycles) == expected);
        std::size_t total = 0;
        for (const auto& c : r->factor.cycles) {
          total += c.size();
          CHECK(testing::simple_alternating(c, n));
          CHECK(testing::naive_pc(s.g, c));
          CHECK(c.size() >= static_cast<std::size_t>(s.t));
        }
        CHECK(total == expected.size());
      } else {
        const auto r = apply_odd_exchange(s.g, s.h, rs, pair, s.t, s.y_star);
        if (!r) continue;
        odd_cases.insert(r->record.case_id);
        const auto& path = r->system.path;
        REQUIRE(path.size() == 2);
        CHECK(path.vertices.back() == s.y_star);
        CHECK(testing::naive_pc(s.g, path));
        auto walks = r->system.cycles;
        walks.push_back(path);
        std::set<Vertex> expected(s.h.path.vertices.begin(), s.h.path.vertices.end());
        expected.insert(s.y_star);
        CHECK(vertex_set(walks) == expected);
        for (const auto& c : r->system.cycles) {
          CHECK(testing::simple_alternating(c, n));
          CHECK(testing::naive_pc(s.g, c));
          CHECK(c.size() >= static_cast<std::size_t>(s.t));
        }
      }
    }
  }
  CHECK(even_cases.size() == 9);
  CHECK(odd_cases.size() == 9);
}

TEST_CASE("odd exchange needs an outside vertex on the far side") {
  const auto s = testing::random_stuck_state(1, true);
  const auto rs = compute_rotation_structures(s.g, s.h, s.t);
  const auto d = build_exchange_digraph(PathView(s.g, s.h.path), rs.rotation, s.t);
  const auto pairs = directed_2cycles(d);
  REQUIRE_FALSE(pairs.empty());
  CHECK_THROWS_AS(apply_odd_exchange(s.g, s.h, rs, pairs.front(), s.t, s.h.path.vertices[1]), NoOutsideVertex);
  CHECK_THROWS_AS(apply_odd_exchange(s.g, s.h, rs, pairs.front(), s.t, x_vertex(0)), NoOutsideVertex);
}
