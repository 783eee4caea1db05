#include "pcc/factor_builder.hpp"

#include <algorithm>
#include <sstream>

#include "pcc/errors.hpp"
#include "pcc/io.hpp"
#include "pcc/rotation.hpp"
#include "pcc/verify.hpp"

namespace pcc {
namespace {

struct Occupancy {
  std::vector<int> cycle_of;  // index into h.cycles, -1 if not on a cycle
  VertexSet on_path;
};

Occupancy occupancy(const ColoredBipartiteGraph& g, const PathCycleSystem& h) {
  Occupancy occ{std::vector<int>(static_cast<std::size_t>(g.vertex_count()), -1), VertexSet(g.vertex_count())};
  for (const auto& v : h.path.vertices) occ.on_path.insert(g.id(v));
  for (std::size_t c = 0; c < h.cycles.size(); ++c)
    for (const auto& v : h.cycles[c].vertices) occ.cycle_of[g.id(v)] = static_cast<int>(c);
  return occ;
}

// Cycle vertices starting at position a, walking in direction dir (+1 / -1).
std::vector<Vertex> unroll(const AlternatingWalk& c, int a, int dir) {
  const int len = static_cast<int>(c.size());
  std::vector<Vertex> out;
  out.reserve(c.size());
  for (int s = 0; s < len; ++s) out.push_back(c.vertices[((a + dir * s) % len + len) % len]);
  return out;
}

// New path with `tail` attached after the last vertex (at_end) or before the first.
AlternatingWalk attach(const AlternatingWalk& path, std::vector<Vertex> tail, bool at_end) {
  std::vector<Vertex> vs;
  vs.reserve(path.size() + tail.size());
  if (at_end) {
    vs = path.vertices;
    vs.insert(vs.end(), tail.begin(), tail.end());
  } else {
    vs.assign(tail.rbegin(), tail.rend());
    vs.insert(vs.end(), path.vertices.begin(), path.vertices.end());
  }
  return AlternatingWalk::path(std::move(vs));
}

std::optional<Move> try_extend(const ColoredBipartiteGraph& g, const PathCycleSystem& h, const Occupancy& occ,
                               bool at_end) {
  const auto& p = h.path.vertices;
  const Vertex u = at_end ? p.back() : p.front();
  const Vertex before = at_end ? p[p.size() - 2] : p[1];
  const Color blocked = g.color(u, before);
  const Side other = opposite(u.side);
  for (int idx = 0; idx < g.n(); ++idx) {
    const Vertex w{other, idx};
    const int id = g.id(w);
    if (occ.on_path.contains(id) || occ.cycle_of[id] >= 0) continue;
    if (g.color(u, w) == blocked) continue;
    return Move{{attach(h.path, {w}, at_end), h.cycles}, MoveKind::Extend};
  }
  return std::nullopt;
}

std::optional<Move> try_splice(const ColoredBipartiteGraph& g, const PathCycleSystem& h, const Occupancy& occ,
                               bool at_end) {
  const auto& p = h.path.vertices;
  const Vertex u = at_end ? p.back() : p.front();
  const Color blocked = p.size() >= 2 ? g.color(u, at_end ? p[p.size() - 2] : p[1]) : kFreshColor;
  const Side other = opposite(u.side);
  for (int idx = 0; idx < g.n(); ++idx) {
    const Vertex w{other, idx};
    const int ci = occ.cycle_of[g.id(w)];
    if (ci < 0) continue;
    const Color cuw = g.color(u, w);
    if (cuw == blocked) continue;
    const AlternatingWalk& cycle = h.cycles[ci];
    const int len = static_cast<int>(cycle.size());
    const int a = static_cast<int>(std::find(cycle.vertices.begin(), cycle.vertices.end(), w) - cycle.vertices.begin());
    for (int dir : {1, -1}) {
      const Vertex next = cycle.vertices[((a + dir) % len + len) % len];
      if (g.color(w, next) == cuw) continue;
      PathCycleSystem out;
      out.path = attach(h.path, unroll(cycle, a, dir), at_end);
      for (std::size_t c = 0; c < h.cycles.size(); ++c)
        if (static_cast<int>(c) != ci) out.cycles.push_back(h.cycles[c]);
      return Move{std::move(out), MoveKind::Splice};
    }
  }
  return std::nullopt;
}

std::optional<Vertex> smallest_free(const ColoredBipartiteGraph& g, const PathCycleSystem& h, Side side) {
  const Occupancy occ = occupancy(g, h);
  for (int idx = 0; idx < g.n(); ++idx) {
    const int id = g.id({side, idx});
    if (!occ.on_path.contains(id) && occ.cycle_of[id] < 0) return Vertex{side, idx};
  }
  return std::nullopt;
}

StepKind step_of(MoveKind kind) {
  switch (kind) {
    case MoveKind::ReplaceSingleton: return StepKind::ReplaceSingleton;
    case MoveKind::Extend: return StepKind::Extend;
    case MoveKind::Splice: return StepKind::Splice;
  }
  return StepKind::Extend;
}

}  // namespace

std::optional<Move> next_move(const ColoredBipartiteGraph& g, const PathCycleSystem& h, int t) {
  if (h.path.vertices.empty()) throw InvalidSystem("the path of a path-cycle system must be nonempty");
  const auto report = verify_path_cycle_system(g, h, t);
  if (!report.passed()) throw InvalidSystem("not a path-cycle system:\n" + report.to_text());
  const Occupancy occ = occupancy(g, h);

  if (h.path.size() == 1) {
    // Prefer an edge at the existing vertex; otherwise any edge avoiding the cycles.
    const Vertex v = h.path.vertices.front();
    for (int idx = 0; idx < g.n(); ++idx) {
      const Vertex w{opposite(v.side), idx};
      if (occ.cycle_of[g.id(w)] < 0) return Move{{AlternatingWalk::path({v, w}), h.cycles}, MoveKind::ReplaceSingleton};
    }
    for (int i = 0; i < g.n(); ++i)
      for (int j = 0; j < g.n(); ++j)
        if (occ.cycle_of[g.id(x_vertex(i))] < 0 && occ.cycle_of[g.id(y_vertex(j))] < 0)
          return Move{{AlternatingWalk::path({x_vertex(i), y_vertex(j)}), h.cycles}, MoveKind::ReplaceSingleton};
    return try_splice(g, h, occ, true);
  }

  for (bool at_end : {true, false})
    if (auto m = try_extend(g, h, occ, at_end)) return m;
  for (bool at_end : {true, false})
    if (auto m = try_splice(g, h, occ, at_end)) return m;
  return std::nullopt;
}

std::optional<PathCycleSystem> maximality_move(const ColoredBipartiteGraph& g, const PathCycleSystem& h, int t) {
  auto m = next_move(g, h, t);
  if (!m) return std::nullopt;
  return std::move(m->system);
}

bool factor_hypotheses_hold(const ColoredBipartiteGraph& g, int t) {
  const int n = g.n();
  return n >= 3 * t && 3 * min_color_degree(g) >= 2 * n + 3 * t;
}

std::string to_string(StepKind kind) {
  switch (kind) {
    case StepKind::ReplaceSingleton: return "replace";
    case StepKind::Extend: return "extend";
    case StepKind::Splice: return "splice";
    case StepKind::EvenExchange: return "even_exchange";
    case StepKind::OddExchange: return "odd_exchange";
    case StepKind::Seed: return "seed";
  }
  return "?";
}

std::string StuckReport::to_text() const {
  std::ostringstream out;
  out << "status=stuck\n";
  out << "reason=" << reason << "\n";
  out << "hypotheses=" << (hypotheses_hold ? "hold" : "fail") << "\n";
  out << "h_size=" << state.order() << "\n";
  out << "path_size=" << path_size << "\n";
  out << "cycles=" << state.cycles.size() << "\n";
  out << "rotation_left=" << left_vertices << "\n";
  out << "rotation_right=" << right_vertices << "\n";
  out << "arcs=" << arcs << "\n";
  out << "two_cycles=" << two_cycles << "\n";
  out << "path=" << format_walk(state.path) << "\n";
  return out.str();
}

FactorResult find_pc_2factor(const ColoredBipartiteGraph& g, int t, BuildTrace* trace, FactorOptions options) {
  const int n = g.n();
  if (t < 3 || (options.enforce_side_bound && 3 * t > n))
    throw PreconditionViolated("need 3 <= t <= n/3, got t=" + std::to_string(t) + " with n=" + std::to_string(n));
  const bool hypotheses = factor_hypotheses_hold(g, t);

  PathCycleSystem h;
  h.path = AlternatingWalk::path({x_vertex(0)});
  auto log = [&](StepKind kind, std::optional<ExchangeRecord> record = std::nullopt) {
    if (trace)
      trace->steps.push_back(
          {kind, static_cast<int>(h.order()), static_cast<int>(h.path.size()), std::move(record)});
  };
  auto stuck = [&](std::string reason, const ExchangeDigraph* d, std::size_t pairs) {
    StuckReport r;
    r.state = h;
    r.path_size = static_cast<int>(h.path.size());
    if (d) {
      r.left_vertices = static_cast<int>(d->left.size());
      r.right_vertices = static_cast<int>(d->right.size());
      r.arcs = d->arc_count();
    }
    r.two_cycles = pairs;
    r.hypotheses_hold = hypotheses;
    r.reason = std::move(reason);
    return r;
  };

  // Each state strictly improves (|H|, |P|) within two steps, so this bound is never reached.
  const long limit = 8L * (2 * n + 1) * (2 * n + 1);
  for (long iter = 0; iter < limit; ++iter) {
    if (auto m = next_move(g, h, t)) {
      h = std::move(m->system);
      log(step_of(m->kind));
      continue;
    }
    const RotationStructures rs = compute_rotation_structures(g, h, t);
    const PathView p(g, h.path);
    const ExchangeDigraph d = build_exchange_digraph(p, rs.rotation, t);
    const std::vector<ExchangePair> pairs = directed_2cycles(d);

    if (rs.parity == Parity::Even) {
      if (trace) trace->stuck_even_path_sizes.push_back(p.size());
      std::optional<EvenExchange> done;
      for (const auto& pair : pairs)
        if ((done = apply_even_exchange(g, h, rs, pair, t))) break;
      if (!done) return stuck(pairs.empty() ? "no directed 2-cycle" : "no surgery applies", &d, pairs.size());
      if (static_cast<int>(h.order()) == 2 * n) {
        h = {AlternatingWalk::path({}), done->factor.cycles};
        log(StepKind::EvenExchange, done->record);
        const auto report = verify_two_factor(g, done->factor, t);
        if (!report.passed()) throw SurgeryInvariantViolated("final factor failed verification:\n" + report.to_text());
        return std::move(done->factor);
      }
      h.cycles = std::move(done->factor.cycles);
      h.path = AlternatingWalk::path({});
      log(StepKind::EvenExchange, done->record);
      // V(H) is balanced here, so both sides have an uncovered vertex.
      const auto x = smallest_free(g, h, Side::X);
      const auto y = smallest_free(g, h, Side::Y);
      h.path = AlternatingWalk::path({*x, *y});
      log(StepKind::Seed);
    } else {
      const auto y_star = smallest_free(g, h, opposite(h.path.vertices.front().side));
      if (!y_star) throw NoOutsideVertex("odd path but the opposite side is fully covered");
      std::optional<OddExchange> done;
      for (const auto& pair : pairs)
        if ((done = apply_odd_exchange(g, h, rs, pair, t, *y_star))) break;
      if (!done) return stuck(pairs.empty() ? "no directed 2-cycle" : "no surgery applies", &d, pairs.size());
      h = std::move(done->system);
      log(StepKind::OddExchange, done->record);
    }
  }
  return stuck("iteration limit", nullptr, 0);
}

CoverResult cover_by_pc_odd_paths(const ColoredBipartiteGraph& g, int t) {
  FactorResult result = find_pc_2factor(g, t);
  if (auto* report = std::get_if<StuckReport>(&result)) return std::move(*report);
  std::vector<AlternatingWalk> paths;
  for (auto& cycle : std::get<TwoFactor>(result).cycles) paths.push_back(AlternatingWalk::path(std::move(cycle.vertices)));
  return paths;
}

}  // namespace pcc
