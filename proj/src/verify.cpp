#include "pcc/verify.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace pcc {
namespace {

std::vector<Color> incident_colors(const ColoredBipartiteGraph& g, const Vertex& v) {
  std::vector<Color> cs(static_cast<std::size_t>(g.n()));
  for (int k = 0; k < g.n(); ++k)
    cs[k] = v.side == Side::X ? g.color(v.index, k) : g.color(k, v.index);
  return cs;
}

std::string walk_text(const AlternatingWalk& w) {
  std::string s;
  for (const auto& v : w.vertices) {
    if (!s.empty()) s += ' ';
    s += to_string(v);
  }
  return s;
}

}  // namespace

int color_degree(const ColoredBipartiteGraph& g, const Vertex& v) {
  auto cs = incident_colors(g, v);
  std::sort(cs.begin(), cs.end());
  return static_cast<int>(std::unique(cs.begin(), cs.end()) - cs.begin());
}

int min_color_degree(const ColoredBipartiteGraph& g) {
  int best = g.n();
  for (int id = 0; id < g.vertex_count(); ++id) best = std::min(best, color_degree(g, g.vertex(id)));
  return best;
}

int max_mono_degree(const ColoredBipartiteGraph& g) {
  int best = 0;
  for (int id = 0; id < g.vertex_count(); ++id) {
    std::unordered_map<Color, int> counts;
    for (Color c : incident_colors(g, g.vertex(id))) best = std::max(best, ++counts[c]);
  }
  return best;
}

bool is_properly_colored(const ColoredBipartiteGraph& g, const AlternatingWalk& w) {
  const auto& vs = w.vertices;
  const std::size_t m = vs.size();
  if (m < 3) return true;
  const std::size_t edges = w.is_cycle() ? m : m - 1;
  auto edge_color = [&](std::size_t e) { return g.color(vs[e], vs[(e + 1) % m]); };
  const std::size_t pairs = w.is_cycle() ? m : m - 2;
  for (std::size_t e = 0; e < pairs; ++e)
    if (edge_color(e) == edge_color((e + 1) % edges)) return false;
  return true;
}

std::optional<std::string> walk_defect(const ColoredBipartiteGraph& g, const AlternatingWalk& w) {
  const auto& vs = w.vertices;
  if (vs.empty()) return "empty walk";
  std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!g.valid(vs[i])) return "invalid vertex " + to_string(vs[i]);
    const int id = g.id(vs[i]);
    if (seen[id]) return "repeated vertex " + to_string(vs[i]);
    seen[id] = true;
    if (i > 0 && vs[i - 1].side == vs[i].side)
      return "consecutive vertices on one side at " + to_string(vs[i]);
  }
  if (w.is_cycle()) {
    if (vs.size() < 4 || vs.size() % 2 != 0)
      return "cycle must have even length >= 4, got " + std::to_string(vs.size());
  }
  return std::nullopt;
}

void VerificationReport::add(std::string name, bool passed, std::string witness) {
  checks_.push_back({std::move(name), passed, std::move(witness)});
}

bool VerificationReport::passed() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed; });
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  for (const auto& c : checks_) {
    out << c.name << '=' << (c.passed ? "pass" : "fail");
    if (!c.witness.empty()) out << "; " << c.witness;
    out << '\n';
  }
  out << "overall=" << (passed() ? "pass" : "fail") << '\n';
  return out.str();
}

VerificationReport verify_two_factor_on(const ColoredBipartiteGraph& g, const TwoFactor& f, int t,
                                        const VertexSet& domain) {
  VerificationReport report;

  std::string malformed;
  for (const auto& c : f.cycles) {
    if (!c.is_cycle()) {
      malformed = "component is not a cycle: " + walk_text(c);
      break;
    }
    if (auto d = walk_defect(g, c)) {
      malformed = *d + " in " + walk_text(c);
      break;
    }
  }
  report.add("well_formed", malformed.empty(), malformed);

  std::vector<int> hits(static_cast<std::size_t>(g.vertex_count()), 0);
  for (const auto& c : f.cycles)
    for (const auto& v : c.vertices)
      if (g.valid(v)) ++hits[g.id(v)];

  std::string overlap;
  std::string missing;
  std::string stray;
  for (int id = 0; id < g.vertex_count(); ++id) {
    const std::string name = to_string(g.vertex(id));
    if (hits[id] > 1 && overlap.empty()) overlap = "vertex " + name + " used " + std::to_string(hits[id]) + " times";
    if (domain.contains(id) && hits[id] == 0 && missing.empty()) missing = "missing " + name;
    if (!domain.contains(id) && hits[id] > 0 && stray.empty()) stray = "outside vertex " + name;
  }
  report.add("disjoint", overlap.empty(), overlap);
  const std::string span_witness = !missing.empty() ? missing : stray;
  report.add("spanning", span_witness.empty(), span_witness);

  std::string improper;
  for (const auto& c : f.cycles) {
    if (!is_properly_colored(g, c)) {
      improper = "not properly colored: " + walk_text(c);
      break;
    }
  }
  report.add("properly_colored", improper.empty(), improper);

  std::string short_cycle;
  for (const auto& c : f.cycles) {
    if (static_cast<int>(c.size()) < t) {
      short_cycle = "cycle of length " + std::to_string(c.size()) + " < " + std::to_string(t);
      break;
    }
  }
  if (f.cycles.empty() && domain.size() > 0) short_cycle = "no cycles";
  report.add("min_length", short_cycle.empty(), short_cycle);
  return report;
}

VerificationReport verify_two_factor(const ColoredBipartiteGraph& g, const TwoFactor& f, int t) {
  VertexSet all(g.vertex_count());
  for (int id = 0; id < g.vertex_count(); ++id) all.insert(id);
  return verify_two_factor_on(g, f, t, all);
}

VerificationReport verify_path_cycle_system(const ColoredBipartiteGraph& g, const PathCycleSystem& h,
                                            int t) {
  VerificationReport report;
  std::string malformed;
  if (h.path.is_cycle()) malformed = "distinguished component is not a path";
  if (malformed.empty())
    if (auto d = walk_defect(g, h.path)) malformed = "path: " + *d;
  for (const auto& c : h.cycles) {
    if (!malformed.empty()) break;
    if (!c.is_cycle())
      malformed = "component is not a cycle: " + walk_text(c);
    else if (auto d = walk_defect(g, c))
      malformed = *d + " in " + walk_text(c);
  }
  report.add("well_formed", malformed.empty(), malformed);

  std::vector<int> hits(static_cast<std::size_t>(g.vertex_count()), 0);
  auto count = [&](const AlternatingWalk& w) {
    for (const auto& v : w.vertices)
      if (g.valid(v)) ++hits[g.id(v)];
  };
  count(h.path);
  for (const auto& c : h.cycles) count(c);
  std::string overlap;
  for (int id = 0; id < g.vertex_count() && overlap.empty(); ++id)
    if (hits[id] > 1) overlap = "vertex " + to_string(g.vertex(id)) + " used twice";
  report.add("disjoint", overlap.empty(), overlap);

  std::string improper;
  if (!is_properly_colored(g, h.path)) improper = "path: " + walk_text(h.path);
  for (const auto& c : h.cycles)
    if (improper.empty() && !is_properly_colored(g, c)) improper = "cycle: " + walk_text(c);
  report.add("properly_colored", improper.empty(), improper);

  std::string short_cycle;
  for (const auto& c : h.cycles)
    if (short_cycle.empty() && static_cast<int>(c.size()) < t)
      short_cycle = "cycle of length " + std::to_string(c.size()) + " < " + std::to_string(t);
  report.add("min_length", short_cycle.empty(), short_cycle);
  return report;
}

}  // namespace pcc
