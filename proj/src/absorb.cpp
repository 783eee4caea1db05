#include "pcc/absorb.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "pcc/factor_builder.hpp"
#include "pcc/generate.hpp"
#include "pcc/io.hpp"
#include "pcc/oracle.hpp"
#include "pcc/verify.hpp"

namespace pcc {
namespace {

bool pc_sequence(const ColoredBipartiteGraph& g, std::initializer_list<Vertex> vs) {
  return is_properly_colored(g, AlternatingWalk::path(std::vector<Vertex>(vs)));
}

bool same_sides(const AlternatingWalk& p) {
  if (p.size() != 4) return false;
  const auto& v = p.vertices;
  return v[0].side == Side::X && v[1].side == Side::Y && v[2].side == Side::X && v[3].side == Side::Y;
}

bool avoids(const AlternatingWalk& p, std::initializer_list<Vertex> vs) {
  for (const auto& v : vs)
    if (p.contains(v)) return false;
  return true;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double d = std::stod(value, &used);
    if (used == value.size()) return d;
  } catch (const std::exception&) {
  }
  // Rationals such as 1/3 are accepted as well.
  const auto slash = value.find('/');
  if (slash != std::string::npos) {
    try {
      return std::stod(value.substr(0, slash)) / std::stod(value.substr(slash + 1));
    } catch (const std::exception&) {
    }
  }
  throw InvalidParams("bad number for " + key + ": '" + value + "'");
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidParams("bad integer for " + key + ": '" + value + "'");
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off") return false;
  throw InvalidParams("bad boolean for " + key + ": '" + value + "'");
}

// Candidate index -> (x', y', x'', y'') with x' != x'' and y' != y''.
AlternatingWalk decode_candidate(std::uint64_t idx, int n) {
  const std::uint64_t m = static_cast<std::uint64_t>(n - 1);
  const int ypp = static_cast<int>(idx % m);
  idx /= m;
  const int xpp = static_cast<int>(idx % m);
  idx /= m;
  const int yp = static_cast<int>(idx % n);
  const int xp = static_cast<int>(idx / n);
  return AlternatingWalk::path(
      {x_vertex(xp), y_vertex(yp), x_vertex(xpp < xp ? xpp : xpp + 1), y_vertex(ypp < yp ? ypp : ypp + 1)});
}

struct Round {
  std::vector<AlternatingWalk> family;
  SampleStats stats;
};

Round sample_round(const ColoredBipartiteGraph& g, const std::vector<Element>& elems, double p,
                   const VertexSet* blocked, std::mt19937_64& rng) {
  const int n = g.n();
  const std::uint64_t total = static_cast<std::uint64_t>(n) * n * (n - 1) * (n - 1);
  Round round;
  std::vector<AlternatingWalk> drawn;
  auto take = [&](std::uint64_t idx) {
    AlternatingWalk cand = decode_candidate(idx, n);
    ++round.stats.drawn;
    if (blocked)
      for (const auto& v : cand.vertices)
        if (blocked->contains(g.id(v))) return;
    drawn.push_back(std::move(cand));
  };
  if (p >= 1.0) {
    for (std::uint64_t idx = 0; idx < total; ++idx) take(idx);
  } else if (p > 0.0) {
    // Geometric gaps between successes reproduce independent Bernoulli(p) draws.
    std::geometric_distribution<std::uint64_t> gap(p);
    for (std::uint64_t idx = gap(rng); idx < total; idx += 1 + gap(rng)) take(idx);
  }

  VertexSet used(g.vertex_count());
  std::vector<AlternatingWalk> disjoint;
  for (auto& cand : drawn) {
    bool clash = false;
    for (const auto& v : cand.vertices) clash = clash || used.contains(g.id(v));
    if (clash) continue;
    for (const auto& v : cand.vertices) used.insert(g.id(v));
    disjoint.push_back(std::move(cand));
  }
  for (auto& cand : disjoint)
    if (is_properly_colored(g, cand)) round.family.push_back(std::move(cand));

  round.stats.family_size = static_cast<int>(round.family.size());
  round.stats.min_coverage = elems.empty() ? 0 : std::numeric_limits<int>::max();
  for (const auto& e : elems) {
    int cover = 0;
    for (const auto& f : round.family) cover += is_absorbing(g, f, e) ? 1 : 0;
    round.stats.min_coverage = std::min(round.stats.min_coverage, cover);
  }
  return round;
}

AbsorbingFamily sample_family(const ColoredBipartiteGraph& g, const std::vector<Element>& elems,
                              const AbsorberParams& params, const VertexSet* blocked, SampleStats* stats) {
  params.validate();
  const int n = g.n();
  if (n < 2) throw PreconditionViolated("absorbing paths need n >= 2");
  const double p = params.probability(n);
  const double size_limit = params.size_limit(n);
  const double coverage_limit = params.coverage_limit(n);
  SplitRng root(params.seed);
  std::optional<SampleStats> best;
  auto score = [&](const SampleStats& s) {
    return std::make_tuple(s.family_size <= size_limit && s.family_size >= params.min_family_size, s.min_coverage,
                           -s.family_size);
  };
  for (int r = 0; r < params.max_rounds; ++r) {
    SplitRng rng = root.split(static_cast<std::uint64_t>(r));
    Round round = sample_round(g, elems, p, blocked, rng.engine());
    round.stats.round = r;
    const bool ok = round.stats.family_size <= size_limit && round.stats.family_size >= params.min_family_size &&
                    (elems.empty() || round.stats.min_coverage >= coverage_limit);
    if (ok) {
      if (stats) *stats = round.stats;
      return {std::move(round.family), params};
    }
    if (!best || score(round.stats) > score(*best)) best = round.stats;
  }
  if (stats) *stats = *best;
  std::ostringstream msg;
  msg << "no acceptable family in " << params.max_rounds << " rounds; best round " << best->round << " had "
      << best->family_size << " paths and min coverage " << best->min_coverage << " (limits: size <= " << size_limit
      << ", coverage >= " << coverage_limit << ")";
  throw ResampleBudgetExhausted(msg.str(), *best);
}

AlternatingWalk map_vertices(const AlternatingWalk& w, const std::vector<int>& xs, const std::vector<int>& ys) {
  AlternatingWalk out = w;
  for (auto& v : out.vertices) v.index = v.side == Side::X ? xs[v.index] : ys[v.index];
  return out;
}

AlternatingWalk flip_sides(AlternatingWalk w) {
  for (auto& v : w.vertices) v.side = opposite(v.side);
  return w;
}

void check_cycle(const ColoredBipartiteGraph& g, const AlternatingWalk& c, const Vertex& u, int length,
                 const std::string& stage) {
  if (auto defect = walk_defect(g, c)) throw RegimeFailure(stage, "malformed cycle: " + *defect);
  if (!c.is_cycle() || !is_properly_colored(g, c)) throw RegimeFailure(stage, "cycle is not properly colored");
  if (static_cast<int>(c.size()) != length || !c.contains(u))
    throw RegimeFailure(stage, "cycle has the wrong length or misses " + to_string(u));
}

// Greedy PC path of 2l - 2 vertices from u (in X of `g`), closed by a linking edge.
std::optional<AlternatingWalk> greedy_attempt(const ColoredBipartiteGraph& g, int u_index, int length,
                                              std::mt19937_64* shuffle) {
  const int n = g.n();
  std::vector<Vertex> path{x_vertex(u_index)};
  VertexSet used(g.vertex_count());
  used.insert(g.id(path[0]));
  while (static_cast<int>(path.size()) < length - 2) {
    const Vertex last = path.back();
    const Color prev = path.size() >= 2 ? g.color(last, path[path.size() - 2]) : kFreshColor;
    std::vector<Vertex> options;
    for (int idx = 0; idx < n; ++idx) {
      const Vertex w{opposite(last.side), idx};
      if (!used.contains(g.id(w)) && g.color(last, w) != prev) options.push_back(w);
    }
    if (options.empty()) return std::nullopt;
    const Vertex next = shuffle ? options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(*shuffle)]
                                : options.front();
    path.push_back(next);
    used.insert(g.id(next));
  }
  const std::size_t k = path.size();
  const D2Element e{path[k - 2], path[k - 1], path[0], path[1]};
  try {
    const LinkingEdge link = find_linking_edge(g, e, &used);
    path.push_back(link.x);
    path.push_back(link.y);
  } catch (const NoLinkingEdge&) {
    return std::nullopt;
  }
  return AlternatingWalk::cycle(std::move(path));
}

// Paths with exactly `need` vertices in total, the one through u first.
std::vector<AlternatingWalk> select_paths(std::vector<AlternatingWalk> cover, const Vertex& u, int need) {
  std::vector<AlternatingWalk> out;
  auto through_u = std::find_if(cover.begin(), cover.end(), [&](const AlternatingWalk& p) { return p.contains(u); });
  if (through_u == cover.end()) return out;
  const auto& vs = through_u->vertices;
  const int s = static_cast<int>(vs.size());
  const int pos = static_cast<int>(std::find(vs.begin(), vs.end(), u) - vs.begin());
  if (need <= s) {
    // Drop vertex pairs from the ends, keeping u.
    const int a = std::min(pos - pos % 2, s - need);
    out.push_back(AlternatingWalk::path(std::vector<Vertex>(vs.begin() + a, vs.begin() + a + need)));
    return out;
  }
  out.push_back(*through_u);
  int remaining = need - s;
  cover.erase(through_u);
  std::stable_sort(cover.begin(), cover.end(),
                   [](const AlternatingWalk& a, const AlternatingWalk& b) { return a.size() > b.size(); });
  for (const auto& p : cover) {
    if (remaining == 0) break;
    const int take = std::min(remaining, static_cast<int>(p.size()));
    out.push_back(AlternatingWalk::path(std::vector<Vertex>(p.vertices.begin(), p.vertices.begin() + take)));
    remaining -= take;
  }
  return out;
}

std::optional<AlternatingWalk> absorbing_attempt(const ColoredBipartiteGraph& g, const Vertex& u, int length,
                                                 const AbsorberParams& params, std::string& why) {
  const int n = g.n();
  VertexSet keep_out(g.vertex_count());
  keep_out.insert(g.id(u));
  AbsorbingFamily family;
  try {
    family = sample_family(g, {}, params, &keep_out, nullptr);
  } catch (const ResampleBudgetExhausted& e) {
    why = e.what();
    return std::nullopt;
  }
  // u stays outside C, so C may use at most length - 2 vertices.
  const std::size_t fit = static_cast<std::size_t>((length - 2) / 6);
  if (family.paths.size() > fit) family.paths.resize(fit);
  if (family.paths.empty()) {
    why = "target length leaves no room for an absorbing cycle";
    return std::nullopt;
  }
  AbsorbingCycle c;
  try {
    c = build_absorbing_cycle(g, family, &keep_out);
  } catch (const LinkFailure& e) {
    why = e.what();
    return std::nullopt;
  }

  VertexSet on_c(g.vertex_count());
  for (const auto& v : c.cycle.vertices) on_c.insert(g.id(v));
  std::vector<int> xs, ys;
  for (int i = 0; i < n; ++i) {
    if (!on_c.contains(g.id(x_vertex(i)))) xs.push_back(i);
    if (!on_c.contains(g.id(y_vertex(i)))) ys.push_back(i);
  }
  const int rest = static_cast<int>(xs.size());
  if (rest < 9) throw RegimeFailure("absorbing", "the graph outside the absorbing cycle is too small to cover");
  const ColoredBipartiteGraph h = g.induced(xs, ys);
  const int t = std::clamp(min_color_degree(h) - (2 * rest + 2) / 3, 3, rest / 3);
  CoverResult cover = cover_by_pc_odd_paths(h, t);
  if (auto* stuck = std::get_if<StuckReport>(&cover)) {
    why = "odd-path cover failed: " + stuck->reason;
    return std::nullopt;
  }
  std::vector<AlternatingWalk> mapped;
  for (const auto& p : std::get<std::vector<AlternatingWalk>>(cover)) mapped.push_back(map_vertices(p, xs, ys));
  const std::vector<AlternatingWalk> r = select_paths(std::move(mapped), u, length - static_cast<int>(c.cycle.size()));
  try {
    return absorb_paths(g, c, r);
  } catch (const MatchingDeficient& e) {
    why = e.what();
    return std::nullopt;
  }
}

}  // namespace

Element element_of(const AlternatingWalk& odd_path) {
  const AlternatingWalk p = x_first(odd_path);
  const auto& v = p.vertices;
  if (v.size() == 2) return D1Element{v[0], v[1]};
  return D2Element{v[0], v[1], v[v.size() - 2], v[v.size() - 1]};
}

AlternatingWalk x_first(const AlternatingWalk& odd_path) {
  if (odd_path.size() < 2 || odd_path.size() % 2 != 0)
    throw PreconditionViolated("an odd path needs an even, positive vertex count");
  AlternatingWalk p = odd_path;
  if (p.vertices.front().side == Side::Y) std::reverse(p.vertices.begin(), p.vertices.end());
  return p;
}

double AbsorberParams::gamma_value() const { return gamma.value_or(16.0 * epsilon * epsilon / 9.0); }

double AbsorberParams::probability(int n) const {
  const double nn = n;
  if (expected_draws) return std::min(1.0, *expected_draws / (nn * nn * (nn - 1) * (nn - 1)));
  if (p) return *p;
  return gamma_value() / (32.0 * nn * (nn - 1) * (nn - 1));
}

double AbsorberParams::size_limit(int n) const {
  return engineering_mode ? size_threshold : gamma_value() * n / 16.0;
}

double AbsorberParams::coverage_limit(int n) const {
  const double g = gamma_value();
  return engineering_mode ? coverage_threshold : g * g * n / 128.0;
}

int AbsorberParams::short_limit(int n) const {
  if (engineering_mode && short_max_length > 0) return short_max_length;
  return static_cast<int>(std::floor(4.0 * epsilon * n / 3.0));
}

void AbsorberParams::validate() const {
  if (!(epsilon > 0 && epsilon <= 1.0 / 3.0 + 1e-12)) throw InvalidParams("epsilon must lie in (0, 1/3]");
  if (gamma && !(*gamma > 0)) throw InvalidParams("gamma must be positive");
  if (p && !(*p > 0 && *p <= 1)) throw InvalidParams("p must lie in (0, 1]");
  if (expected_draws && !(*expected_draws > 0)) throw InvalidParams("expected_draws must be positive");
  if (max_rounds < 1) throw InvalidParams("max_rounds must be at least 1");
  if (retries < 1) throw InvalidParams("retries must be at least 1");
  if (min_family_size < 1) throw InvalidParams("min_family_size must be at least 1");
  if (engineering_mode && !(size_threshold > 0 && coverage_threshold > 0))
    throw InvalidParams("engineering mode needs positive size_threshold and coverage_threshold");
}

void AbsorberParams::set(const std::string& key, const std::string& value) {
  if (key == "epsilon") epsilon = parse_double(key, value);
  else if (key == "gamma") gamma = parse_double(key, value);
  else if (key == "p") p = parse_double(key, value);
  else if (key == "expected_draws") expected_draws = parse_double(key, value);
  else if (key == "max_rounds") max_rounds = static_cast<int>(parse_int(key, value));
  else if (key == "engineering") engineering_mode = parse_bool(key, value);
  else if (key == "size_threshold") size_threshold = parse_double(key, value);
  else if (key == "coverage_threshold") coverage_threshold = parse_double(key, value);
  else if (key == "min_family_size") min_family_size = static_cast<int>(parse_int(key, value));
  else if (key == "short_max_length") short_max_length = static_cast<int>(parse_int(key, value));
  else if (key == "retries") retries = static_cast<int>(parse_int(key, value));
  else if (key == "seed") seed = static_cast<std::uint64_t>(parse_int(key, value));
  else throw InvalidParams("unknown parameter '" + key + "'");
}

std::string AbsorberParams::to_text() const {
  std::ostringstream out;
  out << "epsilon=" << epsilon << "\n";
  out << "gamma=" << gamma_value() << "\n";
  if (p) out << "p=" << *p << "\n";
  if (expected_draws) out << "expected_draws=" << *expected_draws << "\n";
  out << "max_rounds=" << max_rounds << "\n";
  out << "engineering=" << (engineering_mode ? "true" : "false") << "\n";
  out << "size_threshold=" << size_threshold << "\n";
  out << "coverage_threshold=" << coverage_threshold << "\n";
  out << "min_family_size=" << min_family_size << "\n";
  out << "short_max_length=" << short_max_length << "\n";
  out << "retries=" << retries << "\n";
  out << "seed=" << seed << "\n";
  return out.str();
}

AbsorberParams parse_params(std::istream& in, AbsorberParams base) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidParams("line " + std::to_string(lineno) + ": expected key=value");
    base.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  base.validate();
  return base;
}

AbsorberParams read_params(const std::filesystem::path& path, AbsorberParams base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read parameters from " + path.string());
  return parse_params(in, std::move(base));
}

bool is_absorbing_d1(const ColoredBipartiteGraph& g, const AlternatingWalk& p, const D1Element& e) {
  if (!same_sides(p) || !is_properly_colored(g, p) || !avoids(p, {e.x, e.y})) return false;
  const auto& v = p.vertices;
  return pc_sequence(g, {v[0], v[1], e.x, e.y, v[2], v[3]});
}

bool is_absorbing_d2(const ColoredBipartiteGraph& g, const AlternatingWalk& p, const D2Element& e) {
  if (!same_sides(p) || !is_properly_colored(g, p) || !avoids(p, {e.x1, e.y1, e.x2, e.y2})) return false;
  const auto& v = p.vertices;
  return pc_sequence(g, {v[0], v[1], e.x1, e.y1}) && pc_sequence(g, {v[3], v[2], e.y2, e.x2});
}

bool is_absorbing(const ColoredBipartiteGraph& g, const AlternatingWalk& p, const Element& e) {
  return std::visit(
      [&](const auto& el) {
        if constexpr (std::is_same_v<std::decay_t<decltype(el)>, D1Element>) return is_absorbing_d1(g, p, el);
        else return is_absorbing_d2(g, p, el);
      },
      e);
}

AlternatingWalk insert_element(const ColoredBipartiteGraph& g, const AlternatingWalk& path, const AlternatingWalk& a) {
  const AlternatingWalk q = x_first(path);
  if (q.size() < 4) throw PreconditionViolated("insert_element needs a path x1 y1 ... xl yl with l >= 2");
  for (const auto& v : a.vertices)
    if (q.contains(v)) throw OverlapError("absorber " + format_walk(a) + " meets the path at " + to_string(v));
  if (!is_properly_colored(g, q)) throw NotAbsorbing("the path to insert is not properly colored");
  const auto el = std::get<D2Element>(element_of(q));
  if (!is_absorbing_d2(g, a, el)) throw NotAbsorbing("the 3-path does not absorb the path's ends");
  std::vector<Vertex> vs{a.vertices[0], a.vertices[1]};
  vs.insert(vs.end(), q.vertices.begin(), q.vertices.end());
  vs.push_back(a.vertices[2]);
  vs.push_back(a.vertices[3]);
  AlternatingWalk out = AlternatingWalk::path(std::move(vs));
  if (!is_properly_colored(g, out)) throw SpliceInvariantViolated("inserted path is not properly colored");
  return out;
}

std::uint64_t count_absorbing_paths(const ColoredBipartiteGraph& g, const Element& e) {
  const int n = g.n();
  std::uint64_t count = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (c == a) continue;
        for (int d = 0; d < n; ++d) {
          if (d == b) continue;
          const AlternatingWalk p = AlternatingWalk::path({x_vertex(a), y_vertex(b), x_vertex(c), y_vertex(d)});
          count += is_absorbing(g, p, e) ? 1 : 0;
        }
      }
  return count;
}

bool linking_hypothesis_holds(const ColoredBipartiteGraph& g) { return 3 * min_color_degree(g) >= 2 * g.n() + 6; }

namespace {

bool links(const ColoredBipartiteGraph& g, const D2Element& e, int x, int y) {
  const Color xy = g.color(x, y);
  const Color xy1 = g.color(x, e.y1.index);
  const Color x2y = g.color(e.x2.index, y);
  return xy1 != g.color(e.x1, e.y1) && x2y != g.color(e.x2, e.y2) && xy != xy1 && xy != x2y;
}

bool excluded(const D2Element& e, int x, int y) {
  return x == e.x1.index || x == e.x2.index || y == e.y1.index || y == e.y2.index;
}

}  // namespace

LinkingEdge find_linking_edge(const ColoredBipartiteGraph& g, const D2Element& e, const VertexSet* blocked) {
  const int n = g.n();
  const bool hypothesis = linking_hypothesis_holds(g);
  for (int x = 0; x < n; ++x) {
    if (blocked && blocked->contains(g.id(x_vertex(x)))) continue;
    for (int y = 0; y < n; ++y) {
      if (blocked && blocked->contains(g.id(y_vertex(y)))) continue;
      if (!excluded(e, x, y) && links(g, e, x, y)) return {x_vertex(x), y_vertex(y), hypothesis};
    }
  }
  throw NoLinkingEdge(std::string("no linking edge for (") + to_string(e.x1) + "," + to_string(e.y1) + ";" +
                      to_string(e.x2) + "," + to_string(e.y2) + ")" +
                      (hypothesis ? "" : " (color-degree hypothesis fails)"));
}

int count_linking_edges(const ColoredBipartiteGraph& g, const D2Element& e) {
  int count = 0;
  for (int x = 0; x < g.n(); ++x)
    for (int y = 0; y < g.n(); ++y)
      if (!excluded(e, x, y) && links(g, e, x, y)) ++count;
  return count;
}

AbsorbingFamily sample_absorbing_family(const ColoredBipartiteGraph& g, const std::vector<Element>& elems,
                                        const AbsorberParams& params, const VertexSet* blocked, SampleStats* stats) {
  if (elems.empty()) throw PreconditionViolated("sample_absorbing_family needs at least one element");
  return sample_family(g, elems, params, blocked, stats);
}

AbsorbingCycle build_absorbing_cycle(const ColoredBipartiteGraph& g, const AbsorbingFamily& family,
                                     const VertexSet* blocked) {
  const auto& fs = family.paths;
  if (fs.empty()) throw PreconditionViolated("absorbing cycle needs a nonempty family");
  VertexSet used = blocked ? *blocked : VertexSet(g.vertex_count());
  for (const auto& f : fs) {
    if (!same_sides(f) || !is_properly_colored(g, f))
      throw PreconditionViolated("family paths must be PC paths x'y'x''y''");
    for (const auto& v : f.vertices) {
      if (used.contains(g.id(v))) throw PreconditionViolated("family paths overlap each other or the blocked set");
      used.insert(g.id(v));
    }
  }
  std::vector<Vertex> cycle;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& cur = fs[i].vertices;
    const auto& next = fs[(i + 1) % fs.size()].vertices;
    LinkingEdge link;
    try {
      link = find_linking_edge(g, D2Element{cur[2], cur[3], next[0], next[1]}, &used);
    } catch (const NoLinkingEdge& e) {
      throw LinkFailure(static_cast<int>(i) + 1, e.what());
    }
    used.insert(g.id(link.x));
    used.insert(g.id(link.y));
    cycle.insert(cycle.end(), cur.begin(), cur.end());
    cycle.push_back(link.x);
    cycle.push_back(link.y);
  }
  AbsorbingCycle out{AlternatingWalk::cycle(std::move(cycle)), fs};
  if (walk_defect(g, out.cycle) || !is_properly_colored(g, out.cycle))
    throw SpliceInvariantViolated("assembled absorbing cycle is not a PC cycle");
  return out;
}

AlternatingWalk absorb_paths(const ColoredBipartiteGraph& g, const AbsorbingCycle& c,
                             const std::vector<AlternatingWalk>& r) {
  VertexSet seen(g.vertex_count());
  for (const auto& v : c.cycle.vertices) seen.insert(g.id(v));
  std::vector<AlternatingWalk> qs;
  std::vector<Element> elems;
  for (const auto& q : r) {
    AlternatingWalk oriented = x_first(q);
    if (auto defect = walk_defect(g, oriented)) throw PreconditionViolated("malformed path: " + *defect);
    if (!is_properly_colored(g, oriented)) throw PreconditionViolated("path " + format_walk(q) + " is not PC");
    for (const auto& v : oriented.vertices) {
      if (seen.contains(g.id(v))) throw PreconditionViolated("paths must avoid the cycle and each other");
      seen.insert(g.id(v));
    }
    elems.push_back(element_of(oriented));
    qs.push_back(std::move(oriented));
  }

  const int nq = static_cast<int>(qs.size());
  const int nf = static_cast<int>(c.family.size());
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nq));
  for (int i = 0; i < nq; ++i)
    for (int f = 0; f < nf; ++f)
      if (is_absorbing(g, c.family[f], elems[i])) adj[i].push_back(f);

  std::vector<int> match_f(static_cast<std::size_t>(nf), -1);
  std::vector<char> visited;
  auto augment = [&](auto&& self, int i) -> bool {
    for (int f : adj[i]) {
      if (visited[f]) continue;
      visited[f] = 1;
      if (match_f[f] < 0 || self(self, match_f[f])) {
        match_f[f] = i;
        return true;
      }
    }
    return false;
  };
  for (int i = 0; i < nq; ++i) {
    visited.assign(static_cast<std::size_t>(nf), 0);
    if (augment(augment, i)) continue;
    // Paths reached by alternating paths from i, together with the absorbers they see, violate Hall's condition.
    std::vector<int> paths{i}, absorbers;
    for (int f = 0; f < nf; ++f)
      if (visited[f]) {
        absorbers.push_back(f);
        paths.push_back(match_f[f]);
      }
    std::sort(paths.begin(), paths.end());
    throw MatchingDeficient(std::to_string(paths.size()) + " paths have only " + std::to_string(absorbers.size()) +
                                " absorbers between them",
                            std::move(paths), std::move(absorbers));
  }

  std::vector<int> absorbed_by(static_cast<std::size_t>(nf), -1);
  for (int f = 0; f < nf; ++f) absorbed_by[f] = match_f[f];
  // Splice Q between y' and x'' of its absorber.
  std::vector<Vertex> out;
  const auto& cv = c.cycle.vertices;
  for (std::size_t pos = 0; pos < cv.size(); ++pos) {
    out.push_back(cv[pos]);
    for (int f = 0; f < nf; ++f) {
      if (absorbed_by[f] < 0 || c.family[f].vertices[1] != cv[pos]) continue;
      const auto& q = qs[absorbed_by[f]].vertices;
      out.insert(out.end(), q.begin(), q.end());
    }
  }
  AlternatingWalk result = AlternatingWalk::cycle(std::move(out));
  std::size_t expected = c.cycle.size();
  for (const auto& q : qs) expected += q.size();
  if (walk_defect(g, result) || !is_properly_colored(g, result) || result.size() != expected)
    throw SpliceInvariantViolated("absorbed cycle failed verification");
  return result;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::FourCycle: return "four_cycle";
    case Regime::Greedy: return "greedy";
    case Regime::Absorbing: return "absorbing";
  }
  return "?";
}

EvenCycleResult find_pc_even_cycle_through(const ColoredBipartiteGraph& g, const Vertex& u, int target_length,
                                           const AbsorberParams& params) {
  params.validate();
  const int n = g.n();
  if (!g.valid(u)) throw PreconditionViolated("vertex " + to_string(u) + " is not in the graph");
  if (target_length < 4 || target_length % 2 != 0 || target_length > 2 * n)
    throw PreconditionViolated("target length must be even and within [4, 2n]");

  if (target_length == 4) {
    auto c = find_pc_4cycle_through(g, u);
    if (!c) throw RegimeFailure("four_cycle", "no PC 4-cycle through " + to_string(u));
    check_cycle(g, *c, u, 4, "four_cycle");
    return {*c, Regime::FourCycle, 1};
  }

  auto greedy = [&](int& attempts) -> std::optional<AlternatingWalk> {
    const bool transposed = u.side == Side::Y;
    const ColoredBipartiteGraph gt = transposed ? g.transposed() : g;
    SplitRng rng = SplitRng(params.seed).split(1);
    for (int a = 0; a < params.retries; ++a) {
      ++attempts;
      auto c = greedy_attempt(gt, u.index, target_length, a == 0 ? nullptr : &rng.engine());
      if (c) return transposed ? flip_sides(std::move(*c)) : std::move(*c);
    }
    return std::nullopt;
  };

  int attempts = 0;
  if (target_length <= params.short_limit(n)) {
    auto c = greedy(attempts);
    if (!c) throw RegimeFailure("greedy", "no closable greedy path after " + std::to_string(attempts) + " attempts");
    check_cycle(g, *c, u, target_length, "greedy");
    return {*c, Regime::Greedy, attempts};
  }

  AbsorberParams local = params;
  if (local.engineering_mode && !local.p && !local.expected_draws) local.expected_draws = 2 * local.size_threshold;
  std::string why = "no attempt made";
  for (int a = 0; a < params.retries; ++a) {
    ++attempts;
    local.seed = SplitRng(params.seed).split(100 + static_cast<std::uint64_t>(a)).engine()();
    try {
      if (auto c = absorbing_attempt(g, u, target_length, local, why)) {
        check_cycle(g, *c, u, target_length, "absorbing");
        return {*c, Regime::Absorbing, attempts};
      }
    } catch (const RegimeFailure& e) {
      why = e.what();
      break;
    }
  }
  if (!params.engineering_mode) throw RegimeFailure("absorbing", why);
  // Engineering mode falls back to the greedy regime when absorption is infeasible or keeps failing.
  if (auto c = greedy(attempts)) {
    check_cycle(g, *c, u, target_length, "greedy");
    return {*c, Regime::Greedy, attempts};
  }
  throw RegimeFailure("absorbing", why + "; greedy fallback failed as well");
}

}  // namespace pcc
