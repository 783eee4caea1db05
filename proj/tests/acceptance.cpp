// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "pcc/absorb.hpp"
#include "pcc/errors.hpp"
#include "pcc/exchange.hpp"
#include "pcc/factor_builder.hpp"
#include "pcc/oracle.hpp"
#include "pcc/verify.hpp"
#include "support.hpp"

using namespace pcc;

namespace {

constexpr double kSecondsPerRun = 5.0;

int surgery_violations = 0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int ceil_div(int a, int b) { return (a + b - 1) / b; }

bool report(int id, const Outcome& o) {
  std::cout << "criterion " << id << ": " << (o.pass ? "pass" : "fail") << " (" << o.detail << ")" << std::endl;
  return o.pass;
}

Outcome timed(const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o = body();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream d;
  d.precision(3);
  d << o.detail << " elapsed=" << secs << "s";
  o.detail = d.str();
  return o;
}

Outcome guarded(const std::function<Outcome()>& body) {
  try {
    return timed(body);
  } catch (const SurgeryInvariantViolated& e) {
    ++surgery_violations;
    return {false, std::string("surgery invariant violated: ") + e.what()};
  } catch (const std::exception& e) {
    return {false, std::string("unexpected error: ") + e.what()};
  }
}

std::set<Vertex> vertex_set(const std::vector<AlternatingWalk>& ws) {
  std::set<Vertex> out;
  for (const auto& w : ws) out.insert(w.vertices.begin(), w.vertices.end());
  return out;
}

bool spanning_pc_factor(const ColoredBipartiteGraph& g, const TwoFactor& f, int t) {
  std::size_t total = 0;
  for (const auto& c : f.cycles) {
    if (!testing::simple_alternating(c, g.n()) || !testing::naive_pc(g, c) || c.size() < static_cast<std::size_t>(t))
      return false;
    total += c.size();
  }
  return total == vertex_set(f.cycles).size() && static_cast<int>(total) == 2 * g.n();
}

struct Criterion1Instance {
  int n;
  int t;
  std::uint64_t seed;
  ColoredBipartiteGraph g;
};

std::vector<Criterion1Instance> criterion1_instances() {
  std::vector<Criterion1Instance> out;
  for (int n : {9, 12, 15, 18, 21, 24})
    for (int t : {3, 4, 5}) {
      if (t > 3 && n < 3 * t) continue;
      for (std::uint64_t s = 0; s < 100; ++s) {
        const std::uint64_t seed = static_cast<std::uint64_t>(n) * 10000 + t * 1000 + s;
        out.push_back({n, t, seed, testing::random_graph(seed, n, ceil_div(2 * n, 3) + t)});
      }
    }
  return out;
}

Outcome criterion1(const std::vector<Criterion1Instance>& instances) {
  int ok = 0, slow = 0;
  double worst = 0;
  std::string first_failure;
  for (const auto& inst : instances) {
    const auto start = std::chrono::steady_clock::now();
    bool good = false;
    try {
      const auto r = find_pc_2factor(inst.g, inst.t);
      if (const auto* f = std::get_if<TwoFactor>(&r))
        good = verify_two_factor(inst.g, *f, inst.t).passed() && spanning_pc_factor(inst.g, *f, inst.t);
    } catch (const SurgeryInvariantViolated&) {
      ++surgery_violations;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    worst = std::max(worst, secs);
    slow += secs >= kSecondsPerRun;
    ok += good;
    if (!good && first_failure.empty())
      first_failure = " first_failure=n" + std::to_string(inst.n) + "/t" + std::to_string(inst.t) + "/seed" +
                      std::to_string(inst.seed);
  }
  std::ostringstream d;
  d << "factors=" << ok << "/" << instances.size() << " max_seconds=" << worst << " limit=" << kSecondsPerRun
    << first_failure;
  return {ok == static_cast<int>(instances.size()) && slow == 0, d.str()};
}

Outcome criterion2() {
  int instances = 0, oracle_nonempty = 0, qualifying = 0, qualifying_found = 0, outputs = 0, outputs_listed = 0;
  const GenMode modes[] = {GenMode::Latin, GenMode::Rainbow, GenMode::Monochromatic, GenMode::RandomMinDegree};
  for (int k = 0; k < 200; ++k) {
    GenSpec spec;
    spec.n = 2 + k % 5;
    spec.mode = modes[(k / 5) % 4];
    spec.seed = static_cast<std::uint64_t>(k);
    spec.delta = 1 + k % spec.n;
    spec.palette = spec.delta + k % 3;
    const auto g = generate(spec);
    ++instances;
    std::set<std::vector<Edge>> keys;
    for (const auto& f : enumerate_pc_two_factors(g, 3)) keys.insert(edge_set(f.cycles));
    oracle_nonempty += !keys.empty();
    const auto r = find_pc_2factor(g, 3, nullptr, FactorOptions{false});
    const auto* f = std::get_if<TwoFactor>(&r);
    if (factor_hypotheses_hold(g, 3) && !keys.empty()) {
      ++qualifying;
      qualifying_found += f != nullptr;
    }
    if (f) {
      ++outputs;
      outputs_listed += keys.count(edge_set(f->cycles));
    }
  }
  std::ostringstream d;
  d << "instances=" << instances << " oracle_nonempty=" << oracle_nonempty << " hypothesis_qualified=" << qualifying
    << " qualified_found=" << qualifying_found << " builder_outputs=" << outputs << " outputs_in_enumeration="
    << outputs_listed;
  if (qualifying == 0) d << " note=n>=3t cannot hold for n<=6, builder run with the side bound lifted";
  return {qualifying_found == qualifying && outputs_listed == outputs && outputs > 0, d.str()};
}

Outcome criterion3(const std::vector<Criterion1Instance>& instances) {
  int ok = 0, worst_slack = 1 << 30;
  for (const auto& inst : instances) {
    const auto r = cover_by_pc_odd_paths(inst.g, inst.t);
    const auto* paths = std::get_if<std::vector<AlternatingWalk>>(&r);
    if (!paths) continue;
    std::size_t total = 0;
    bool good = static_cast<int>(paths->size()) <= ceil_div(2 * inst.n, inst.t);
    for (const auto& p : *paths) {
      good = good && p.edge_count() % 2 == 1 && testing::simple_alternating(p, inst.n) && testing::naive_pc(inst.g, p);
      total += p.size();
    }
    good = good && total == vertex_set(*paths).size() && static_cast<int>(total) == 2 * inst.n;
    ok += good;
    worst_slack = std::min(worst_slack, ceil_div(2 * inst.n, inst.t) - static_cast<int>(paths->size()));
  }
  std::ostringstream d;
  d << "covers=" << ok << "/" << instances.size() << " min_slack_to_bound=" << worst_slack;
  return {ok == static_cast<int>(instances.size()), d.str()};
}

Outcome criterion4() {
  int checked = 0, below = 0, min_margin = 1 << 30;
  for (int k = 0; k < 100; ++k) {
    const int n = 9 + k % 16;
    const auto g = testing::random_graph(static_cast<std::uint64_t>(4000 + k), n, std::min(n, ceil_div(2 * n, 3) + 2));
    SplitRng rng(static_cast<std::uint64_t>(k));
    for (int e = 0; e < 20; ++e) {
      const int x1 = rng.uniform(0, n - 1), y1 = rng.uniform(0, n - 1);
      int x2 = rng.uniform(0, n - 2), y2 = rng.uniform(0, n - 2);
      x2 += x2 >= x1;
      y2 += y2 >= y1;
      const int count = count_linking_edges(g, {x_vertex(x1), y_vertex(y1), x_vertex(x2), y_vertex(y2)});
      ++checked;
      below += count < ceil_div(4 * n, 3);
      min_margin = std::min(min_margin, count - ceil_div(4 * n, 3));
    }
  }
  std::ostringstream d;
  d << "elements=" << checked << " below_bound=" << below << " min_margin=" << min_margin;
  return {below == 0, d.str()};
}

Outcome criterion5() {
  const int n = 12;
  const auto g = testing::latin(n);
  const std::uint64_t bound = 4096;  // (16/9)(1/3)^2 12^4
  const std::uint64_t closed = 11ULL * 11 * 10 * 10;
  SplitRng rng(5);
  int d1_exact = 0, above = 0;
  std::uint64_t min_count = ~0ULL;
  for (int e = 0; e < 20; ++e) {
    const D1Element d1{x_vertex(rng.uniform(0, n - 1)), y_vertex(rng.uniform(0, n - 1))};
    const auto c1 = count_absorbing_paths(g, d1);
    d1_exact += c1 == closed;
    above += c1 >= bound;
    min_count = std::min(min_count, c1);
    const int x1 = rng.uniform(0, n - 1), y1 = rng.uniform(0, n - 1);
    int x2 = rng.uniform(0, n - 2), y2 = rng.uniform(0, n - 2);
    x2 += x2 >= x1;
    y2 += y2 >= y1;
    const auto c2 = count_absorbing_paths(g, D2Element{x_vertex(x1), y_vertex(y1), x_vertex(x2), y_vertex(y2)});
    above += c2 >= bound;
    min_count = std::min(min_count, c2);
  }
  std::ostringstream d;
  d << "d1_closed_form=" << d1_exact << "/20 (12100) above_4096=" << above << "/40 min_count=" << min_count;
  return {d1_exact == 20 && above == 40, d.str()};
}

// A PC path with `size` vertices (even) on unused vertices, built greedily from random starts.
std::optional<AlternatingWalk> random_odd_path(const ColoredBipartiteGraph& g, int size, VertexSet& used, SplitRng& rng) {
  const int n = g.n();
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::vector<Vertex> vs;
    std::vector<int> taken;
    bool stuck = false;
    while (static_cast<int>(vs.size()) < size && !stuck) {
      const Side side = vs.size() % 2 == 0 ? Side::X : Side::Y;
      std::vector<int> options;
      for (int i = 0; i < n; ++i) {
        const Vertex v{side, i};
        if (used.contains(g.id(v))) continue;
        if (std::find(vs.begin(), vs.end(), v) != vs.end()) continue;
        auto cand = vs;
        cand.push_back(v);
        if (testing::naive_pc(g, AlternatingWalk::path(cand))) options.push_back(i);
      }
      if (options.empty()) stuck = true;
      else vs.push_back({side, options[rng.uniform(0, static_cast<int>(options.size()) - 1)]});
    }
    if (stuck) continue;
    for (const auto& v : vs) used.insert(g.id(v));
    return AlternatingWalk::path(vs);
  }
  return std::nullopt;
}

Outcome criterion6a() {
  int ok = 0;
  std::string first_failure;
  for (int run = 0; run < 100; ++run) {
    SplitRng rng(static_cast<std::uint64_t>(600 + run));
    const int n = rng.uniform(20, 40);
    const int delta = ceil_div(9 * n, 10);
    const auto g = run % 2 == 0 ? testing::latin(n) : testing::random_graph(static_cast<std::uint64_t>(run), n, delta);
    const int family = rng.uniform(2, 4);
    // Each absorber takes one path, so a family never absorbs more paths than it has.
    const int absorbed = rng.uniform(1, std::min(3, family));
    std::string why;
    try {
      VertexSet used(2 * n);
      std::vector<AlternatingWalk> r;
      for (int i = 0; i < absorbed; ++i) {
        const int size = 2 * rng.uniform(1, 3);
        auto p = random_odd_path(g, size, used, rng);
        if (!p) throw RegimeFailure("setup", "no PC odd path to absorb");
        r.push_back(*p);
      }
      std::vector<Element> elems;
      for (const auto& q : r) elems.push_back(element_of(q));
      AbsorberParams params;
      params.engineering_mode = true;
      params.size_threshold = family;
      params.min_family_size = family;
      params.coverage_threshold = absorbed;
      params.expected_draws = 2.0 * family;
      params.max_rounds = 2000;
      params.seed = static_cast<std::uint64_t>(run);
      const auto fam = sample_absorbing_family(g, elems, params, &used);
      const auto c = build_absorbing_cycle(g, fam, &used);
      const auto merged = absorb_paths(g, c, r);
      auto expected = vertex_set(r);
      for (const auto& v : c.cycle.vertices) expected.insert(v);
      const bool good = static_cast<int>(fam.paths.size()) == family && c.cycle.size() == 6 * fam.paths.size() &&
                        testing::naive_pc(g, merged) && testing::simple_alternating(merged, n) &&
                        merged.size() == expected.size() && vertex_set({merged}) == expected;
      ok += good;
      if (!good) why = "verification failed";
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (!why.empty() && first_failure.empty()) first_failure = " first_failure=run" + std::to_string(run) + ": " + why;
  }
  std::ostringstream d;
  d << "runs=" << ok << "/100" << first_failure;
  return {ok == 100, d.str()};
}

Outcome criterion6b() {
  std::ostringstream d;
  bool pass = true;
  for (int n : {6, 8}) {
    std::ostringstream out, err;
    const int code = cli::run({"pancyclic", "--n", std::to_string(n), "--mode", "latin", "--engineering"}, out, err);
    const int cells = 2 * n * (n - 1);
    const bool cli_ok = code == cli::kSuccess && out.str().find("witnessed=" + std::to_string(cells)) != std::string::npos;

    // Re-derive every witness through the driver with the same parameters and check it independently.
    const auto g = testing::latin(n);
    AbsorberParams params;
    params.engineering_mode = true;
    params.size_threshold = 4;
    params.coverage_threshold = 1;
    int verified = 0;
    for (int id = 0; id < 2 * n; ++id)
      for (int k = 4; k <= 2 * n; k += 2) {
        const Vertex u = g.vertex(id);
        const auto r = find_pc_even_cycle_through(g, u, k, params);
        verified += r.cycle.size() == static_cast<std::size_t>(k) && r.cycle.contains(u) &&
                    testing::simple_alternating(r.cycle, n) && testing::naive_pc(g, r.cycle);
      }
    pass = pass && cli_ok && verified == cells;
    d << "K" << n << " cli=" << (cli_ok ? "pancyclic" : "incomplete") << " verified=" << verified << "/" << cells << " ";
  }
  std::string s = d.str();
  s.pop_back();
  return {pass, s};
}

Outcome criterion7() {
  std::set<int> even_cases, odd_cases;
  long surgeries = 0;
  for (std::uint64_t seed = 0; seed < 20000; ++seed) {
    const bool odd = seed % 2 == 1;
    const auto s = testing::random_stuck_state(seed, odd);
    const auto rs = compute_rotation_structures(s.g, s.h, s.t);
    const auto d = build_exchange_digraph(PathView(s.g, s.h.path), rs.rotation, s.t);
    for (const auto pair : directed_2cycles(d)) {
      try {
        if (!odd) {
          const auto r = apply_even_exchange(s.g, s.h, rs, pair, s.t);
          if (!r) continue;
          ++surgeries;
          TwoFactor f = r->factor;
          std::set<Vertex> expected(s.h.path.vertices.begin(), s.h.path.vertices.end());
          bool good = vertex_set(f.cycles) == expected;
          for (const auto& c : f.cycles)
            good = good && testing::naive_pc(s.g, c) && c.size() >= static_cast<std::size_t>(s.t);
          if (good) even_cases.insert(r->record.case_id);
          else ++surgery_violations;
        } else {
          const auto r = apply_odd_exchange(s.g, s.h, rs, pair, s.t, s.y_star);
          if (!r) continue;
          ++surgeries;
          auto walks = r->system.cycles;
          walks.push_back(r->system.path);
          std::set<Vertex> expected(s.h.path.vertices.begin(), s.h.path.vertices.end());
          expected.insert(s.y_star);
          bool good = vertex_set(walks) == expected && r->system.path.size() == 2;
          for (const auto& w : walks) good = good && testing::naive_pc(s.g, w);
          for (const auto& c : r->system.cycles) good = good && c.size() >= static_cast<std::size_t>(s.t);
          if (good) odd_cases.insert(r->record.case_id);
          else ++surgery_violations;
        }
      } catch (const SurgeryInvariantViolated&) {
        ++surgery_violations;
      }
    }
  }
  std::ostringstream d;
  d << "even_cases=" << even_cases.size() << "/9 odd_cases=" << odd_cases.size() << "/9 surgeries=" << surgeries
    << " violations=" << surgery_violations;
  return {even_cases.size() == 9 && odd_cases.size() == 9 && surgery_violations == 0, d.str()};
}

Outcome criterion8() {
  int violations = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    SplitRng rng(80000 + seed);
    const int n = rng.uniform(2, 30);
    const int q = rng.uniform(1, 2 * n);
    std::vector<Color> colors(static_cast<std::size_t>(n) * n);
    for (auto& c : colors) c = rng.uniform(0, q - 1);
    const ColoredBipartiteGraph g(n, colors);
    violations += min_color_degree(g) + max_mono_degree(g) > n + 1;
  }
  return {violations == 0, "instances=1000 violations=" + std::to_string(violations)};
}

}  // namespace

int main() {
  const auto instances = criterion1_instances();
  bool all = true;
  all &= report(1, guarded([&] { return criterion1(instances); }));
  all &= report(2, guarded(criterion2));
  all &= report(3, guarded([&] { return criterion3(instances); }));
  all &= report(4, guarded(criterion4));
  all &= report(5, guarded(criterion5));
  const Outcome a = guarded(criterion6a);
  const Outcome b = guarded(criterion6b);
  all &= report(6, {a.pass && b.pass, "a: " + a.detail + "; b: " + b.detail});
  all &= report(7, guarded(criterion7));
  all &= report(8, guarded(criterion8));
  return all ? 0 : 1;
}
