#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "pcc/absorb.hpp"
#include "pcc/errors.hpp"
#include "pcc/factor_builder.hpp"
#include "pcc/generate.hpp"
#include "pcc/io.hpp"
#include "pcc/oracle.hpp"
#include "pcc/verify.hpp"

namespace pcc::cli {
namespace {

struct Source {
  std::string instance;
  int n = 0;
  std::string mode = "latin";
  int delta = 0;
  int q = 0;
  int star_size = 1;
  std::uint64_t seed = 0;
};

struct ParamFlags {
  std::string file;
  bool engineering = false;
  std::vector<std::string> overrides;
};

void add_source(CLI::App* cmd, Source& src) {
  cmd->add_option("--instance", src.instance, "Instance file");
  cmd->add_option("--n", src.n, "Side size of a generated instance");
  cmd->add_option("--mode", src.mode, "Generator: latin, rainbow, mono, random, star");
  cmd->add_option("--delta", src.delta, "random: target minimum color degree");
  cmd->add_option("--q", src.q, "random: palette size (default delta)");
  cmd->add_option("--star-size", src.star_size, "star: size of the monochromatic star");
  cmd->add_option("--seed", src.seed, "Generator seed");
}

void add_params(CLI::App* cmd, ParamFlags& pf) {
  cmd->add_option("--params", pf.file, "key=value file of absorber parameters");
  cmd->add_flag("--engineering", pf.engineering, "Use engineering thresholds instead of the theorem constants");
  cmd->add_option("--param", pf.overrides, "Single key=value parameter override")->take_all();
}

GenSpec spec_of(const Source& src) {
  GenSpec spec;
  spec.n = src.n;
  spec.mode = parse_gen_mode(src.mode);
  spec.seed = src.seed;
  spec.delta = src.delta;
  spec.palette = src.q > 0 ? src.q : src.delta;
  spec.star_size = src.star_size;
  return spec;
}

ColoredBipartiteGraph load(const Source& src) {
  if (!src.instance.empty()) return read_instance(src.instance);
  if (src.n <= 0) throw PreconditionViolated("give --instance or --n with generator flags");
  return generate(spec_of(src));
}

AbsorberParams params_of(const ParamFlags& pf) {
  AbsorberParams p;
  if (pf.engineering) {
    p.engineering_mode = true;
    p.size_threshold = 4;
    p.coverage_threshold = 1;
  }
  if (!pf.file.empty()) p = read_params(pf.file, p);
  for (const auto& kv : pf.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InvalidParams("--param expects key=value, got '" + kv + "'");
    p.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  p.validate();
  return p;
}

/// Runs body(i) for i in [0, count) on up to `jobs` threads. Results must be stored by index.
void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void print_checks(std::ostream& out, const VerificationReport& report, const std::string& prefix) {
  for (const auto& c : report.checks()) {
    out << prefix << c.name << "=" << (c.passed ? "pass" : "fail");
    if (!c.witness.empty()) out << "; " << c.witness;
    out << "\n";
  }
}

std::string lengths_of(const std::vector<AlternatingWalk>& walks) {
  std::vector<std::size_t> sizes;
  for (const auto& w : walks) sizes.push_back(w.size());
  std::sort(sizes.begin(), sizes.end());
  std::string s;
  for (auto z : sizes) s += (s.empty() ? "" : ",") + std::to_string(z);
  return s;
}

void header(std::ostream& out, const std::string& command, const ColoredBipartiteGraph& g) {
  out << "command=" << command << "\n";
  out << "n=" << g.n() << "\n";
  out << "min_color_degree=" << min_color_degree(g) << "\n";
  out << "max_mono_degree=" << max_mono_degree(g) << "\n";
}

void write_walks(const std::string& path, const std::string& comment, const std::vector<AlternatingWalk>& walks) {
  std::ostringstream text;
  text << "# " << comment << "\n";
  format_walks(text, walks);
  write_text(path, text.str());
}

std::vector<AlternatingWalk> read_walks(const std::string& path, WalkKind kind) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  return parse_walks(in, kind);
}

int cmd_gen(const Source& src, const std::string& out_path, std::ostream& out) {
  const GenSpec spec = spec_of(src);
  const ColoredBipartiteGraph g = generate(spec);
  header(out, "gen", g);
  out << "mode=" << to_string(spec.mode) << "\n";
  out << "seed=" << spec.seed << "\n";
  if (!out_path.empty()) {
    write_instance(out_path, g);
    const bool same = read_instance(out_path) == g;
    out << "out=" << out_path << "\n";
    out << "reread=" << (same ? "pass" : "fail") << "\n";
    if (!same) return kIoError;
  } else {
    format_instance(out, g);
  }
  return kSuccess;
}

int cmd_factor(const Source& src, int t, const std::string& out_path, std::ostream& out) {
  const ColoredBipartiteGraph g = load(src);
  header(out, "factor", g);
  out << "t=" << t << "\n";
  out << "hypotheses=" << (factor_hypotheses_hold(g, t) ? "hold" : "fail") << "\n";
  BuildTrace trace;
  FactorResult result;
  try {
    result = find_pc_2factor(g, t, &trace);
  } catch (const PreconditionViolated& e) {
    out << "status=precondition_unmet\nreason=" << e.what() << "\n";
    return kPreconditionUnmet;
  }
  out << "steps=" << trace.steps.size() << "\n";
  int exchanges = 0;
  for (const auto& s : trace.steps) exchanges += s.exchange ? 1 : 0;
  out << "exchanges=" << exchanges << "\n";
  if (auto* stuck = std::get_if<StuckReport>(&result)) {
    out << stuck->to_text();
    return kStuck;
  }
  const TwoFactor& f = std::get<TwoFactor>(result);
  const VerificationReport report = verify_two_factor(g, f, t);
  out << "status=" << (report.passed() ? "factor" : "invalid") << "\n";
  out << "cycles=" << f.cycles.size() << "\n";
  out << "cycle_lengths=" << lengths_of(f.cycles) << "\n";
  print_checks(out, report, "check.");
  if (!report.passed()) return kStuck;
  if (!out_path.empty()) {
    write_walks(out_path, "PC 2-factor, t=" + std::to_string(t), f.cycles);
    const bool ok = verify_two_factor(g, TwoFactor{read_walks(out_path, WalkKind::Cycle)}, t).passed();
    out << "out=" << out_path << "\nreread=" << (ok ? "pass" : "fail") << "\n";
    if (!ok) return kIoError;
  }
  return kSuccess;
}

VerificationReport verify_cover(const ColoredBipartiteGraph& g, const std::vector<AlternatingWalk>& paths, int t) {
  VerificationReport report;
  std::string defect;
  for (const auto& p : paths)
    if (auto d = walk_defect(g, p)) defect = *d;
  report.add("well_formed", defect.empty(), defect);
  bool odd = true, pc = true;
  for (const auto& p : paths) {
    odd = odd && p.edge_count() % 2 == 1;
    pc = pc && is_properly_colored(g, p);
  }
  report.add("odd_paths", odd);
  report.add("properly_colored", pc);
  VertexSet seen(g.vertex_count());
  bool disjoint = true;
  for (const auto& p : paths)
    for (const auto& v : p.vertices) {
      if (!g.valid(v)) continue;
      disjoint = disjoint && !seen.contains(g.id(v));
      seen.insert(g.id(v));
    }
  report.add("disjoint", disjoint);
  report.add("spanning", seen.size() == g.vertex_count());
  const int bound = (2 * g.n() + t - 1) / t;
  report.add("count_bound", static_cast<int>(paths.size()) <= bound,
             std::to_string(paths.size()) + " paths, bound " + std::to_string(bound));
  return report;
}

int cmd_cover(const Source& src, int t, const std::string& out_path, std::ostream& out) {
  const ColoredBipartiteGraph g = load(src);
  header(out, "cover", g);
  out << "t=" << t << "\n";
  CoverResult result;
  try {
    result = cover_by_pc_odd_paths(g, t);
  } catch (const PreconditionViolated& e) {
    out << "status=precondition_unmet\nreason=" << e.what() << "\n";
    return kPreconditionUnmet;
  }
  if (auto* stuck = std::get_if<StuckReport>(&result)) {
    out << stuck->to_text();
    return kStuck;
  }
  const auto& paths = std::get<std::vector<AlternatingWalk>>(result);
  const VerificationReport report = verify_cover(g, paths, t);
  out << "status=" << (report.passed() ? "cover" : "invalid") << "\n";
  out << "paths=" << paths.size() << "\n";
  out << "path_sizes=" << lengths_of(paths) << "\n";
  print_checks(out, report, "check.");
  if (!report.passed()) return kStuck;
  if (!out_path.empty()) {
    write_walks(out_path, "PC odd-path cover, t=" + std::to_string(t), paths);
    const bool ok = verify_cover(g, read_walks(out_path, WalkKind::Path), t).passed();
    out << "out=" << out_path << "\nreread=" << (ok ? "pass" : "fail") << "\n";
    if (!ok) return kIoError;
  }
  return kSuccess;
}

int cmd_verify(const Source& src, const std::string& factor_path, int t, std::ostream& out) {
  const ColoredBipartiteGraph g = load(src);
  header(out, "verify", g);
  const TwoFactor f{read_walks(factor_path, WalkKind::Cycle)};
  const VerificationReport report = verify_two_factor(g, f, t);
  out << "t=" << t << "\ncycles=" << f.cycles.size() << "\n";
  print_checks(out, report, "check.");
  out << "overall=" << (report.passed() ? "pass" : "fail") << "\n";
  return report.passed() ? kSuccess : kStuck;
}

struct Cell {
  std::string status;  // witness, none, failed, budget
  std::string detail;
  std::optional<AlternatingWalk> witness;
};

int cmd_pancyclic(const Source& src, const std::string& search, const ParamFlags& pf, int cap, int jobs,
                  const std::string& out_path, std::ostream& out) {
  const ColoredBipartiteGraph g = load(src);
  const int n = g.n();
  header(out, "pancyclic", g);
  out << "search=" << search << "\n";
  if (search != "oracle" && search != "constructive")
    throw PreconditionViolated("--search must be oracle or constructive");
  if (search == "oracle" && n > cap) {
    out << "status=precondition_unmet\nreason=exhaustive search is capped at n=" << cap << "\n";
    return kPreconditionUnmet;
  }
  const AbsorberParams params = params_of(pf);
  if (search == "constructive") out << params.to_text();

  const int lengths = std::max(0, n - 1);
  const int count = 2 * n * lengths;
  std::vector<Cell> cells(static_cast<std::size_t>(count));
  parallel_for(count, jobs, [&](int idx) {
    const Vertex u = g.vertex(idx / lengths);
    const int k = 4 + 2 * (idx % lengths);
    Cell& cell = cells[idx];
    if (search == "oracle") {
      cell.witness = find_pc_cycle_through(g, u, k);
      cell.status = cell.witness ? "witness" : "none";
    } else {
      try {
        const EvenCycleResult r = find_pc_even_cycle_through(g, u, k, params);
        cell.witness = r.cycle;
        cell.status = "witness";
        cell.detail = "regime=" + to_string(r.regime) + " attempts=" + std::to_string(r.attempts);
      } catch (const RegimeFailure& e) {
        cell.status = "failed";
        cell.detail = std::string("stage=") + e.stage();
      }
    }
    // Re-verify every witness independently of the search that produced it.
    if (cell.witness) {
      const auto& w = *cell.witness;
      const bool ok = !walk_defect(g, w) && w.is_cycle() && is_properly_colored(g, w) &&
                      static_cast<int>(w.size()) == k && w.contains(u);
      if (!ok) {
        cell.status = "invalid";
        cell.witness.reset();
      }
    }
  });

  int witnessed = 0;
  std::vector<AlternatingWalk> witnesses;
  for (int idx = 0; idx < count; ++idx) {
    const Cell& cell = cells[idx];
    out << "cell vertex=" << to_string(g.vertex(idx / lengths)) << " length=" << 4 + 2 * (idx % lengths)
        << " status=" << cell.status;
    if (!cell.detail.empty()) out << " " << cell.detail;
    out << "\n";
    if (cell.witness) {
      ++witnessed;
      witnesses.push_back(*cell.witness);
    }
  }
  const bool verdict = witnessed == count;
  out << "cells=" << count << "\nwitnessed=" << witnessed << "\nverdict=" << (verdict ? "pancyclic" : "incomplete")
      << "\n";
  if (!out_path.empty()) {
    write_walks(out_path, "witness cycles in cell order", witnesses);
    const auto back = read_walks(out_path, WalkKind::Cycle);
    bool ok = back.size() == witnesses.size();
    for (const auto& w : back) ok = ok && !walk_defect(g, w) && is_properly_colored(g, w);
    out << "out=" << out_path << "\nreread=" << (ok ? "pass" : "fail") << "\n";
    if (!ok) return kIoError;
  }
  return verdict ? kSuccess : kStuck;
}

struct HuntRow {
  int n = 0;
  std::string base;
  int offset = 0;
  int delta = 0;
  int trials = 0;
  int gen_failed = 0;
  int success = 0;
  int stuck = 0;
  int precondition = 0;
  int oracle_exists = -1;  // -1: oracle not run
  int discrepancies = 0;
};

struct TrialOutcome {
  bool generated = false;
  int builder = 0;  // 1 factor, 2 stuck, 3 precondition
  int oracle = -1;
};

TrialOutcome hunt_trial(const GenSpec& spec, int t, int cap) {
  TrialOutcome o;
  ColoredBipartiteGraph g;
  try {
    g = generate(spec);
  } catch (const GenerationFailure&) {
    return o;
  }
  o.generated = true;
  try {
    // Hunts probe below the guaranteed range, so small sides are searched as well.
    const FactorResult r = find_pc_2factor(g, t, nullptr, FactorOptions{false});
    o.builder = std::holds_alternative<TwoFactor>(r) ? 1 : 2;
  } catch (const PreconditionViolated&) {
    o.builder = 3;
  }
  if (g.n() <= cap) o.oracle = has_pc_two_factor(g, t, cap) ? 1 : 0;
  return o;
}

int cmd_hunt(int n_min, int n_max, int n_step, int t, const std::vector<int>& offsets, int trials,
             std::uint64_t seed, int jobs, int cap, std::ostream& out) {
  if (n_min < 2 || n_max < n_min || n_step < 1) throw PreconditionViolated("need 2 <= n-min <= n-max and n-step >= 1");
  if (trials < 1) throw PreconditionViolated("--trials must be positive");
  out << "command=hunt\nt=" << t << "\ntrials=" << trials << "\nseed=" << seed << "\noracle_cap=" << cap << "\n";
  out << "# n base offset delta trials gen_failed success stuck precondition oracle_exists discrepancies "
         "success_rate\n";
  const SplitRng root(seed);
  for (int n = n_min; n <= n_max; n += n_step) {
    std::vector<HuntRow> rows;
    for (const std::string base : {"theorem", "half"}) {
      const int anchor = base == "theorem" ? (2 * n + 2) / 3 + t : (n + 1) / 2;
      for (int off : offsets) rows.push_back({n, base, off, std::clamp(anchor + off, 1, n), trials});
    }
    rows.push_back({n, "mono", 0, 1, 1});
    for (std::size_t r = 0; r < rows.size(); ++r) {
      HuntRow& row = rows[r];
      std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(row.trials));
      parallel_for(row.trials, jobs, [&](int i) {
        GenSpec spec;
        spec.n = n;
        if (row.base == "mono") {
          spec.mode = GenMode::Monochromatic;
        } else {
          spec.mode = GenMode::RandomMinDegree;
          spec.delta = row.delta;
          spec.palette = row.delta;
          spec.seed = root.split(static_cast<std::uint64_t>(n) * 1000003ULL + r * 1009ULL + i).engine()();
        }
        outcomes[i] = hunt_trial(spec, t, cap);
      });
      for (const auto& o : outcomes) {
        if (!o.generated) {
          ++row.gen_failed;
          continue;
        }
        row.success += o.builder == 1;
        row.stuck += o.builder == 2;
        row.precondition += o.builder == 3;
        if (o.oracle >= 0) {
          row.oracle_exists = std::max(row.oracle_exists, 0) + o.oracle;
          row.discrepancies += o.oracle == 1 && o.builder == 2;
        }
      }
      const int ran = row.success + row.stuck;
      out << "n=" << row.n << " base=" << row.base << " offset=" << row.offset << " delta=" << row.delta
          << " trials=" << row.trials << " gen_failed=" << row.gen_failed << " success=" << row.success
          << " stuck=" << row.stuck << " precondition=" << row.precondition << " oracle_exists="
          << (row.oracle_exists < 0 ? std::string("na") : std::to_string(row.oracle_exists))
          << " discrepancies=" << row.discrepancies << " success_rate=";
      if (ran == 0) out << "na";
      else out << std::fixed << std::setprecision(3) << static_cast<double>(row.success) / ran << std::defaultfloat;
      out << "\n";
    }
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Properly colored cycles and 2-factors in edge-colored K_{n,n}", "pcc"};
  app.require_subcommand(1);

  Source src;
  ParamFlags pf;
  std::string out_path, factor_path, search = "constructive", offsets_text = "-2,-1,0,1,2";
  int t = 3, cap = kDefaultPancyclicCap, jobs = 1, trials = 20, n_min = 9, n_max = 15, n_step = 3;
  int hunt_cap = 6;

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  add_source(gen, src);
  gen->add_option("--out", out_path, "Instance file to write");

  auto* factor = app.add_subcommand("factor", "Build a PC 2-factor with cycles of length >= t");
  add_source(factor, src);
  factor->add_option("--t", t, "Minimum cycle length");
  factor->add_option("--out", out_path, "Factor file to write");

  auto* cover = app.add_subcommand("cover", "Cover by PC odd paths");
  add_source(cover, src);
  cover->add_option("--t", t, "Minimum cycle length of the underlying factor");
  cover->add_option("--out", out_path, "Path file to write");

  auto* verify = app.add_subcommand("verify", "Verify a factor file against an instance");
  add_source(verify, src);
  verify->add_option("--factor", factor_path, "Factor file")->required();
  verify->add_option("--t", t, "Minimum cycle length");

  auto* pancyclic = app.add_subcommand("pancyclic", "Check vertex-even-pancyclicity cell by cell");
  add_source(pancyclic, src);
  add_params(pancyclic, pf);
  pancyclic->add_option("--search", search, "oracle (exhaustive) or constructive");
  pancyclic->add_option("--cap", cap, "Largest n for the exhaustive search");
  pancyclic->add_option("--jobs", jobs, "Worker threads");
  pancyclic->add_option("--out", out_path, "Witness file to write");

  auto* hunt = app.add_subcommand("hunt", "Sweep random instances around the degree thresholds");
  hunt->add_option("--n-min", n_min, "Smallest n");
  hunt->add_option("--n-max", n_max, "Largest n");
  hunt->add_option("--n-step", n_step, "Step in n");
  hunt->add_option("--t", t, "Minimum cycle length");
  hunt->add_option("--offsets", offsets_text, "Comma-separated offsets from each threshold");
  hunt->add_option("--trials", trials, "Instances per row");
  hunt->add_option("--seed", src.seed, "Master seed");
  hunt->add_option("--jobs", jobs, "Worker threads");
  hunt->add_option("--cap", hunt_cap, "Largest n checked by the 2-factor oracle");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kPreconditionUnmet;
  }

  try {
    if (*gen) return cmd_gen(src, out_path, out);
    if (*factor) return cmd_factor(src, t, out_path, out);
    if (*cover) return cmd_cover(src, t, out_path, out);
    if (*verify) return cmd_verify(src, factor_path, t, out);
    if (*pancyclic) return cmd_pancyclic(src, search, pf, cap, jobs, out_path, out);
    if (*hunt) {
      std::vector<int> offsets;
      std::stringstream ss(offsets_text);
      for (std::string tok; std::getline(ss, tok, ',');) offsets.push_back(std::stoi(tok));
      return cmd_hunt(n_min, n_max, n_step, t, offsets, trials, src.seed, jobs, hunt_cap, out);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const InvalidInstance& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const PreconditionViolated& e) {
    out << "status=precondition_unmet\nreason=" << e.what() << "\n";
    return kPreconditionUnmet;
  } catch (const InvalidParams& e) {
    out << "status=precondition_unmet\nreason=" << e.what() << "\n";
    return kPreconditionUnmet;
  } catch (const std::invalid_argument& e) {
    err << "error: bad argument: " << e.what() << "\n";
    return kPreconditionUnmet;
  } catch (const Error& e) {
    out << "status=failure\nreason=" << e.what() << "\n";
    return kStuck;
  }
  return kPreconditionUnmet;
}

}  // namespace pcc::cli
