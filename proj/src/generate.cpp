#include "pcc/generate.hpp"

#include <algorithm>
#include <numeric>

#include "pcc/errors.hpp"
#include "pcc/verify.hpp"

namespace pcc {
namespace {

std::vector<Color> latin(int n, int modulus) {
  std::vector<Color> colors(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) colors[static_cast<std::size_t>(i) * n + j] = (i + j) % modulus;
  return colors;
}

// Per-vertex color histograms so a single recoloring can be checked in O(1).
class DegreeTracker {
 public:
  DegreeTracker(int n, int palette, const std::vector<Color>& colors)
      : n_(n), palette_(palette), counts_(static_cast<std::size_t>(2 * n) * palette, 0), distinct_(2 * n, 0) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        add(i, colors[static_cast<std::size_t>(i) * n + j]);
        add(n + j, colors[static_cast<std::size_t>(i) * n + j]);
      }
  }

  // Would replacing `from` by `to` at vertex v keep its color degree >= delta?
  bool keeps(int v, Color from, Color to, int delta) const {
    if (from == to) return true;
    int d = distinct_[v];
    if (count(v, from) == 1) --d;
    if (count(v, to) == 0) ++d;
    return d >= delta;
  }

  void recolor(int v, Color from, Color to) {
    remove(v, from);
    add(v, to);
  }

 private:
  int count(int v, Color c) const { return counts_[static_cast<std::size_t>(v) * palette_ + c]; }
  void add(int v, Color c) {
    if (counts_[static_cast<std::size_t>(v) * palette_ + c]++ == 0) ++distinct_[v];
  }
  void remove(int v, Color c) {
    if (--counts_[static_cast<std::size_t>(v) * palette_ + c] == 0) --distinct_[v];
  }

  int n_;
  int palette_;
  std::vector<int> counts_;
  std::vector<int> distinct_;
};

std::vector<Color> random_min_degree(const GenSpec& spec) {
  const int n = spec.n;
  const int q = spec.palette;
  std::vector<Color> colors = latin(n, q);
  DegreeTracker tracker(n, q, colors);
  SplitRng rng(spec.seed);
  const long attempts = 10L * n * n;
  for (long a = 0; a < attempts; ++a) {
    const int i = rng.uniform(0, n - 1);
    const int j = rng.uniform(0, n - 1);
    const Color to = rng.uniform(0, q - 1);
    Color& cell = colors[static_cast<std::size_t>(i) * n + j];
    if (!tracker.keeps(i, cell, to, spec.delta) || !tracker.keeps(n + j, cell, to, spec.delta)) continue;
    tracker.recolor(i, cell, to);
    tracker.recolor(n + j, cell, to);
    cell = to;
  }
  return colors;
}

std::vector<Color> adversarial_star(const GenSpec& spec) {
  const int n = spec.n;
  std::vector<Color> colors = latin(n, n);
  SplitRng rng(spec.seed);
  const int center = rng.uniform(0, n - 1);
  std::vector<int> columns(static_cast<std::size_t>(n));
  std::iota(columns.begin(), columns.end(), 0);
  std::shuffle(columns.begin(), columns.end(), rng.engine());
  const Color star_color = colors[static_cast<std::size_t>(center) * n + columns[0]];
  for (int k = 0; k < spec.star_size; ++k) colors[static_cast<std::size_t>(center) * n + columns[k]] = star_color;
  return colors;
}

}  // namespace

std::string to_string(GenMode mode) {
  switch (mode) {
    case GenMode::Latin: return "latin";
    case GenMode::Rainbow: return "rainbow";
    case GenMode::Monochromatic: return "mono";
    case GenMode::RandomMinDegree: return "random";
    case GenMode::AdversarialStar: return "star";
  }
  return "unknown";
}

GenMode parse_gen_mode(const std::string& text) {
  if (text == "latin") return GenMode::Latin;
  if (text == "rainbow") return GenMode::Rainbow;
  if (text == "mono" || text == "monochromatic") return GenMode::Monochromatic;
  if (text == "random" || text == "random_min_degree") return GenMode::RandomMinDegree;
  if (text == "star" || text == "adversarial_star") return GenMode::AdversarialStar;
  throw PreconditionViolated("unknown generator mode '" + text + "'");
}

void validate(const GenSpec& spec) {
  if (spec.n < 2) throw PreconditionViolated("n must be at least 2");
  if (spec.mode == GenMode::RandomMinDegree) {
    if (spec.delta < 1 || spec.delta > spec.n)
      throw PreconditionViolated("delta must lie in [1, n]");
    if (spec.palette < spec.delta) throw PreconditionViolated("palette size q must be >= delta");
  }
  if (spec.mode == GenMode::AdversarialStar && (spec.star_size < 1 || spec.star_size > spec.n))
    throw PreconditionViolated("star size must lie in [1, n]");
}

ColoredBipartiteGraph generate(const GenSpec& spec) {
  validate(spec);
  const int n = spec.n;
  switch (spec.mode) {
    case GenMode::Latin: return ColoredBipartiteGraph(n, latin(n, n));
    case GenMode::Rainbow: {
      std::vector<Color> colors(static_cast<std::size_t>(n) * n);
      std::iota(colors.begin(), colors.end(), 0);
      return ColoredBipartiteGraph(n, std::move(colors));
    }
    case GenMode::Monochromatic: return ColoredBipartiteGraph(n, std::vector<Color>(static_cast<std::size_t>(n) * n, 0));
    case GenMode::RandomMinDegree: {
      ColoredBipartiteGraph g(n, random_min_degree(spec));
      if (min_color_degree(g) < spec.delta)
        throw GenerationFailure("random coloring fell below the target minimum color degree");
      return g;
    }
    case GenMode::AdversarialStar: return ColoredBipartiteGraph(n, adversarial_star(spec));
  }
  throw PreconditionViolated("unhandled generator mode");
}

}  // namespace pcc
