#include "pcc/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace pcc {
namespace {

class CycleSearch {
 public:
  CycleSearch(const ColoredBipartiteGraph& g, int start, int length, std::uint64_t budget)
      : g_(g), length_(length), budget_(budget), used_(static_cast<std::size_t>(g.vertex_count()), false) {
    path_.reserve(static_cast<std::size_t>(length));
    path_.push_back(start);
    used_[start] = true;
  }

  bool run() { return extend(kFreshColor); }
  const std::vector<int>& path() const { return path_; }

 private:
  // Opposite-side vertices of `v` that are unused.
  std::vector<int> free_neighbors(int v) const {
    std::vector<int> out;
    const int n = g_.n();
    const int base = v < n ? n : 0;
    for (int k = 0; k < n; ++k)
      if (!used_[base + k]) out.push_back(base + k);
    return out;
  }

  int onward_options(int w, Color via) const {
    int count = 0;
    for (int z : free_neighbors(w))
      if (g_.color_by_id(w, z) != via) ++count;
    return count;
  }

  bool extend(Color last_color) {
    if (budget_ != 0 && ++nodes_ > budget_) throw SearchBudgetExceeded("cycle search exceeded its node budget");
    const int last = path_.back();
    if (static_cast<int>(path_.size()) == length_) {
      const int start = path_.front();
      const Color closing = g_.color_by_id(last, start);
      return closing != last_color && closing != g_.color_by_id(start, path_[1]);
    }
    std::vector<std::pair<int, int>> candidates;  // (onward options, vertex)
    for (int w : free_neighbors(last)) {
      const Color c = g_.color_by_id(last, w);
      if (c == last_color) continue;
      candidates.emplace_back(onward_options(w, c), w);
    }
    // Fail-first: try the most constrained continuation first.
    std::sort(candidates.begin(), candidates.end());
    for (const auto& [options, w] : candidates) {
      if (options == 0 && static_cast<int>(path_.size()) + 1 < length_) continue;
      path_.push_back(w);
      used_[w] = true;
      if (extend(g_.color_by_id(last, w))) return true;
      used_[w] = false;
      path_.pop_back();
    }
    return false;
  }

  const ColoredBipartiteGraph& g_;
  int length_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<bool> used_;
  std::vector<int> path_;
};

AlternatingWalk cycle_from_ids(const ColoredBipartiteGraph& g, const std::vector<int>& ids) {
  std::vector<Vertex> vs;
  vs.reserve(ids.size());
  for (int id : ids) vs.push_back(g.vertex(id));
  return AlternatingWalk::cycle(std::move(vs));
}

// Cycles of the 2-regular graph where x_i is joined to y_{sigma[i]} and y_{tau[i]}.
std::vector<AlternatingWalk> decompose(const std::vector<int>& sigma, const std::vector<int>& tau) {
  const int n = static_cast<int>(sigma.size());
  std::vector<int> sigma_inv(n), tau_inv(n);
  for (int i = 0; i < n; ++i) {
    sigma_inv[sigma[i]] = i;
    tau_inv[tau[i]] = i;
  }
  std::vector<bool> seen(n, false);
  std::vector<AlternatingWalk> cycles;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> vs;
    int x = s;
    // Leave every x via sigma and every y via tau^{-1}.
    do {
      seen[x] = true;
      vs.push_back(x_vertex(x));
      const int y = sigma[x];
      vs.push_back(y_vertex(y));
      x = tau_inv[y];
    } while (x != s);
    cycles.push_back(AlternatingWalk::cycle(std::move(vs)));
  }
  return cycles;
}

}  // namespace

std::optional<AlternatingWalk> find_pc_cycle_through(const ColoredBipartiteGraph& g, const Vertex& u, int k,
                                                     std::uint64_t node_budget) {
  if (k < 4 || k % 2 != 0 || k > 2 * g.n()) return std::nullopt;
  CycleSearch search(g, g.id(u), k, node_budget);
  if (!search.run()) return std::nullopt;
  return cycle_from_ids(g, search.path());
}

std::optional<AlternatingWalk> find_pc_4cycle_through(const ColoredBipartiteGraph& g, const Vertex& u) {
  const int n = g.n();
  if (n < 2) return std::nullopt;
  // Cycle u a w b with a, b on the other side and w on u's side.
  auto c = [&](int p, int q) { return u.side == Side::X ? g.color(p, q) : g.color(q, p); };
  const int s = u.index;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (c(s, a) == c(s, b)) continue;
      for (int w = 0; w < n; ++w) {
        if (w == s) continue;
        if (c(w, a) == c(s, a) || c(w, b) == c(s, b) || c(w, a) == c(w, b)) continue;
        const Side other = opposite(u.side);
        return AlternatingWalk::cycle({u, {other, a}, {u.side, w}, {other, b}});
      }
    }
  return std::nullopt;
}

namespace {

// Calls visit on each distinct PC 2-factor with all cycles of length >= t until it returns false.
void for_each_pc_two_factor(const ColoredBipartiteGraph& g, int t, int cap,
                            const std::function<bool(TwoFactor&&)>& visit) {
  const int n = g.n();
  if (n > cap)
    throw SideSizeTooLarge("two-factor enumeration is capped at n=" + std::to_string(cap) + ", got " +
                           std::to_string(n));
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::set<std::uint64_t> seen;

  std::vector<int> tau(n, -1);
  std::vector<int> sigma_inv(n);
  std::vector<bool> taken(n, false);
  bool stop = false;

  auto record = [&]() {
    std::uint64_t key = 0;
    for (int i = 0; i < n; ++i) {
      key |= std::uint64_t{1} << (i * n + sigma[i]);
      key |= std::uint64_t{1} << (i * n + tau[i]);
    }
    if (!seen.insert(key).second) return;
    TwoFactor f{decompose(sigma, tau)};
    if (static_cast<int>(f.min_cycle_length()) >= t) stop = !visit(std::move(f));
  };

  // tau is built row by row; PC at x_i and at y_{tau(i)} is enforced as soon as both edges exist.
  auto fill = [&](auto&& self, int i) -> void {
    if (i == n) {
      record();
      return;
    }
    for (int j = 0; j < n && !stop; ++j) {
      if (taken[j] || j == sigma[i]) continue;
      if (g.color(i, j) == g.color(i, sigma[i])) continue;
      if (g.color(i, j) == g.color(sigma_inv[j], j)) continue;
      taken[j] = true;
      tau[i] = j;
      self(self, i + 1);
      taken[j] = false;
    }
  };

  do {
    for (int i = 0; i < n; ++i) sigma_inv[sigma[i]] = i;
    fill(fill, 0);
  } while (!stop && std::next_permutation(sigma.begin(), sigma.end()));
}

}  // namespace

std::vector<TwoFactor> enumerate_pc_two_factors(const ColoredBipartiteGraph& g, int t, int cap) {
  std::vector<TwoFactor> out;
  for_each_pc_two_factor(g, t, cap, [&](TwoFactor&& f) {
    out.push_back(std::move(f));
    return true;
  });
  std::sort(out.begin(), out.end(),
            [](const TwoFactor& a, const TwoFactor& b) { return edge_set(a.cycles) < edge_set(b.cycles); });
  return out;
}

bool has_pc_two_factor(const ColoredBipartiteGraph& g, int t, int cap) {
  bool found = false;
  for_each_pc_two_factor(g, t, cap, [&](TwoFactor&&) {
    found = true;
    return false;
  });
  return found;
}

bool PancyclicReport::verdict() const {
  if (!complete) return false;
  for (const auto& row : cells)
    for (const auto& cell : row)
      if (!cell) return false;
  return true;
}

int PancyclicReport::witnessed() const {
  int count = 0;
  for (const auto& row : cells)
    for (const auto& cell : row)
      if (cell) ++count;
  return count;
}

int PancyclicReport::cell_count() const { return 2 * n * std::max(0, n - 1); }

PancyclicReport verify_vertex_even_pancyclic(const ColoredBipartiteGraph& g, int cap, std::uint64_t node_budget) {
  const int n = g.n();
  if (n > cap && node_budget == 0)
    throw SideSizeTooLarge("exhaustive pancyclicity check is capped at n=" + std::to_string(cap));
  PancyclicReport report;
  report.n = n;
  report.cells.assign(static_cast<std::size_t>(2 * n),
                      std::vector<std::optional<AlternatingWalk>>(static_cast<std::size_t>(std::max(0, n - 1))));
  for (int id = 0; id < 2 * n; ++id) {
    for (int k = 4; k <= 2 * n; k += 2) {
      try {
        report.cells[id][(k - 4) / 2] = find_pc_cycle_through(g, g.vertex(id), k, node_budget);
      } catch (const SearchBudgetExceeded&) {
        report.complete = false;
        throw BudgetExhausted(std::move(report));
      }
    }
  }
  return report;
}

}  // namespace pcc
