#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcc/graph.hpp"

namespace pcc {

int color_degree(const ColoredBipartiteGraph& g, const Vertex& v);
int min_color_degree(const ColoredBipartiteGraph& g);
/// Largest number of same-colored edges at a single vertex.
int max_mono_degree(const ColoredBipartiteGraph& g);

/// Every two consecutive edges (including the wrap-around pair of a cycle) differ in color.
/// Does not check structure; see `walk_defect`.
bool is_properly_colored(const ColoredBipartiteGraph& g, const AlternatingWalk& w);

/// First structural problem of a walk (invalid vertex, repeated vertex, two consecutive
/// vertices on one side, cycle of odd length or shorter than 4), or nullopt if well formed.
std::optional<std::string> walk_defect(const ColoredBipartiteGraph& g, const AlternatingWalk& w);

struct Check {
  std::string name;
  bool passed = true;
  std::string witness;
};

/// Ordered list of named pass/fail checks. Serializes as one `name=pass|fail[; witness]` line each.
class VerificationReport {
 public:
  void add(std::string name, bool passed, std::string witness = {});
  bool passed() const;
  const std::vector<Check>& checks() const { return checks_; }
  const Check* find(const std::string& name) const;
  std::string to_text() const;

 private:
  std::vector<Check> checks_;
};

/// Checks: well_formed, spanning, disjoint, properly_colored, min_length (>= t).
VerificationReport verify_two_factor(const ColoredBipartiteGraph& g, const TwoFactor& f, int t);

/// Same checks restricted to a vertex subset: the factor must cover exactly `domain`.
VerificationReport verify_two_factor_on(const ColoredBipartiteGraph& g, const TwoFactor& f, int t,
                                        const VertexSet& domain);

/// Checks that `h` is a 1^{(t)}-path-cycle: PC path, PC cycles of length >= t, disjointness.
VerificationReport verify_path_cycle_system(const ColoredBipartiteGraph& g, const PathCycleSystem& h,
                                            int t);

}  // namespace pcc
