#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tileroute/circuit.hpp"
#include "tileroute/graph.hpp"

namespace tileroute {

/// Transpiler switches. Fixed before the SMT formula is built.
struct RoutingOptions {
  bool cyclic = false;             // final qudit map must equal the initial one
  bool gate_dependencies = true;   // respect the wrapped-DAG gate order
  bool merge_swaps = false;        // SWAPs may merge with fully overlapping gates
  std::optional<int> slice_depth;  // reschedule + route in slices of this depth
  bool minimize_swaps = true;      // after depth: naked SWAPs, then total SWAPs
  std::optional<int> fixed_naked_swaps;  // pin the naked-SWAP count instead
  int delta = 1;                   // mobility-zone radius in cells (fixed to 1)
  std::optional<std::chrono::milliseconds> solver_timeout;
};

inline std::vector<std::string> routing_options_problems(const RoutingOptions& o) {
  std::vector<std::string> out;
  if (o.fixed_naked_swaps && !o.merge_swaps)
    out.push_back("fixed_naked_swaps requires merge_swaps");
  if (o.fixed_naked_swaps && *o.fixed_naked_swaps < 0)
    out.push_back("fixed_naked_swaps must be non-negative");
  if (o.delta != 1) out.push_back("only delta = 1 is supported");
  if (o.slice_depth && *o.slice_depth < 1) out.push_back("slice_depth must be positive");
  return out;
}

/// A routing instance: reseeded logical circuit, reseeded hardware graph,
/// options, and (for slices) a pinned initial map.
struct RoutingProblem {
  BasisCircuit logical;
  BasisGraph hardware;
  RoutingOptions options;
  // slice support: pin the initial map, or demand a specific final map
  std::optional<std::map<QuditCoord, QuditCoord>> fixed_initial_map;
  std::optional<std::map<QuditCoord, QuditCoord>> cyclic_target_map;

  // all logical qudits take part in the map, idle declared ones included
  // (slices carry them between subproblems)
  [[nodiscard]] std::vector<QuditCoord> logical_qudits() const {
    auto all = logical.all_qudits();
    return {all.begin(), all.end()};
  }
};

inline std::vector<std::string> routing_problem_problems(const RoutingProblem& p) {
  std::vector<std::string> out = routing_options_problems(p.options);
  for (const auto& msg : basis_graph_problems(p.hardware)) out.push_back("hardware: " + msg);
  const int delta = p.options.delta;
  std::set<int> logical_seeds;
  for (const auto& q : p.logical.all_qudits()) {
    logical_seeds.insert(q.s);
    if (std::abs(q.x) > delta || std::abs(q.y) > delta)
      out.push_back("logical circuit reach exceeds one cell at " + to_string(q) +
                    "; reseed the circuit");
  }
  for (const auto& g : p.logical.gates) {
    if (g.qudits.size() == 2 && g.qudits[0].s == g.qudits[1].s)
      out.push_back("gate " + std::to_string(g.id) +
                    " acts on two qudits with seed " + std::to_string(g.qudits[0].s) +
                    "; such a gate collides with its own translate, reseed the circuit");
  }
  const int ls = static_cast<int>(logical_seeds.size());
  for (int s = 0; s < ls; ++s)
    if (!logical_seeds.count(s))
      out.push_back("logical circuit seeds are not congruent: missing " + std::to_string(s));
  for (const auto& e : p.hardware.edges)
    if (e.a.s == e.b.s)
      out.push_back("hardware edge " + to_string(e.a) + "-" + to_string(e.b) +
                    " joins two vertices with one seed; a SWAP there collides with its own "
                    "translate, reseed the graph");
  if (p.fixed_initial_map) {
    std::set<QuditCoord> targets;
    for (const auto& [q, Q] : *p.fixed_initial_map)
      if (!targets.insert(Q).second) out.push_back("fixed initial map is not injective");
  }
  return out;
}

inline void require_valid(const RoutingProblem& p) {
  auto problems = routing_problem_problems(p);
  if (!problems.empty()) {
    std::string msg = "invalid routing problem:";
    for (const auto& m : problems) msg += "\n  - " + m;
    throw std::invalid_argument(msg);
  }
}

}  // namespace tileroute
