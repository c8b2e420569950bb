#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "tileroute/circuit.hpp"

namespace tileroute {

// Execution order of gates: by (time, list position) when times are present,
// plain list position otherwise.
inline std::vector<int> execution_order(const BasisCircuit& c) {
  std::vector<int> idx(c.gates.size());
  std::iota(idx.begin(), idx.end(), 0);
  if (c.all_times_present()) {
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return *c.gates[a].time < *c.gates[b].time; });
  }
  return idx;
}

/// ASAP scheduling of the wrapped circuit: impose periodic boundary conditions
/// (all cells to (0,0), so a wrapped qudit is just a seed number), place each
/// gate at the earliest layer free on all its wrapped qudits, then restore the
/// original coordinates.
inline BasisCircuit schedule(const BasisCircuit& c) {
  BasisCircuit out = c;
  std::map<int, int> avail;  // seed -> first free layer
  for (int i : execution_order(c)) {
    const Gate& g = c.gates[i];
    int t = 0;
    for (const auto& q : g.qudits) {
      auto it = avail.find(q.s);
      if (it != avail.end()) t = std::max(t, it->second);
    }
    out.gates[i].time = t;
    for (const auto& q : g.qudits) avail[q.s] = t + 1;
  }
  return out;
}

/// Direct dependencies of the wrapped circuit: (id of parent, id of child) for
/// every DAG edge, i.e. for consecutive gates on a shared wrapped wire.
inline std::vector<std::pair<int, int>> gate_dependencies(const BasisCircuit& c) {
  std::vector<std::pair<int, int>> deps;
  std::set<std::pair<int, int>> seen;
  std::map<int, int> last_on_wire;  // seed -> gate index
  for (int i : execution_order(c)) {
    const Gate& g = c.gates[i];
    std::set<int> seeds;
    for (const auto& q : g.qudits) seeds.insert(q.s);
    for (int s : seeds) {
      auto it = last_on_wire.find(s);
      if (it != last_on_wire.end() && it->second != i) {
        auto pair = std::make_pair(c.gates[it->second].id, g.id);
        if (seen.insert(pair).second) deps.push_back(pair);
      }
    }
    for (int s : seeds) last_on_wire[s] = i;
  }
  return deps;
}

/// Longest gate chain through the wrapped DAG. A gate touching the same seed
/// with both of its qudits occupies two slots on that wire (its spatial
/// translate collides with it), so such a gate contributes length 2 there.
inline int critical_path_depth(const BasisCircuit& c) {
  std::map<int, int> wire_len;  // seed -> accumulated chain length
  int depth = 0;
  for (int i : execution_order(c)) {
    const Gate& g = c.gates[i];
    std::map<int, int> touches;
    for (const auto& q : g.qudits) ++touches[q.s];
    int start = 0;
    for (const auto& [s, cnt] : touches) {
      auto it = wire_len.find(s);
      if (it != wire_len.end()) start = std::max(start, it->second);
    }
    for (const auto& [s, cnt] : touches) {
      wire_len[s] = start + cnt;
      depth = std::max(depth, wire_len[s]);
    }
  }
  return depth;
}

/// Minimum feasible routed depth when the gate order is not fixed: every gate
/// touching seed s needs its own layer there (the qudit map is seed-to-seed),
/// so the bound is the largest per-seed touch count. Equals the lattice max
/// degree for a Trotter-step circuit with one gate per edge.
inline int seed_touch_bound(const BasisCircuit& c) {
  std::map<int, int> touches;
  for (const auto& g : c.gates)
    for (const auto& q : g.qudits) ++touches[q.s];
  int bound = 0;
  for (const auto& [s, cnt] : touches) bound = std::max(bound, cnt);
  return bound;
}

/// Lower bound seeding the depth search: the critical path when the gate
/// order must be respected, the per-seed touch bound otherwise.
inline int routing_lower_bound(const BasisCircuit& c, bool gate_dependencies_respected) {
  if (c.gates.empty()) return 0;
  return gate_dependencies_respected ? critical_path_depth(c) : seed_touch_bound(c);
}

}  // namespace tileroute
