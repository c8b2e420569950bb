#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tileroute/json_io.hpp"
#include "tileroute/problem.hpp"
#include "tileroute/schedule.hpp"
#include "tileroute/solver.hpp"

namespace tileroute {

// Label conventions in routed circuits: a naked SWAP is its own gate labelled
// "SWAP"; a SWAP merged into a two-qudit gate rides along as a "+SWAP" suffix
// on that gate's label (the pair is one physical operation).
inline const char* kSwapLabel = "SWAP";
inline const char* kMergedSuffix = "+SWAP";

inline bool is_swap_gate(const Gate& g) { return g.label == kSwapLabel; }
inline bool carries_merged_swap(const Gate& g) {
  return g.label.size() >= 5 && g.label.compare(g.label.size() - 5, 5, kMergedSuffix) == 0;
}
inline bool applies_transposition(const Gate& g) {
  return is_swap_gate(g) || carries_merged_swap(g);
}

struct SwapPlacement {
  int time = 0;
  Edge edge;           // the representative inside the hardware basis graph
  bool merged = false;  // absorbed into a fully overlapping two-qudit gate
};

struct RoutedStats {
  int depth = 0;
  int lower_bound = 0;
  int depth_overhead = 0;
  double depth_overhead_percent = 0.0;
  int naked_swaps = 0;
  int total_swaps = 0;
  int qudit_overhead = 0;
};

/// A verified routing of one basis circuit: the physical basis circuit, the
/// qudit maps, and the statistics reported in the result tables.
struct RoutedSolution {
  BasisCircuit logical;
  BasisGraph hardware;
  RoutingOptions options;
  BasisCircuit physical;              // placed gates plus naked SWAP gates
  std::vector<SwapPlacement> swaps;   // one entry per (time, translation class)
  std::vector<std::pair<int, Edge>> swap_copies;  // every zone-touching copy
  std::map<QuditCoord, QuditCoord> initial_map, final_map;
  RoutedStats stats;
};

/// Basis-level qudit trajectory: position of each logical qudit before layer
/// t, for t = 0..depth. Swap copies (not just representatives) drive the
/// moves, since translated copies act on the central tile too.
inline std::vector<std::map<QuditCoord, QuditCoord>> replay_basis_map(const RoutedSolution& sol) {
  std::vector<std::map<QuditCoord, QuditCoord>> maps{sol.initial_map};
  for (int t = 0; t < sol.stats.depth; ++t) {
    auto next = maps.back();
    for (auto& [q, pos] : next)
      for (const auto& [st, copy] : sol.swap_copies)
        if (st == t && copy.touches(pos)) {
          pos = copy.other(pos);
          break;
        }
    maps.push_back(std::move(next));
  }
  return maps;
}

// ---------------------------------------------------------------------------
// Patch emission. Origins let the verifier match physical operations to the
// logical gates they implement without re-deriving anything.

struct PatchOpOrigin {
  enum Kind { kLogicalGate, kSwap } kind = kLogicalGate;
  int source_gate_id = 0;  // for kLogicalGate
  int dx = 0, dy = 0;      // spatial tile
  int repeat = 0;          // temporal repeat index
};

struct SolutionPatch {
  BasisCircuit circuit;
  std::vector<PatchOpOrigin> origins;  // parallel to circuit.gates
};

/// Every translated copy of a SWAP edge that can touch the mobility zone;
/// the class of swaps one boolean stands for.
inline std::vector<Edge> zone_touching_copies(const Edge& e, const BasisGraph& hardware,
                                              int delta) {
  std::vector<Edge> out;
  const int ring = delta + max_edge_reach(hardware);
  for (int dx = -ring; dx <= ring; ++dx)
    for (int dy = -ring; dy <= ring; ++dy) {
      Edge t = e.translated(dx, dy);
      if ((std::abs(t.a.x) <= delta && std::abs(t.a.y) <= delta) ||
          (std::abs(t.b.x) <= delta && std::abs(t.b.y) <= delta))
        out.push_back(t);
    }
  return out;
}

namespace detail {

// positions holding a logical qudit at local time t, over all tiles
inline std::vector<std::set<QuditCoord>> occupied_positions(
    const RoutedSolution& sol, const PatchSpec& p,
    const std::vector<std::map<QuditCoord, QuditCoord>>& trajectory) {
  std::vector<std::set<QuditCoord>> occ(trajectory.size());
  for (size_t t = 0; t < trajectory.size(); ++t)
    for (int dx = 0; dx < p.n; ++dx)
      for (int dy = 0; dy < p.m; ++dy)
        for (const auto& [q, pos] : trajectory[t]) occ[t].insert(pos.translated(dx, dy));
  return occ;
}

}  // namespace detail

/// Tile the routed basis circuit into an n x m x l patch: logical gates and
/// in-patch naked SWAPs tile directly; boundary SWAP copies (from a ring of
/// surrounding tiles, wide enough for the edge reach plus the mobility zone)
/// are re-added wherever they act on a qudit that holds logical state.
inline SolutionPatch get_patch_traced(const RoutedSolution& sol, const PatchSpec& p) {
  require_valid(p);
  const int d = sol.stats.depth;
  const int delta = sol.options.delta;
  auto trajectory = replay_basis_map(sol);
  auto occ = detail::occupied_positions(sol, p, trajectory);

  SolutionPatch out;
  out.circuit.name = sol.physical.name;
  auto push = [&](Gate g, PatchOpOrigin origin) {
    g.id = static_cast<int>(out.circuit.gates.size());
    out.circuit.gates.push_back(std::move(g));
    out.origins.push_back(origin);
  };

  for (int rep = 0; rep < p.l; ++rep)
    for (int dx = 0; dx < p.n; ++dx)
      for (int dy = 0; dy < p.m; ++dy)
        for (const auto& g : sol.physical.gates) {
          if (is_swap_gate(g)) continue;  // swaps handled below, ring included
          Gate tg = translate(g, dx, dy, rep * d);
          push(std::move(tg), {PatchOpOrigin::kLogicalGate, g.id, dx, dy, rep});
        }

  const int ring = delta + max_edge_reach(sol.hardware);
  std::set<std::pair<int, Edge>> emitted;
  for (int rep = 0; rep < p.l; ++rep)
    for (const auto& sw : sol.swaps)
      for (int dx = -ring; dx < p.n + ring; ++dx)
        for (int dy = -ring; dy < p.m + ring; ++dy) {
          const bool in_core = dx >= 0 && dx < p.n && dy >= 0 && dy < p.m;
          if (sw.merged && in_core) continue;  // lives inside its gate
          Edge e = sw.edge.translated(dx, dy);
          const int t = sw.time + rep * d;
          if (!in_core) {
            // boundary copy: keep only if it acts on occupied qudits
            const auto& held = occ[std::min<size_t>(sw.time, occ.size() - 1)];
            if (!held.count(e.a) && !held.count(e.b)) continue;
          }
          if (!emitted.insert({t, e}).second) continue;
          Gate g;
          g.label = kSwapLabel;
          g.qudits = {e.a, e.b};
          g.time = t;
          push(std::move(g), {PatchOpOrigin::kSwap, -1, dx, dy, rep});
        }

  for (int dx = 0; dx < p.n; ++dx)
    for (int dy = 0; dy < p.m; ++dy)
      for (const auto& q : sol.physical.declared_qudits)
        out.circuit.declared_qudits.insert(q.translated(dx, dy));
  return out;
}

inline BasisCircuit get_patch(const RoutedSolution& sol, const PatchSpec& p) {
  return get_patch_traced(sol, p).circuit;
}

/// Tile-then-deduplicate variant: every zone-touching SWAP copy is tiled
/// uniformly and duplicates are removed, linear in the output size. Boundary
/// SWAPs acting on no logical qudit are kept, so the tiling stays uniform.
inline BasisCircuit get_patch_fast(const RoutedSolution& sol, const PatchSpec& p) {
  require_valid(p);
  const int d = sol.stats.depth;
  BasisCircuit out;
  out.name = sol.physical.name;
  for (int rep = 0; rep < p.l; ++rep)
    for (int dx = 0; dx < p.n; ++dx)
      for (int dy = 0; dy < p.m; ++dy)
        for (const auto& g : sol.physical.gates) {
          if (is_swap_gate(g)) continue;
          Gate tg = translate(g, dx, dy, rep * d);
          tg.id = static_cast<int>(out.gates.size());
          out.gates.push_back(std::move(tg));
        }
  // merged swaps already sit inside gates of in-core tiles
  std::set<std::pair<int, Edge>> inside_gates;
  for (const auto& sw : sol.swaps)
    if (sw.merged)
      for (int rep = 0; rep < p.l; ++rep)
        for (int dx = 0; dx < p.n; ++dx)
          for (int dy = 0; dy < p.m; ++dy)
            inside_gates.insert({sw.time + rep * d, sw.edge.translated(dx, dy)});
  std::set<std::pair<int, Edge>> copies;
  for (int rep = 0; rep < p.l; ++rep)
    for (const auto& [t, copy] : sol.swap_copies)
      for (int dx = 0; dx < p.n; ++dx)
        for (int dy = 0; dy < p.m; ++dy) {
          auto key = std::make_pair(t + rep * d, copy.translated(dx, dy));
          if (!inside_gates.count(key)) copies.insert(key);
        }
  for (const auto& [t, e] : copies) {
    Gate g;
    g.id = static_cast<int>(out.gates.size());
    g.label = kSwapLabel;
    g.qudits = {e.a, e.b};
    g.time = t;
    out.gates.push_back(std::move(g));
  }
  for (int dx = 0; dx < p.n; ++dx)
    for (int dy = 0; dy < p.m; ++dy)
      for (const auto& q : sol.physical.declared_qudits)
        out.declared_qudits.insert(q.translated(dx, dy));
  return out;
}

// ---------------------------------------------------------------------------
// Solution JSON (stable field names; the full problem rides along so that
// `verify` and `patch` work from a single file)

inline json to_json(const RoutingOptions& o) {
  json j{{"cyclic", o.cyclic},
         {"gate_dependencies", o.gate_dependencies},
         {"merge_swaps", o.merge_swaps},
         {"minimize_swaps", o.minimize_swaps},
         {"delta", o.delta}};
  j["slice_depth"] = o.slice_depth ? json(*o.slice_depth) : json(nullptr);
  j["fixed_naked_swaps"] = o.fixed_naked_swaps ? json(*o.fixed_naked_swaps) : json(nullptr);
  return j;
}

inline RoutingOptions options_from_json(const json& j) {
  RoutingOptions o;
  o.cyclic = j.value("cyclic", false);
  o.gate_dependencies = j.value("gate_dependencies", true);
  o.merge_swaps = j.value("merge_swaps", false);
  o.minimize_swaps = j.value("minimize_swaps", true);
  o.delta = j.value("delta", 1);
  if (j.contains("slice_depth") && !j["slice_depth"].is_null())
    o.slice_depth = j["slice_depth"].get<int>();
  if (j.contains("fixed_naked_swaps") && !j["fixed_naked_swaps"].is_null())
    o.fixed_naked_swaps = j["fixed_naked_swaps"].get<int>();
  return o;
}

inline json map_to_json(const std::map<QuditCoord, QuditCoord>& m) {
  json out = json::array();
  for (const auto& [q, Q] : m) out.push_back(json::array({to_json(q), to_json(Q)}));
  return out;
}

inline std::map<QuditCoord, QuditCoord> map_from_json(const json& j) {
  std::map<QuditCoord, QuditCoord> out;
  for (const auto& entry : j) out[coord_from_json(entry[0])] = coord_from_json(entry[1]);
  return out;
}

inline json to_json(const RoutedSolution& sol) {
  json swaps = json::array();
  for (const auto& sw : sol.swaps)
    swaps.push_back(json{{"time", sw.time},
                         {"edge", json::array({to_json(sw.edge.a), to_json(sw.edge.b)})},
                         {"merged", sw.merged}});
  json copies = json::array();
  for (const auto& [t, e] : sol.swap_copies)
    copies.push_back(json::array({t, to_json(e.a), to_json(e.b)}));
  return json{{"logical", to_json(sol.logical)},
              {"hardware", to_json(sol.hardware)},
              {"options", to_json(sol.options)},
              {"physical", to_json(sol.physical)},
              {"swaps", std::move(swaps)},
              {"swap_copies", std::move(copies)},
              {"initial_map", map_to_json(sol.initial_map)},
              {"final_map", map_to_json(sol.final_map)},
              {"stats", json{{"depth", sol.stats.depth},
                             {"lower_bound", sol.stats.lower_bound},
                             {"depth_overhead", sol.stats.depth_overhead},
                             {"depth_overhead_percent", sol.stats.depth_overhead_percent},
                             {"naked_swaps", sol.stats.naked_swaps},
                             {"total_swaps", sol.stats.total_swaps},
                             {"qudit_overhead", sol.stats.qudit_overhead}}}};
}

inline RoutedSolution solution_from_json(const json& j) {
  RoutedSolution sol;
  sol.logical = circuit_from_json(j.at("logical"));
  sol.hardware = graph_from_json(j.at("hardware"));
  sol.options = options_from_json(j.at("options"));
  sol.physical = circuit_from_json(j.at("physical"));
  for (const auto& sw : j.at("swaps"))
    sol.swaps.push_back({sw.at("time").get<int>(),
                         Edge(coord_from_json(sw.at("edge")[0]), coord_from_json(sw.at("edge")[1])),
                         sw.at("merged").get<bool>()});
  for (const auto& c : j.at("swap_copies"))
    sol.swap_copies.push_back({c[0].get<int>(), Edge(coord_from_json(c[1]), coord_from_json(c[2]))});
  sol.initial_map = map_from_json(j.at("initial_map"));
  sol.final_map = map_from_json(j.at("final_map"));
  const auto& st = j.at("stats");
  sol.stats.depth = st.at("depth").get<int>();
  sol.stats.lower_bound = st.at("lower_bound").get<int>();
  sol.stats.depth_overhead = st.at("depth_overhead").get<int>();
  sol.stats.depth_overhead_percent = st.at("depth_overhead_percent").get<double>();
  sol.stats.naked_swaps = st.at("naked_swaps").get<int>();
  sol.stats.total_swaps = st.at("total_swaps").get<int>();
  sol.stats.qudit_overhead = st.at("qudit_overhead").get<int>();
  return sol;
}

}  // namespace tileroute
