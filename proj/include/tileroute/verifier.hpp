#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tileroute/solution.hpp"

namespace tileroute {

/// Replay verdict. Check names mirror the routing contracts one to one:
/// consistency (gates act on the physical qudits holding their logical
/// qudits), connectivity (two-qudit operations on lattice edges), swap-swap /
/// gate-gate / gate-swap (no two operations share a qudit in a layer),
/// cyclicity, injectivity and mobility of the qudit map.
struct VerifyReport {
  struct Failure {
    std::string check;
    int time = 0;
    std::string location;
    std::string detail;
  };
  std::vector<Failure> failures;
  [[nodiscard]] bool pass() const { return failures.empty(); }

  [[nodiscard]] std::string summary() const {
    if (pass()) return "pass";
    std::string out = "fail:";
    for (const auto& f : failures)
      out += "\n  [" + f.check + "] t=" + std::to_string(f.time) + " at " + f.location + ": " +
             f.detail;
    return out;
  }
};

inline json to_json(const VerifyReport& rep) {
  json fails = json::array();
  for (const auto& f : rep.failures)
    fails.push_back(json{
        {"check", f.check}, {"time", f.time}, {"location", f.location}, {"detail", f.detail}});
  return json{{"pass", rep.pass()}, {"failures", std::move(fails)}};
}

/// Independent replay of a routed solution over a finite window: tile the
/// physical circuit via get_patch, walk it layer by layer tracking which
/// logical qudit occupies which physical qudit, and check every routing
/// contract against the logical circuit. Nothing here consults the encoder.
///
/// Logical qudits are identified by their absolute lattice coordinate, so the
/// copy of qudit (1,0,s) owned by tile (0,0) and the copy of (0,0,s) owned by
/// tile (1,0) are one qudit. For temporal repeats of non-cyclic solutions the
/// roles are rebound at each period from whatever occupies the initial sites,
/// which is exactly "the same unitary up to a reordering of the qudits".
inline VerifyReport verify(const BasisCircuit& logical, const RoutedSolution& sol,
                           const BasisGraph& hardware, const RoutingOptions& opts,
                           const PatchSpec& window) {
  VerifyReport rep;
  require_valid(window);
  const int delta = opts.delta;
  const int d = sol.stats.depth;
  if (d == 0) return rep;  // empty circuit: nothing to check
  SolutionPatch patch = get_patch_traced(sol, window);

  // hardware lattice adjacency over the window plus margin
  const int reach = max_edge_reach(hardware);
  auto lattice = lattice_edges(hardware, -delta - reach - 1, window.n + delta + reach,
                               -delta - reach - 1, window.m + delta + reach);

  std::map<int, const Gate*> logical_by_id;
  for (const auto& g : logical.gates) logical_by_id[g.id] = &g;

  // seed assignment of the initial map: absolute qudit (x,y,s) starts at
  // (x,y,S(s)) in every tile
  std::map<int, int> initial_seed;
  for (const auto& [q, pos] : sol.initial_map) {
    if (pos.x != q.x || pos.y != q.y)
      rep.failures.push_back({"consistency", 0, to_string(q),
                              "initial map is not cell-to-same-cell"});
    auto [it, fresh] = initial_seed.emplace(q.s, pos.s);
    if (!fresh && it->second != pos.s)
      rep.failures.push_back(
          {"consistency", 0, to_string(q), "initial map is not seed-to-seed"});
  }
  auto initial_pos = [&](const QuditCoord& abs_q) -> QuditCoord {
    return {abs_q.x, abs_q.y, initial_seed.at(abs_q.s)};
  };

  // occupant: physical position -> absolute logical qudit; pos_of: inverse
  std::map<QuditCoord, QuditCoord> occupant, pos_of;
  std::set<QuditCoord> abs_qudits;
  for (int dx = 0; dx < window.n; ++dx)
    for (int dy = 0; dy < window.m; ++dy)
      for (const auto& [q, pos] : sol.initial_map) abs_qudits.insert(q.translated(dx, dy));
  for (const auto& q : abs_qudits) {
    QuditCoord where = initial_pos(q);
    auto [it, fresh] = occupant.emplace(where, q);
    if (!fresh && !(it->second == q))
      rep.failures.push_back({"injectivity", 0, to_string(where),
                              "two logical qudits share the initial physical qudit"});
    pos_of[q] = where;
  }

  // ops by layer
  const int total_depth = patch.circuit.depth();
  std::vector<std::vector<int>> layers(total_depth);
  for (size_t i = 0; i < patch.circuit.gates.size(); ++i)
    layers[*patch.circuit.gates[i].time].push_back(static_cast<int>(i));

  // gate dependencies must stay ordered inside every tile and repeat
  if (opts.gate_dependencies) {
    std::map<std::tuple<int, int, int, int>, int> placed_time;  // (rep,dx,dy,id) -> t
    for (size_t i = 0; i < patch.circuit.gates.size(); ++i) {
      const auto& o = patch.origins[i];
      if (o.kind == PatchOpOrigin::kLogicalGate)
        placed_time[{o.repeat, o.dx, o.dy, o.source_gate_id}] = *patch.circuit.gates[i].time;
    }
    for (const auto& [a, b] : gate_dependencies(logical))
      for (const auto& [key, t] : placed_time) {
        auto [r, dx, dy, id] = key;
        if (id != a) continue;
        auto it = placed_time.find({r, dx, dy, b});
        if (it != placed_time.end() && !(t < it->second))
          rep.failures.push_back({"gate-gate", t,
                                  "tile " + std::to_string(dx) + "," + std::to_string(dy),
                                  "dependency order violated between gates " + std::to_string(a) +
                                      " and " + std::to_string(b)});
      }
  }

  // Role binding for the current temporal repeat (identity on the first).
  // Repeats of a non-cyclic solution relabel the qudits; a finite window only
  // carries complete information for tiles `repeat` cells away from its rim
  // (the map drifts at most one cell per period), so consistency of later
  // repeats is asserted on that trusted interior only.
  std::map<QuditCoord, QuditCoord> role;
  auto tile_trusted = [&](int repeat, int dx, int dy) {
    return dx >= repeat && dx <= window.n - 1 - repeat && dy >= repeat &&
           dy <= window.m - 1 - repeat;
  };
  auto rebind_roles = [&](int repeat, int t) {
    role.clear();
    for (int dx = 0; dx < window.n; ++dx)
      for (int dy = 0; dy < window.m; ++dy)
        for (const auto& [q, ipos] : sol.initial_map) {
          QuditCoord abs_q = q.translated(dx, dy);
          if (role.count(abs_q)) continue;
          auto it = occupant.find(initial_pos(abs_q));
          if (it == occupant.end()) {
            if (tile_trusted(repeat, dx, dy))
              rep.failures.push_back(
                  {"consistency", t, to_string(initial_pos(abs_q)),
                   "temporal repeat " + std::to_string(repeat) +
                       " starts with no logical qudit on an initially occupied site"});
            continue;
          }
          role[abs_q] = it->second;
        }
  };

  for (int t = 0; t < total_depth; ++t) {
    if (t % d == 0) rebind_roles(t / d, t);

    // collision scan: no two operations touch one qudit in a layer
    std::map<QuditCoord, std::vector<int>> touched;
    for (int idx : layers[t])
      for (const auto& q : patch.circuit.gates[idx].qudits) touched[q].push_back(idx);
    for (const auto& [pos, ops] : touched)
      if (ops.size() > 1) {
        int swaps = 0;
        for (int idx : ops) swaps += is_swap_gate(patch.circuit.gates[idx]) ? 1 : 0;
        std::string check = swaps == static_cast<int>(ops.size()) ? "swap-swap"
                            : swaps == 0                          ? "gate-gate"
                                                                  : "gate-swap";
        rep.failures.push_back({check, t, to_string(pos),
                                std::to_string(ops.size()) + " operations touch this qudit"});
      }

    for (int idx : layers[t]) {
      const Gate& op = patch.circuit.gates[idx];
      const auto& origin = patch.origins[idx];
      // connectivity: every two-qudit operation runs along a lattice edge
      if (op.qudits.size() == 2 && !lattice.count(Edge(op.qudits[0], op.qudits[1])))
        rep.failures.push_back({"connectivity", t,
                                to_string(op.qudits[0]) + "-" + to_string(op.qudits[1]),
                                "operation off the hardware lattice (" + op.label + ")"});
      if (origin.kind != PatchOpOrigin::kLogicalGate) continue;
      // consistency: the gate's qudits hold the logical gate's qudits
      auto lg_it = logical_by_id.find(origin.source_gate_id);
      if (lg_it == logical_by_id.end() || lg_it->second->qudits.size() != op.qudits.size()) {
        rep.failures.push_back({"consistency", t, op.label, "no matching logical gate"});
        continue;
      }
      const Gate* lg = lg_it->second;
      if (!tile_trusted(origin.repeat, origin.dx, origin.dy)) continue;
      for (size_t slot = 0; slot < op.qudits.size(); ++slot) {
        QuditCoord expected_abs = lg->qudits[slot].translated(origin.dx, origin.dy);
        auto role_it = role.find(expected_abs);
        auto occ_it = occupant.find(op.qudits[slot]);
        if (role_it == role.end() || occ_it == occupant.end() ||
            !(occ_it->second == role_it->second))
          rep.failures.push_back(
              {"consistency", t, to_string(op.qudits[slot]),
               "gate " + std::to_string(lg->id) + " slot " + std::to_string(slot) +
                   " does not act on logical qudit " + to_string(expected_abs)});
      }
    }

    // apply this layer's transpositions (naked SWAPs and merged carriers)
    for (int idx : layers[t]) {
      const Gate& op = patch.circuit.gates[idx];
      if (!applies_transposition(op) || op.qudits.size() != 2) continue;
      auto a = occupant.find(op.qudits[0]);
      auto b = occupant.find(op.qudits[1]);
      if (a != occupant.end() && b != occupant.end()) {
        std::swap(a->second, b->second);
        pos_of[a->second] = op.qudits[0];
        pos_of[b->second] = op.qudits[1];
      } else if (a != occupant.end()) {
        occupant[op.qudits[1]] = a->second;
        pos_of[a->second] = op.qudits[1];
        occupant.erase(op.qudits[0]);
      } else if (b != occupant.end()) {
        occupant[op.qudits[0]] = b->second;
        pos_of[b->second] = op.qudits[0];
        occupant.erase(op.qudits[1]);
      }
    }

    // mobility: each tile's copy of each qudit stays in that tile's zone
    for (int dx = 0; dx < window.n; ++dx)
      for (int dy = 0; dy < window.m; ++dy)
        for (const auto& [q, ipos] : sol.initial_map) {
          auto it = pos_of.find(q.translated(dx, dy));
          if (it == pos_of.end()) continue;
          if (std::abs(it->second.x - dx) > delta || std::abs(it->second.y - dy) > delta)
            rep.failures.push_back({"mobility", t, to_string(it->second),
                                    "logical qudit " + to_string(q) + " of tile " +
                                        std::to_string(dx) + "," + std::to_string(dy) +
                                        " left its mobility zone"});
        }

    // cyclicity at every period boundary
    if (opts.cyclic && (t + 1) % d == 0)
      for (const auto& q : abs_qudits) {
        auto it = occupant.find(initial_pos(q));
        if (it == occupant.end() || !(it->second == q)) {
          rep.failures.push_back({"cyclicity", t, to_string(initial_pos(q)),
                                  "final map differs from the initial map"});
          break;
        }
      }
  }
  return rep;
}

/// Basis-level map trace, exposed for property tests (seed-to-seed checks).
inline std::vector<std::map<QuditCoord, QuditCoord>> verify_trace(const RoutedSolution& sol) {
  return replay_basis_map(sol);
}

// ---------------------------------------------------------------------------
// Exhaustive router for tiny instances: enumerate seed assignments, per-layer
// SWAP subsets, and gate times/placements, filter by the verifier.

struct BruteForceResult {
  int depth = 0;
  RoutedSolution solution;
};

class BruteForceRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void all_injections(int from, int to, std::vector<std::vector<int>>& out) {
  std::vector<int> pick(from, -1);
  std::vector<bool> used(static_cast<size_t>(to), false);
  std::function<void(int)> rec = [&](int i) {
    if (i == from) {
      out.push_back(pick);
      return;
    }
    for (int v = 0; v < to; ++v)
      if (!used[v]) {
        used[v] = true;
        pick[i] = v;
        rec(i + 1);
        used[v] = false;
      }
  };
  rec(0);
}

}  // namespace detail

inline std::optional<BruteForceResult> brute_force_route(const RoutingProblem& p, int max_depth) {
  require_valid(p);
  const auto qudits = p.logical_qudits();
  const int n_gates = static_cast<int>(p.logical.gates.size());
  const int n_classes = static_cast<int>(p.hardware.edges.size());
  if (qudits.size() > 3 || n_gates > 3 || n_classes > 6)
    throw BruteForceRefusal("instance too large for brute force: " +
                            std::to_string(qudits.size()) + " qudits, " +
                            std::to_string(n_gates) + " gates, " + std::to_string(n_classes) +
                            " swap sites per layer");

  const int delta = p.options.delta;
  const int n_hw_seeds = p.hardware.n_seeds();
  std::set<int> logical_seeds;
  for (const auto& q : qudits) logical_seeds.insert(q.s);
  if (static_cast<int>(logical_seeds.size()) > n_hw_seeds) return std::nullopt;

  // swap members per class (translated copies able to touch the zone)
  auto in_zone = [&](const QuditCoord& v) {
    return std::abs(v.x) <= delta && std::abs(v.y) <= delta;
  };
  std::vector<std::vector<Edge>> members(n_classes);
  for (int k = 0; k < n_classes; ++k)
    members[k] = zone_touching_copies(p.hardware.edges[k], p.hardware, delta);

  // subsets of classes free of swap-swap seed collisions
  std::vector<std::vector<int>> subsets;
  for (int mask = 0; mask < (1 << n_classes); ++mask) {
    bool ok = true;
    for (int k = 0; k < n_classes && ok; ++k)
      for (int k2 = k + 1; k2 < n_classes && ok; ++k2) {
        if (!((mask >> k) & 1) || !((mask >> k2) & 1)) continue;
        const Edge &e = p.hardware.edges[k], &e2 = p.hardware.edges[k2];
        if (e.a.s == e2.a.s || e.a.s == e2.b.s || e.b.s == e2.a.s || e.b.s == e2.b.s) ok = false;
      }
    if (ok) {
      std::vector<int> classes;
      for (int k = 0; k < n_classes; ++k)
        if ((mask >> k) & 1) classes.push_back(k);
      subsets.push_back(std::move(classes));
    }
  }

  std::vector<std::vector<int>> seed_maps;
  detail::all_injections(static_cast<int>(logical_seeds.size()), n_hw_seeds, seed_maps);
  std::vector<int> seed_list(logical_seeds.begin(), logical_seeds.end());
  auto deps = gate_dependencies(p.logical);

  const int lb = std::max(1, routing_lower_bound(p.logical, p.options.gate_dependencies));
  for (int D = lb; D <= max_depth; ++D) {
    const int calD = p.options.cyclic ? D : D - 1;
    for (const auto& sm : seed_maps) {
      std::map<int, int> seed_of;
      for (size_t i = 0; i < seed_list.size(); ++i) seed_of[seed_list[i]] = sm[i];
      std::map<QuditCoord, QuditCoord> initial;
      for (const auto& q : qudits) initial[q] = {q.x, q.y, seed_of.at(q.s)};

      RoutedSolution found;
      std::vector<int> chosen(std::max(calD, 0), 0);
      auto lattice = lattice_edges(p.hardware, -delta - 2, delta + 2, -delta - 2, delta + 2);

      // try to place all gates given a full map trajectory; on success
      // assemble the candidate and let the verifier have the final word
      auto try_place = [&](const std::vector<std::map<QuditCoord, QuditCoord>>& maps) -> bool {
        std::vector<std::vector<int>> feasible(n_gates);
        for (int gi = 0; gi < n_gates; ++gi) {
          const Gate& g = p.logical.gates[gi];
          for (int t = 0; t < D; ++t) {
            const auto& m = maps[std::min<size_t>(t, maps.size() - 1)];
            if (g.qudits.size() == 1 ||
                lattice.count(Edge(m.at(g.qudits[0]), m.at(g.qudits[1]))))
              feasible[gi].push_back(t);
          }
          if (feasible[gi].empty()) return false;
        }
        std::vector<int> times(n_gates, -1);
        std::function<bool(int)> place = [&](int gi) -> bool {
          if (gi == n_gates) return true;
          for (int t : feasible[gi]) {
            times[gi] = t;
            bool ok = true;
            const auto& m = maps[std::min<size_t>(t, maps.size() - 1)];
            // seed-level gate-gate screen
            for (int gj = 0; gj < gi && ok; ++gj) {
              if (times[gj] != t) continue;
              for (const auto& qa : p.logical.gates[gi].qudits)
                for (const auto& qb : p.logical.gates[gj].qudits)
                  if (m.at(qa).s == m.at(qb).s) ok = false;
            }
            // seed-level gate-swap screen, with the merge waiver
            if (ok && t < calD) {
              for (int k : subsets[chosen[t]]) {
                const Edge& e = p.hardware.edges[k];
                bool overlap = false;
                if (p.options.merge_swaps && p.logical.gates[gi].qudits.size() == 2) {
                  Edge ge(m.at(p.logical.gates[gi].qudits[0]),
                          m.at(p.logical.gates[gi].qudits[1]));
                  overlap = translation_class_representative(ge) ==
                            translation_class_representative(e);
                }
                if (overlap) continue;
                for (const auto& q : p.logical.gates[gi].qudits)
                  if (m.at(q).s == e.a.s || m.at(q).s == e.b.s) ok = false;
              }
            }
            if (ok && p.options.gate_dependencies)
              for (const auto& [a, b] : deps) {
                int ia = -1, ib = -1;
                for (int x = 0; x < n_gates; ++x) {
                  if (p.logical.gates[x].id == a) ia = x;
                  if (p.logical.gates[x].id == b) ib = x;
                }
                if (ia >= 0 && ib >= 0 && times[ia] >= 0 && times[ib] >= 0 &&
                    !(times[ia] < times[ib]))
                  ok = false;
              }
            if (ok && place(gi + 1)) return true;
          }
          times[gi] = -1;
          return false;
        };
        if (!place(0)) return false;

        RoutedSolution sol;
        sol.logical = p.logical;
        sol.hardware = p.hardware;
        sol.options = p.options;
        sol.initial_map = initial;
        sol.final_map = maps.back();
        sol.stats.depth = D;
        sol.stats.lower_bound = lb;
        sol.stats.depth_overhead = D - lb;
        sol.stats.qudit_overhead = n_hw_seeds - static_cast<int>(seed_list.size());
        for (int gi = 0; gi < n_gates; ++gi) {
          Gate g = p.logical.gates[gi];
          const auto& m = maps[std::min<size_t>(times[gi], maps.size() - 1)];
          for (auto& q : g.qudits) q = m.at(q);
          g.time = times[gi];
          sol.physical.gates.push_back(std::move(g));
        }
        int next_id = n_gates;
        for (int t = 0; t < calD; ++t)
          for (int k : subsets[chosen[t]]) {
            const Edge& e = p.hardware.edges[k];
            bool merged = false;
            for (int gi = 0; gi < n_gates && !merged; ++gi) {
              if (times[gi] != t || sol.physical.gates[gi].qudits.size() != 2) continue;
              Edge ge(sol.physical.gates[gi].qudits[0], sol.physical.gates[gi].qudits[1]);
              if (translation_class_representative(ge) == translation_class_representative(e)) {
                merged = true;
                sol.physical.gates[gi].label += kMergedSuffix;
              }
            }
            sol.swaps.push_back({t, e, merged});
            for (const auto& member : members[k]) sol.swap_copies.push_back({t, member});
            if (!merged) {
              Gate g;
              g.id = next_id++;
              g.label = kSwapLabel;
              g.qudits = {e.a, e.b};
              g.time = t;
              sol.physical.gates.push_back(std::move(g));
            }
          }
        sol.stats.total_swaps = static_cast<int>(sol.swaps.size());
        for (const auto& sw : sol.swaps) sol.stats.naked_swaps += sw.merged ? 0 : 1;
        if (!verify(p.logical, sol, p.hardware, p.options, {3, 3, 2}).pass()) return false;
        found = std::move(sol);
        return true;
      };

      std::function<bool(int, std::vector<std::map<QuditCoord, QuditCoord>>&)> dfs =
          [&](int layer, std::vector<std::map<QuditCoord, QuditCoord>>& maps) -> bool {
        if (layer == calD) {
          if (p.options.cyclic && !(maps.back() == maps.front())) return false;
          return try_place(maps);
        }
        for (size_t si = 0; si < subsets.size(); ++si) {
          chosen[layer] = static_cast<int>(si);
          auto next = maps.back();
          bool ok = true;
          for (auto& [q, pos] : next) {
            for (int k : subsets[si])
              for (const auto& member : members[k])
                if (member.touches(pos)) {
                  pos = member.other(pos);
                  break;
                }
            if (!in_zone(pos)) ok = false;
          }
          if (!ok) continue;
          maps.push_back(std::move(next));
          if (dfs(layer + 1, maps)) return true;
          maps.pop_back();
        }
        return false;
      };
      std::vector<std::map<QuditCoord, QuditCoord>> maps{initial};
      if (dfs(0, maps)) return BruteForceResult{D, std::move(found)};
    }
  }
  return std::nullopt;
}

}  // namespace tileroute
