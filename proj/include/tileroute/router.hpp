#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "tileroute/verifier.hpp"

namespace tileroute {

class RoutingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Postprocessing after a SAT model: keep one representative per (time,
/// translation class) of SWAPs, namely the copy along the hardware basis
/// graph edge (unique by minimality), mark gates that fully absorb a SWAP,
/// and assemble a physical basis circuit that is valid as-is.
inline BasisCircuit select_swap_representatives(const RawAssignment& raw,
                                                const BasisGraph& hardware,
                                                std::vector<SwapPlacement>* placements = nullptr) {
  std::set<Edge> basis_edges(hardware.edges.begin(), hardware.edges.end());
  BasisCircuit physical;
  for (const auto& g : raw.gates) {
    Gate out;
    out.id = g.id;
    out.label = g.label;
    out.qudits = g.qudits;
    out.time = g.time;
    physical.gates.push_back(std::move(out));
  }
  int next_id = 0;
  for (const auto& g : physical.gates) next_id = std::max(next_id, g.id + 1);

  for (const auto& rec : raw.swap_classes_active) {
    if (!basis_edges.count(rec.basis_edge))
      throw RoutingError("internal error: swap representative " + to_string(rec.basis_edge.a) +
                         "-" + to_string(rec.basis_edge.b) +
                         " is not a hardware basis edge (redundant edges?)");
    // merged when a placed two-qudit gate fully overlaps a translated copy;
    // at most one gate can (equal times on shared seeds are excluded)
    bool merged = false;
    for (auto& g : physical.gates) {
      if (g.time != rec.time || g.qudits.size() != 2 || is_swap_gate(g) ||
          carries_merged_swap(g))
        continue;
      Edge ge(g.qudits[0], g.qudits[1]);
      if (translation_class_representative(ge) ==
          translation_class_representative(rec.basis_edge)) {
        g.label += kMergedSuffix;
        merged = true;
        break;
      }
    }
    if (placements) placements->push_back({rec.time, rec.basis_edge, merged});
    if (!merged) {
      Gate sw;
      sw.id = next_id++;
      sw.label = kSwapLabel;
      sw.qudits = {rec.basis_edge.a, rec.basis_edge.b};
      sw.time = rec.time;
      physical.gates.push_back(std::move(sw));
    }
  }
  return physical;
}

namespace detail {

inline void finish_stats(RoutedSolution& sol, int lower_bound) {
  sol.stats.lower_bound = lower_bound;
  sol.stats.depth_overhead = sol.stats.depth - lower_bound;
  sol.stats.depth_overhead_percent =
      lower_bound > 0 ? 100.0 * sol.stats.depth_overhead / lower_bound : 0.0;
  sol.stats.total_swaps = static_cast<int>(sol.swaps.size());
  sol.stats.naked_swaps = 0;
  for (const auto& sw : sol.swaps) sol.stats.naked_swaps += sw.merged ? 0 : 1;
  sol.stats.qudit_overhead = sol.hardware.n_seeds() - sol.logical.n_seeds();
}

inline void rebuild_swap_copies(RoutedSolution& sol) {
  sol.swap_copies.clear();
  for (const auto& sw : sol.swaps)
    for (const auto& copy : zone_touching_copies(sw.edge, sol.hardware, sol.options.delta))
      sol.swap_copies.push_back({sw.time, copy});
}

inline RoutedSolution assemble_solution(const RoutingProblem& p, const SmtFormula& f,
                                        const RawAssignment& raw, int lower_bound) {
  RoutedSolution sol;
  sol.logical = p.logical;
  sol.hardware = p.hardware;
  sol.options = p.options;
  sol.physical = select_swap_representatives(raw, p.hardware, &sol.swaps);
  sol.physical.name = p.logical.name + "@" + p.hardware.name;
  for (size_t i = 0; i < f.logical_qudits.size(); ++i) {
    sol.initial_map[f.logical_qudits[i]] = raw.map_at.front()[i];
    sol.final_map[f.logical_qudits[i]] = raw.map_at.back()[i];
  }
  for (const auto& q : sol.initial_map) sol.physical.declared_qudits.insert(q.second);
  sol.stats.depth = raw.D;
  rebuild_swap_copies(sol);
  finish_stats(sol, lower_bound);

  // the SMT objectives, when present, must agree with the recount
  if (!raw.objective_values.empty() && p.options.merge_swaps && p.options.minimize_swaps &&
      raw.objective_values.front() != sol.stats.naked_swaps)
    throw RoutingError("internal error: naked-SWAP recount disagrees with the solver objective");
  return sol;
}

inline void verify_or_throw(const RoutedSolution& sol) {
  VerifyReport rep = verify(sol.logical, sol, sol.hardware, sol.options, {3, 3, 2});
  if (!rep.pass())
    throw RoutingError("internal error: solution failed verification\n" + rep.summary());
}

inline RoutedSolution route_single(const RoutingProblem& p, SolverSession& session) {
  auto res = route_min_depth(p, session);
  RawAssignment raw = extract(res.model, res.formula, p.logical);
  RoutedSolution sol = assemble_solution(p, res.formula, raw, res.lower_bound);
  verify_or_throw(sol);
  return sol;
}

/// Stitch sequentially routed slices into one physical basis circuit and
/// reschedule it to recover parallelism lost at the seams. Rescheduling keeps
/// the per-seed operation order, so maps, collisions and dependency order all
/// survive; SWAP records follow their carrier operations to the new times.
inline RoutedSolution stitch_slices(const RoutingProblem& p, std::vector<RoutedSolution> slices,
                                    int lower_bound) {
  RoutedSolution sol;
  sol.logical = p.logical;
  sol.hardware = p.hardware;
  sol.options = p.options;
  sol.initial_map = slices.front().initial_map;
  sol.final_map = slices.back().final_map;

  BasisCircuit stitched;
  stitched.name = p.logical.name + "@" + p.hardware.name;
  int offset = 0, next_id = 0;
  for (const auto& slice : slices) {
    for (const auto& g : slice.physical.gates) {
      Gate c = g;
      c.id = next_id++;
      c.time = *g.time + offset;
      stitched.gates.push_back(std::move(c));
    }
    offset += slice.stats.depth;
  }
  sol.physical = schedule(stitched);
  sol.physical.name = stitched.name;
  for (const auto& q : sol.initial_map) sol.physical.declared_qudits.insert(q.second);

  // swap records at the rescheduled times, located via their carrier ops
  size_t cursor = 0;
  for (const auto& slice : slices) {
    std::map<std::pair<int, Edge>, int> new_time;  // (slice-local time, op edge) -> new time
    for (const auto& g : slice.physical.gates) {
      const Gate& r = sol.physical.gates[cursor++];
      if (g.qudits.size() == 2) new_time[{*g.time, Edge(g.qudits[0], g.qudits[1])}] = *r.time;
    }
    for (const auto& sw : slice.swaps) {
      int t = -1;
      for (const auto& [key, nt] : new_time)
        if (key.first == sw.time &&
            translation_class_representative(key.second) ==
                translation_class_representative(sw.edge)) {
          t = nt;
          break;
        }
      if (t < 0) throw RoutingError("internal error: lost a SWAP while stitching slices");
      sol.swaps.push_back({t, sw.edge, sw.merged});
    }
  }
  std::sort(sol.swaps.begin(), sol.swaps.end(), [](const SwapPlacement& a, const SwapPlacement& b) {
    return std::tie(a.time, a.edge.a, a.edge.b) < std::tie(b.time, b.edge.a, b.edge.b);
  });

  sol.stats.depth = sol.physical.depth();
  rebuild_swap_copies(sol);
  finish_stats(sol, lower_bound);
  return sol;
}

inline RoutedSolution route_sliced(const RoutingProblem& p, SolverSession& session) {
  const int sd = *p.options.slice_depth;
  BasisCircuit scheduled = schedule(p.logical);
  scheduled.declared_qudits = p.logical.all_qudits();
  const int full_depth = scheduled.depth();
  const int n_slices = (full_depth + sd - 1) / sd;
  if (n_slices <= 1) {
    RoutingProblem single = p;
    single.options.slice_depth.reset();
    single.logical = scheduled;
    return route_single(single, session);
  }

  std::vector<RoutedSolution> slices;
  std::map<QuditCoord, QuditCoord> carry;  // final map of the previous slice
  std::map<QuditCoord, QuditCoord> first_initial;
  for (int si = 0; si < n_slices; ++si) {
    BasisCircuit part;
    part.name = scheduled.name + "#" + std::to_string(si);
    for (const auto& g : scheduled.gates)
      if (*g.time >= si * sd && *g.time < (si + 1) * sd) {
        Gate c = g;
        c.time = *g.time - si * sd;
        part.gates.push_back(std::move(c));
      }
    // every logical qudit rides through every slice, idle ones included
    part.declared_qudits = scheduled.all_qudits();

    RoutingProblem sub;
    sub.logical = std::move(part);
    sub.hardware = p.hardware;
    sub.options = p.options;
    sub.options.slice_depth.reset();
    sub.options.cyclic = false;
    if (si > 0) sub.fixed_initial_map = carry;
    if (si == n_slices - 1 && p.options.cyclic) sub.cyclic_target_map = first_initial;

    try {
      auto res = route_min_depth(sub, session);
      RawAssignment raw = extract(res.model, res.formula, sub.logical);
      RoutedSolution ssol = assemble_solution(sub, res.formula, raw, res.lower_bound);
      if (si == 0) first_initial = ssol.initial_map;
      carry = ssol.final_map;
      slices.push_back(std::move(ssol));
    } catch (const SolverTimeout& e) {
      throw RoutingError("slice " + std::to_string(si + 1) + " of " + std::to_string(n_slices) +
                         " failed: " + e.what());
    }
  }
  const int lb = routing_lower_bound(scheduled, p.options.gate_dependencies);
  RoutedSolution sol = stitch_slices(p, std::move(slices), lb);
  verify_or_throw(sol);
  return sol;
}

}  // namespace detail

/// Route a basis circuit onto a hardware basis graph: slice if requested,
/// search the minimal depth, decode, postprocess, and verify. A solution is
/// never returned unverified.
inline RoutedSolution route(const RoutingProblem& p, SolverSession& session) {
  require_valid(p);
  if (p.logical.gates.empty()) {
    RoutedSolution sol;
    sol.logical = p.logical;
    sol.hardware = p.hardware;
    sol.options = p.options;
    return sol;
  }
  if (p.options.slice_depth && p.logical.all_times_present())
    return detail::route_sliced(p, session);
  return detail::route_single(p, session);
}

}  // namespace tileroute
