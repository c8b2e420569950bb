#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tileroute/problem.hpp"
#include "tileroute/schedule.hpp"

namespace tileroute {

// One constraint family per SM-style constraint section; the audit in the
// tests enumerates these against the emitted assertion counts.
enum class ConstraintFamily {
  kMapping,
  kInjectivity,
  kFixedInitialMap,
  kTime,
  kConsistency,
  kConnectivity,
  kSwapEffect,
  kGateDependencies,
  kSwapSwapCollision,
  kGateGateCollision,
  kGateSwapCollision,
  kCyclicity,
  kObjectiveDefinition,
  kFixedNakedSwaps,
};

inline const char* family_name(ConstraintFamily f) {
  switch (f) {
    case ConstraintFamily::kMapping: return "mapping";
    case ConstraintFamily::kInjectivity: return "injectivity";
    case ConstraintFamily::kFixedInitialMap: return "fixed-initial-map";
    case ConstraintFamily::kTime: return "time";
    case ConstraintFamily::kConsistency: return "consistency";
    case ConstraintFamily::kConnectivity: return "connectivity";
    case ConstraintFamily::kSwapEffect: return "swap-effect";
    case ConstraintFamily::kGateDependencies: return "gate-dependencies";
    case ConstraintFamily::kSwapSwapCollision: return "swap-swap";
    case ConstraintFamily::kGateGateCollision: return "gate-gate";
    case ConstraintFamily::kGateSwapCollision: return "gate-swap";
    case ConstraintFamily::kCyclicity: return "cyclicity";
    case ConstraintFamily::kObjectiveDefinition: return "objective";
    case ConstraintFamily::kFixedNakedSwaps: return "fixed-naked-swaps";
  }
  return "?";
}

/// A translation class of SWAP sites: one basis-graph edge plus every
/// translated copy that can touch the mobility zone. All members share one
/// boolean variable per time step.
struct SwapClass {
  Edge basis_edge;
  std::vector<Edge> members;
};

/// Abstract SMT formula: declared variables, assertions tagged by family,
/// ordered minimization objectives, and the key tables needed to decode a
/// model back into a routing.
struct SmtFormula {
  int D = 0;      // trial depth
  int calD = 0;   // swap horizon: D when cyclic, D-1 otherwise
  int delta = 1;
  int n_seeds_hw = 0;
  std::vector<QuditCoord> logical_qudits;  // sorted
  std::vector<SwapClass> swap_classes;     // indexed like hardware.edges
  std::vector<Edge> allowed_edges;         // gates may land on these
  std::vector<QuditCoord> zone_vertices;   // mobility-zone vertices

  struct Variable {
    std::string name;
    bool is_bool = false;
  };
  struct Assertion {
    ConstraintFamily family;
    std::string text;
  };
  std::vector<Variable> variables;
  std::vector<Assertion> assertions;
  std::vector<std::string> objectives;  // auxiliary objective variable names, in order

  // -- variable names ------------------------------------------------------
  // Interning happens here: at T=0 every logical qudit with seed s shares the
  // variable is<s>, and all translated copies of a SWAP edge share sw<T>_<k>.
  [[nodiscard]] static std::string num(int v) {
    return v < 0 ? "m" + std::to_string(-v) : std::to_string(v);
  }
  [[nodiscard]] std::string map_var(int T, const QuditCoord& q, char field) const {
    if (T == 0 && field == 's') return "is" + std::to_string(q.s);
    return "q" + std::to_string(T) + "_" + num(q.x) + "_" + num(q.y) + "_" + num(q.s) + "_" + field;
  }
  [[nodiscard]] static std::string gate_time_var(int gate_idx) {
    return "g" + std::to_string(gate_idx) + "_t";
  }
  [[nodiscard]] static std::string gate_coord_var(int gate_idx, int slot, char field) {
    return "g" + std::to_string(gate_idx) + (slot == 0 ? "_a_" : "_b_") + field;
  }
  [[nodiscard]] static std::string swap_var(int T, int class_idx) {
    return "sw" + std::to_string(T) + "_" + std::to_string(class_idx);
  }

  void declare(const std::string& name, bool is_bool) { variables.push_back({name, is_bool}); }
  void assert_term(ConstraintFamily fam, std::string text) {
    assertions.push_back({fam, std::move(text)});
  }
};

// -- small term builders ----------------------------------------------------

namespace smt {
inline std::string lit(int v) {
  return v < 0 ? "(- " + std::to_string(-v) + ")" : std::to_string(v);
}
inline std::string eq(const std::string& a, const std::string& b) { return "(= " + a + " " + b + ")"; }
inline std::string not_(const std::string& a) { return "(not " + a + ")"; }
inline std::string imply(const std::string& a, const std::string& b) {
  return "(=> " + a + " " + b + ")";
}
inline std::string join(const char* op, const std::vector<std::string>& terms) {
  if (terms.empty()) return op[1] == 'n' ? "true" : "false";  // "and"->true, "or"->false
  if (terms.size() == 1) return terms[0];
  std::string out = "(";
  out += op;
  for (const auto& t : terms) {
    out += " ";
    out += t;
  }
  out += ")";
  return out;
}
inline std::string and_(const std::vector<std::string>& t) { return join("and", t); }
inline std::string or_(const std::vector<std::string>& t) { return join("or", t); }
inline std::string le(const std::string& a, const std::string& b) { return "(<= " + a + " " + b + ")"; }
inline std::string lt(const std::string& a, const std::string& b) { return "(< " + a + " " + b + ")"; }
inline std::string bool01(const std::string& b) { return "(ite " + b + " 1 0)"; }
}  // namespace smt

// Triple equality between a map/gate variable set and a concrete vertex.
inline std::string coords_equal(const SmtFormula& f, int T, const QuditCoord& q,
                                const QuditCoord& v) {
  using namespace smt;
  return and_({eq(f.map_var(T, q, 'x'), lit(v.x)), eq(f.map_var(T, q, 'y'), lit(v.y)),
               eq(f.map_var(T, q, 's'), lit(v.s))});
}
inline std::string gate_slot_equals(const SmtFormula& f, int gate_idx, int slot,
                                    const QuditCoord& v) {
  using namespace smt;
  return and_({eq(f.gate_coord_var(gate_idx, slot, 'x'), lit(v.x)),
               eq(f.gate_coord_var(gate_idx, slot, 'y'), lit(v.y)),
               eq(f.gate_coord_var(gate_idx, slot, 's'), lit(v.s))});
}

// Full spatial overlap of two-qudit gate g with a concrete edge, either
// orientation (h(g, e) in the merge rule).
inline std::string gate_overlaps_edge(const SmtFormula& f, int gate_idx, const Edge& e) {
  using namespace smt;
  return or_({and_({gate_slot_equals(f, gate_idx, 0, e.a), gate_slot_equals(f, gate_idx, 1, e.b)}),
              and_({gate_slot_equals(f, gate_idx, 0, e.b), gate_slot_equals(f, gate_idx, 1, e.a)})});
}

// ---------------------------------------------------------------------------

inline SmtFormula declare_variables(const RoutingProblem& p, int D) {
  const int lb = routing_lower_bound(p.logical, p.options.gate_dependencies);
  if (D < lb)
    throw std::invalid_argument("trial depth " + std::to_string(D) +
                                " is below the lower bound " + std::to_string(lb));
  SmtFormula f;
  f.D = D;
  f.delta = p.options.delta;
  f.calD = p.options.cyclic ? D : D - 1;
  f.n_seeds_hw = p.hardware.n_seeds();
  f.logical_qudits = p.logical_qudits();

  const int d = f.delta;
  auto in_zone = [d](const QuditCoord& v) {
    return v.x >= -d && v.x <= d && v.y >= -d && v.y <= d;
  };

  // Vertices a logical qudit can actually occupy: start cells (or the pinned
  // initial positions) closed under in-zone lattice edges. Restricting the
  // zone to this set drops unreachable parallel components (a chain patched
  // 3x3 contains two more chains no qudit can ever enter).
  std::set<Edge> zone_edges;
  for (int dx = -d; dx <= d; ++dx)
    for (int dy = -d; dy <= d; ++dy)
      for (const auto& e : p.hardware.edges) {
        Edge t = e.translated(dx, dy);
        if (in_zone(t.a) && in_zone(t.b)) zone_edges.insert(t);
      }
  std::set<QuditCoord> reachable;
  if (p.fixed_initial_map) {
    for (const auto& [q, target] : *p.fixed_initial_map) reachable.insert(target);
  } else {
    std::set<std::pair<int, int>> cells;
    for (const auto& q : f.logical_qudits) cells.insert({q.x, q.y});
    for (const auto& [cx, cy] : cells)
      for (const auto& v : p.hardware.vertices) reachable.insert(v.translated(cx, cy));
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& e : zone_edges) {
      if (reachable.count(e.a) && !reachable.count(e.b)) {
        reachable.insert(e.b);
        grew = true;
      }
      if (reachable.count(e.b) && !reachable.count(e.a)) {
        reachable.insert(e.a);
        grew = true;
      }
    }
  }
  f.zone_vertices.assign(reachable.begin(), reachable.end());

  // SWAP sites: translated copies able to touch the occupiable zone, one
  // class (one boolean per time step) per basis edge. The translate window
  // grows with the edge reach; for nearest-neighbour hardware it is the
  // (2d+3)x(2d+3) patch.
  const int ring = d + max_edge_reach(p.hardware);
  for (const auto& e : p.hardware.edges) {
    SwapClass cls;
    cls.basis_edge = e;
    for (int dx = -ring; dx <= ring; ++dx)
      for (int dy = -ring; dy <= ring; ++dy) {
        Edge t = e.translated(dx, dy);
        if (reachable.count(t.a) || reachable.count(t.b)) cls.members.push_back(t);
      }
    f.swap_classes.push_back(std::move(cls));
  }

  // gates may land on edges lying fully inside the occupiable zone
  for (const auto& e : zone_edges)
    if (reachable.count(e.a) && reachable.count(e.b)) f.allowed_edges.push_back(e);

  // qudit-map variables, with the T=0 seed interned per logical seed
  std::set<int> seeds_declared;
  for (const auto& q : f.logical_qudits) {
    f.declare(f.map_var(0, q, 'x'), false);
    f.declare(f.map_var(0, q, 'y'), false);
    if (seeds_declared.insert(q.s).second) f.declare(f.map_var(0, q, 's'), false);
  }
  for (int T = 1; T <= f.calD; ++T)
    for (const auto& q : f.logical_qudits)
      for (char c : {'x', 'y', 's'}) f.declare(f.map_var(T, q, c), false);

  // gate placement variables
  for (size_t i = 0; i < p.logical.gates.size(); ++i) {
    f.declare(f.gate_time_var(static_cast<int>(i)), false);
    const int slots = p.logical.gates[i].two_qudit() ? 2 : 1;
    for (int s = 0; s < slots; ++s)
      for (char c : {'x', 'y', 's'}) f.declare(f.gate_coord_var(static_cast<int>(i), s, c), false);
  }

  // one boolean per time step and translation class
  for (int T = 0; T < f.calD; ++T)
    for (size_t k = 0; k < f.swap_classes.size(); ++k)
      f.declare(f.swap_var(T, static_cast<int>(k)), true);

  return f;
}

inline void emit_mapping_constraints(SmtFormula& f, const RoutingProblem& p) {
  using namespace smt;
  // initial map is cell-to-same-cell; seeds land on existing vertices
  std::set<int> seeds_done;
  for (const auto& q : f.logical_qudits) {
    f.assert_term(ConstraintFamily::kMapping,
                  and_({eq(f.map_var(0, q, 'x'), lit(q.x)), eq(f.map_var(0, q, 'y'), lit(q.y))}));
    if (seeds_done.insert(q.s).second)
      f.assert_term(ConstraintFamily::kMapping,
                    and_({le("0", f.map_var(0, q, 's')),
                          lt(f.map_var(0, q, 's'), lit(f.n_seeds_hw))}));
  }
  // later maps stay inside the mobility zone
  for (int T = 1; T <= f.calD; ++T)
    for (const auto& q : f.logical_qudits)
      f.assert_term(ConstraintFamily::kMapping,
                    and_({le(lit(-f.delta), f.map_var(T, q, 'x')),
                          le(f.map_var(T, q, 'x'), lit(f.delta)),
                          le(lit(-f.delta), f.map_var(T, q, 'y')),
                          le(f.map_var(T, q, 'y'), lit(f.delta)),
                          le("0", f.map_var(T, q, 's')),
                          lt(f.map_var(T, q, 's'), lit(f.n_seeds_hw))}));
  // the qudit map is injective at every time
  for (int T = 0; T <= f.calD; ++T)
    for (size_t i = 0; i < f.logical_qudits.size(); ++i)
      for (size_t j = i + 1; j < f.logical_qudits.size(); ++j) {
        const auto &a = f.logical_qudits[i], &b = f.logical_qudits[j];
        f.assert_term(ConstraintFamily::kInjectivity,
                      not_(and_({eq(f.map_var(T, a, 'x'), f.map_var(T, b, 'x')),
                                 eq(f.map_var(T, a, 'y'), f.map_var(T, b, 'y')),
                                 eq(f.map_var(T, a, 's'), f.map_var(T, b, 's'))})));
      }
  // slices pin the initial map of every slice after the first
  if (p.fixed_initial_map)
    for (const auto& q : f.logical_qudits) {
      const auto& target = p.fixed_initial_map->at(q);
      f.assert_term(ConstraintFamily::kFixedInitialMap, coords_equal(f, 0, q, target));
    }
}

inline void emit_dynamics_constraints(SmtFormula& f, const RoutingProblem& p) {
  using namespace smt;
  const auto& gates = p.logical.gates;
  // all gates inside the allotted depth
  for (size_t i = 0; i < gates.size(); ++i)
    f.assert_term(ConstraintFamily::kTime,
                  and_({le("0", f.gate_time_var(static_cast<int>(i))),
                        lt(f.gate_time_var(static_cast<int>(i)), lit(f.D))}));
  // gates act on the physical qudits holding their logical qudits
  for (size_t i = 0; i < gates.size(); ++i)
    for (int T = 0; T < f.D; ++T) {
      std::vector<std::string> both;
      for (size_t slot = 0; slot < gates[i].qudits.size(); ++slot) {
        const auto& q = gates[i].qudits[slot];
        for (char c : {'x', 'y', 's'})
          both.push_back(eq(f.gate_coord_var(static_cast<int>(i), static_cast<int>(slot), c),
                            f.map_var(T, q, c)));
      }
      f.assert_term(ConstraintFamily::kConsistency,
                    imply(eq(f.gate_time_var(static_cast<int>(i)), lit(T)), and_(both)));
    }
  // two-qudit gates land on an allowed hardware edge, either orientation
  for (size_t i = 0; i < gates.size(); ++i) {
    if (!gates[i].two_qudit()) continue;
    std::vector<std::string> options;
    for (const auto& e : f.allowed_edges)
      options.push_back(gate_overlaps_edge(f, static_cast<int>(i), e));
    f.assert_term(ConstraintFamily::kConnectivity, or_(options));
  }
  // frame axiom: with every incident SWAP off, a qudit stays put.
  // Incidence is collected per vertex over all members; translated copies of
  // one class collapse onto the same boolean.
  std::map<QuditCoord, std::vector<std::pair<int, Edge>>> incident_members;
  for (size_t k = 0; k < f.swap_classes.size(); ++k)
    for (const auto& m : f.swap_classes[k].members) {
      incident_members[m.a].push_back({static_cast<int>(k), m});
      incident_members[m.b].push_back({static_cast<int>(k), m});
    }
  for (int T = 0; T < f.calD; ++T)
    for (const auto& q : f.logical_qudits)
      for (const auto& v : f.zone_vertices) {
        std::vector<std::string> premise{coords_equal(f, T, q, v)};
        std::set<int> classes;
        auto it = incident_members.find(v);
        if (it != incident_members.end())
          for (const auto& [k, m] : it->second) classes.insert(k);
        for (int k : classes) premise.push_back(not_(f.swap_var(T, k)));
        f.assert_term(ConstraintFamily::kSwapEffect,
                      imply(and_(premise), coords_equal(f, T + 1, q, v)));
      }
  // an active SWAP moves a resident qudit to the other end of its edge
  const std::set<QuditCoord> occupiable(f.zone_vertices.begin(), f.zone_vertices.end());
  for (int T = 0; T < f.calD; ++T)
    for (size_t k = 0; k < f.swap_classes.size(); ++k)
      for (const auto& m : f.swap_classes[k].members)
        for (int side = 0; side < 2; ++side) {
          const QuditCoord& from = side == 0 ? m.a : m.b;
          const QuditCoord& to = side == 0 ? m.b : m.a;
          if (!occupiable.count(from)) continue;  // nothing can reside there
          for (const auto& q : f.logical_qudits)
            f.assert_term(
                ConstraintFamily::kSwapEffect,
                imply(and_({coords_equal(f, T, q, from), f.swap_var(T, static_cast<int>(k))}),
                      coords_equal(f, T + 1, q, to)));
        }
}

inline void emit_collision_and_dependency_constraints(SmtFormula& f, const RoutingProblem& p) {
  using namespace smt;
  const auto& gates = p.logical.gates;
  // SWAP-SWAP: two active SWAPs never share a seed, in any translate
  for (int T = 0; T < f.calD; ++T)
    for (size_t k = 0; k < f.swap_classes.size(); ++k)
      for (size_t k2 = k + 1; k2 < f.swap_classes.size(); ++k2) {
        const Edge &e = f.swap_classes[k].basis_edge, &e2 = f.swap_classes[k2].basis_edge;
        const bool seed_clash = e.a.s == e2.a.s || e.a.s == e2.b.s || e.b.s == e2.a.s ||
                                e.b.s == e2.b.s;
        if (seed_clash)
          f.assert_term(
              ConstraintFamily::kSwapSwapCollision,
              not_(and_({f.swap_var(T, static_cast<int>(k)), f.swap_var(T, static_cast<int>(k2))})));
      }

  if (p.options.gate_dependencies) {
    std::map<int, int> idx_of;
    for (size_t i = 0; i < gates.size(); ++i) idx_of[gates[i].id] = static_cast<int>(i);
    for (const auto& [a, b] : gate_dependencies(p.logical))
      f.assert_term(ConstraintFamily::kGateDependencies,
                    lt(f.gate_time_var(idx_of.at(a)), f.gate_time_var(idx_of.at(b))));
  } else {
    // tileability of the physical basis circuit: equal times force distinct
    // seeds on every pair of qudit slots of every pair of gates
    for (size_t i = 0; i < gates.size(); ++i)
      for (size_t j = i + 1; j < gates.size(); ++j) {
        std::vector<std::string> neq;
        for (size_t a = 0; a < gates[i].qudits.size(); ++a)
          for (size_t b = 0; b < gates[j].qudits.size(); ++b)
            neq.push_back(not_(eq(f.gate_coord_var(static_cast<int>(i), static_cast<int>(a), 's'),
                                  f.gate_coord_var(static_cast<int>(j), static_cast<int>(b), 's'))));
        f.assert_term(ConstraintFamily::kGateGateCollision,
                      imply(eq(f.gate_time_var(static_cast<int>(i)),
                               f.gate_time_var(static_cast<int>(j))),
                            and_(neq)));
      }
  }

  // gate-SWAP: no shared seed at equal times; with merge_swaps the ban is
  // waived exactly when an active SWAP fully overlaps the gate
  for (int T = 0; T < f.calD; ++T)
    for (size_t i = 0; i < gates.size(); ++i) {
      std::vector<std::string> bans;
      for (size_t k = 0; k < f.swap_classes.size(); ++k) {
        const Edge& e = f.swap_classes[k].basis_edge;
        std::vector<std::string> seed_hits;
        for (size_t slot = 0; slot < gates[i].qudits.size(); ++slot)
          for (const auto& v : {e.a, e.b})
            seed_hits.push_back(
                eq(f.gate_coord_var(static_cast<int>(i), static_cast<int>(slot), 's'), lit(v.s)));
        bans.push_back(not_(and_({eq(f.gate_time_var(static_cast<int>(i)), lit(T)),
                                  f.swap_var(T, static_cast<int>(k)), or_(seed_hits)})));
      }
      if (!p.options.merge_swaps) {
        for (auto& ban : bans) f.assert_term(ConstraintFamily::kGateSwapCollision, ban);
      } else {
        std::vector<std::string> merged;
        if (gates[i].two_qudit())
          for (size_t k = 0; k < f.swap_classes.size(); ++k)
            for (const auto& m : f.swap_classes[k].members)
              merged.push_back(and_({eq(f.gate_time_var(static_cast<int>(i)), lit(T)),
                                     gate_overlaps_edge(f, static_cast<int>(i), m),
                                     f.swap_var(T, static_cast<int>(k))}));
        f.assert_term(ConstraintFamily::kGateSwapCollision, or_({and_(bans), or_(merged)}));
      }
    }
}

inline void emit_cyclicity_constraint(SmtFormula& f, const RoutingProblem& p) {
  using namespace smt;
  const bool last_slice = p.cyclic_target_map.has_value();
  if (!p.options.cyclic && !last_slice) return;  // not applicable: no-op
  for (const auto& q : f.logical_qudits) {
    if (last_slice) {
      f.assert_term(ConstraintFamily::kCyclicity,
                    coords_equal(f, f.calD, q, p.cyclic_target_map->at(q)));
    } else {
      std::vector<std::string> eqs;
      for (char c : {'x', 'y', 's'})
        eqs.push_back(eq(f.map_var(f.calD, q, c), f.map_var(0, q, c)));
      f.assert_term(ConstraintFamily::kCyclicity, and_(eqs));
    }
  }
}

// Naked-SWAP indicator n(T, k): the SWAP is active and no gate from the 3x3
// logical patch fully overlaps it at that time.
inline std::string naked_indicator(const SmtFormula& f, const RoutingProblem& p, int T, int k) {
  using namespace smt;
  const Edge& e = f.swap_classes[k].basis_edge;
  std::vector<std::string> overlaps;
  for (size_t i = 0; i < p.logical.gates.size(); ++i) {
    if (!p.logical.gates[i].two_qudit()) continue;
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        // translated gate copy overlapping e  <=>  gate overlapping e-(dx,dy)
        Edge shifted = e.translated(-dx, -dy);
        overlaps.push_back(and_({eq(f.gate_time_var(static_cast<int>(i)), lit(T)),
                                 gate_overlaps_edge(f, static_cast<int>(i), shifted)}));
      }
  }
  return and_({f.swap_var(T, k), not_(or_(overlaps))});
}

inline void emit_objectives(SmtFormula& f, const RoutingProblem& p) {
  using namespace smt;
  if (p.options.fixed_naked_swaps && !p.options.merge_swaps)
    throw std::invalid_argument("fixed_naked_swaps requires merge_swaps");
  if (!p.options.minimize_swaps && !p.options.fixed_naked_swaps) return;

  std::vector<std::string> total_terms;
  for (int T = 0; T < f.calD; ++T)
    for (size_t k = 0; k < f.swap_classes.size(); ++k)
      total_terms.push_back(bool01(f.swap_var(T, static_cast<int>(k))));
  const std::string total_sum =
      total_terms.empty() ? std::string("0") : "(+ " + [&] {
        std::string s;
        for (size_t i = 0; i < total_terms.size(); ++i) s += (i ? " " : "") + total_terms[i];
        return s;
      }() + ")";

  if (p.options.merge_swaps) {
    std::vector<std::string> naked_terms;
    for (int T = 0; T < f.calD; ++T)
      for (size_t k = 0; k < f.swap_classes.size(); ++k)
        naked_terms.push_back(bool01(naked_indicator(f, p, T, static_cast<int>(k))));
    std::string naked_sum = naked_terms.empty() ? std::string("0") : "(+ " + [&] {
      std::string s;
      for (size_t i = 0; i < naked_terms.size(); ++i) s += (i ? " " : "") + naked_terms[i];
      return s;
    }() + ")";
    f.declare("obj0", false);
    f.assert_term(ConstraintFamily::kObjectiveDefinition, eq("obj0", naked_sum));
    if (p.options.fixed_naked_swaps) {
      f.assert_term(ConstraintFamily::kFixedNakedSwaps,
                    eq("obj0", lit(*p.options.fixed_naked_swaps)));
    } else if (p.options.minimize_swaps) {
      f.objectives.push_back("obj0");
    }
    if (p.options.minimize_swaps) {
      f.declare("obj1", false);
      f.assert_term(ConstraintFamily::kObjectiveDefinition, eq("obj1", total_sum));
      f.objectives.push_back("obj1");
    }
  } else if (p.options.minimize_swaps) {
    f.declare("obj0", false);
    f.assert_term(ConstraintFamily::kObjectiveDefinition, eq("obj0", total_sum));
    f.objectives.push_back("obj0");
  }
}

/// Full encoding of a routing problem at trial depth D.
inline SmtFormula encode(const RoutingProblem& p, int D) {
  SmtFormula f = declare_variables(p, D);
  emit_mapping_constraints(f, p);
  emit_dynamics_constraints(f, p);
  emit_collision_and_dependency_constraints(f, p);
  emit_cyclicity_constraint(f, p);
  emit_objectives(f, p);
  return f;
}

/// Assertion counts per family, for the constraint audit.
inline std::map<std::string, int> audit(const SmtFormula& f) {
  std::map<std::string, int> counts;
  for (const auto& a : f.assertions) counts[family_name(a.family)]++;
  return counts;
}

struct RenderOptions {
  bool native_objectives = true;           // emit (minimize ...) directives
  std::vector<std::string> extra_assertions;  // bounds added by the fallback loop
  std::optional<int> timeout_ms;           // cooperative solver timeout
};

/// Stable, diffable SMT-LIB v2 text.
inline std::string render_smtlib(const SmtFormula& f, const RenderOptions& opts = {}) {
  std::ostringstream out;
  out << "(set-option :produce-models true)\n";
  if (opts.timeout_ms) out << "(set-option :timeout " << *opts.timeout_ms << ")\n";
  if (!f.objectives.empty() && opts.native_objectives)
    out << "(set-option :opt.priority lex)\n";
  for (const auto& v : f.variables)
    out << "(declare-const " << v.name << (v.is_bool ? " Bool" : " Int") << ")\n";
  for (const auto& a : f.assertions) out << "(assert " << a.text << ")\n";
  for (const auto& extra : opts.extra_assertions) out << "(assert " << extra << ")\n";
  if (opts.native_objectives)
    for (const auto& obj : f.objectives) out << "(minimize " << obj << ")\n";
  out << "(check-sat)\n";
  if (!f.variables.empty()) {
    out << "(get-value (";
    for (size_t i = 0; i < f.variables.size(); ++i) out << (i ? " " : "") << f.variables[i].name;
    out << "))\n";
  }
  return out.str();
}

}  // namespace tileroute
