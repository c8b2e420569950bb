#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "tileroute/circuit.hpp"
#include "tileroute/graph.hpp"
#include "tileroute/json_io.hpp"
#include "tileroute/lattices.hpp"

namespace tileroute {

/// Trotter-step circuit for an arbitrary two-local Hamiltonian on b: one
/// unordered two-qudit gate per basis-graph edge. Single-qudit terms need no
/// connectivity and are omitted. Gates carry no times; the order (and with it
/// the schedule) is left to the router.
inline BasisCircuit atl_trotter_circuit(const BasisGraph& b) {
  BasisCircuit c;
  c.name = "atl-" + b.name;
  int id = 0;
  for (const auto& e : b.edges) {
    Gate g;
    g.id = id++;
    g.label = "U_ij";
    g.qudits = {e.a, e.b};  // already lexicographic
    c.gates.push_back(std::move(g));
  }
  for (const auto& v : b.vertices) c.declared_qudits.insert(v);
  return c;
}

/// One space-time cell of the Rule 54 quantum cellular automaton, decomposed
/// into two-qubit gates. The three-site update (center flipped when either
/// neighbor is set) is two CNOTs plus a Toffoli; the Toffoli uses the
/// standard controlled-sqrt(X) decomposition and the outer CNOTs merge into
/// the controlled gates acting on the same pairs. That leaves five two-qubit
/// gates per site, pairs (c,m),(a,c),(c,m),(a,c),(a,m) for neighbors a,c of
/// center m. The cell holds four sites; even centers fire before odd ones.
inline BasisCircuit rule54_circuit() {
  BasisCircuit c;
  c.name = "rule54";
  auto site = [](int i) -> QuditCoord { return {floor_div(i, 4), 0, floor_mod(i, 4)}; };
  int id = 0, t = 0;
  for (int center : {0, 2, 1, 3}) {
    QuditCoord a = site(center - 1), m = site(center), cc = site(center + 1);
    for (const auto& pair : {std::pair{cc, m}, {a, cc}, {cc, m}, {a, cc}, {a, m}}) {
      Gate g;
      g.id = id;
      g.label = "G" + std::to_string(id);
      g.qudits = {pair.first, pair.second};
      g.time = t++;
      c.gates.push_back(std::move(g));
      ++id;
    }
  }
  for (int s = 0; s < 4; ++s) c.declared_qudits.insert({0, 0, s});
  return c;
}

/// Load a basis circuit from a JSON document, rejecting schema errors and
/// (for timed circuits) Theorem-1 violations.
inline BasisCircuit load_circuit(const json& doc) {
  BasisCircuit c = circuit_from_json(doc);
  if (c.all_times_present()) {
    auto rep = validate_basis_circuit(c);
    if (!rep.valid()) throw ValidationError(std::move(rep));
  }
  return c;
}

inline BasisCircuit load_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open circuit file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON in " + path + ": " + e.what());
  }
  auto c = load_circuit(doc);
  if (c.name.empty()) c.name = path;
  return c;
}

inline BasisGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON in " + path + ": " + e.what());
  }
  return graph_from_json(doc);
}

}  // namespace tileroute
