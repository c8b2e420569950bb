#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "tileroute/circuit.hpp"
#include "tileroute/coord.hpp"

namespace tileroute {

/// Undirected basis-graph edge, stored with endpoints in lexicographic order.
struct Edge {
  QuditCoord a, b;

  Edge() = default;
  Edge(QuditCoord u, QuditCoord v) : a(u), b(v) {
    if (b < a) std::swap(a, b);
  }
  friend auto operator<=>(const Edge&, const Edge&) = default;

  [[nodiscard]] Edge translated(int dx, int dy) const { return {a.translated(dx, dy), b.translated(dx, dy)}; }
  [[nodiscard]] bool touches(const QuditCoord& v) const { return a == v || b == v; }
  [[nodiscard]] QuditCoord other(const QuditCoord& v) const { return v == a ? b : a; }
};

/// Two edges are translation-equivalent iff they normalize to the same
/// representative (lex-smaller endpoint moved to cell (0,0)).
inline Edge translation_class_representative(const Edge& e) { return e.translated(-e.a.x, -e.a.y); }

/// Finite generator of an infinite lattice graph.
struct BasisGraph {
  std::string name;
  std::vector<QuditCoord> vertices;  // the central cell, (0,0,s)
  std::vector<Edge> edges;

  [[nodiscard]] int n_seeds() const {
    std::set<int> seeds;
    for (const auto& v : vertices) seeds.insert(v.s);
    return static_cast<int>(seeds.size());
  }
};

/// Invariant check for basis graphs: congruent seeds, attachment, minimality.
/// Returns human-readable problems; empty means the graph is well formed.
inline std::vector<std::string> basis_graph_problems(const BasisGraph& b) {
  std::vector<std::string> out;
  std::set<int> seeds;
  for (const auto& v : b.vertices) {
    if (v.x != 0 || v.y != 0) out.push_back("vertex " + to_string(v) + " outside the central cell");
    if (v.s < 0) out.push_back("negative seed on vertex " + to_string(v));
    if (!seeds.insert(v.s).second) out.push_back("duplicate seed " + std::to_string(v.s));
  }
  const int n = static_cast<int>(seeds.size());
  for (int s = 0; s < n; ++s)
    if (!seeds.count(s)) out.push_back("seeds are not congruent: missing " + std::to_string(s));

  std::set<Edge> reps;
  for (const auto& e : b.edges) {
    if (e.a == e.b) out.push_back("self-loop at " + to_string(e.a));
    for (const auto& v : {e.a, e.b})
      if (!seeds.count(v.s)) out.push_back("edge endpoint " + to_string(v) + " has an unknown seed");
    if (e.a.x == e.b.x && e.a.y == e.b.y && (e.a.x != 0 || e.a.y != 0))
      out.push_back("edge fully inside non-central cell (" + std::to_string(e.a.x) + "," + std::to_string(e.a.y) + ")");
    if (!reps.insert(translation_class_representative(e)).second)
      out.push_back("redundant edge (translation class repeated): " + to_string(e.a) + "-" + to_string(e.b));
  }
  return out;
}

/// Edges of the lattice graph restricted to translations in the given cell
/// ranges (inclusive), deduplicated.
inline std::set<Edge> lattice_edges(const BasisGraph& b, int xlo, int xhi, int ylo, int yhi) {
  std::set<Edge> out;
  for (int dx = xlo; dx <= xhi; ++dx)
    for (int dy = ylo; dy <= yhi; ++dy)
      for (const auto& e : b.edges) out.insert(e.translated(dx, dy));
  return out;
}

/// Largest cell extent of any edge: 1 for nearest-neighbour graphs, 2 for
/// J1J2-style next-nearest edges.
inline int max_edge_reach(const BasisGraph& b) {
  int r = 1;
  for (const auto& e : b.edges)
    r = std::max({r, std::abs(e.a.x - e.b.x), std::abs(e.a.y - e.b.y)});
  return r;
}

/// Maximum vertex degree of the induced infinite lattice graph (evaluated on
/// the central cell; translates of the basis edges within reach +-2 suffice
/// for reach-one graphs, J1J2-style next-nearest edges included).
inline int lattice_max_degree(const BasisGraph& b) {
  auto edges = lattice_edges(b, -2, 2, -2, 2);
  int best = 0;
  for (const auto& v : b.vertices) {
    int deg = 0;
    for (const auto& e : edges)
      if (e.touches(v)) ++deg;
    best = std::max(best, deg);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Reseeding: express the patch P_{n,m} as a single larger-cell basis graph
// with fresh seeds. Vertices with 0 <= x < n, 0 <= y < m move to the central
// cell; everything else is remapped by floor division with the remainder
// selecting the new seed.

struct Reseeder {
  int n = 1, m = 1, seeds_in = 1;

  [[nodiscard]] int new_seed(int rx, int ry, int s) const { return (rx * m + ry) * seeds_in + s; }

  [[nodiscard]] QuditCoord map(const QuditCoord& q) const {
    const int cx = floor_div(q.x, n), cy = floor_div(q.y, m);
    return {cx, cy, new_seed(floor_mod(q.x, n), floor_mod(q.y, m), q.s)};
  }

  /// Inverse of map(): recover the original-lattice coordinate.
  [[nodiscard]] QuditCoord unmap(const QuditCoord& q) const {
    const int rx = q.s / (m * seeds_in);
    const int rest = q.s % (m * seeds_in);
    return {q.x * n + rx, q.y * m + rest / seeds_in, rest % seeds_in};
  }
};

inline BasisGraph reseed_graph(const BasisGraph& b, int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("reseed factors must be >= 1");
  Reseeder rs{n, m, b.n_seeds()};
  BasisGraph out;
  out.name = b.name + "[" + std::to_string(n) + "x" + std::to_string(m) + "]";
  for (int s = 0; s < n * m * rs.seeds_in; ++s) out.vertices.push_back({0, 0, s});
  std::set<Edge> edges;
  for (int dx = 0; dx < n; ++dx)
    for (int dy = 0; dy < m; ++dy)
      for (const auto& e : b.edges) {
        Edge moved{rs.map(e.a.translated(dx, dy)), rs.map(e.b.translated(dx, dy))};
        edges.insert(translation_class_representative(moved));
      }
  out.edges.assign(edges.begin(), edges.end());
  return out;
}

inline BasisCircuit reseed_circuit(const BasisCircuit& c, int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("reseed factors must be >= 1");
  std::set<int> seeds;
  for (const auto& q : c.all_qudits()) seeds.insert(q.s);
  Reseeder rs{n, m, static_cast<int>(seeds.size())};
  auto patch = make_patch_traced(c, {n, m, 1});
  BasisCircuit out;
  out.name = c.name + "[" + std::to_string(n) + "x" + std::to_string(m) + "]";
  out.gates = std::move(patch.circuit.gates);
  for (auto& g : out.gates)
    for (auto& q : g.qudits) q = rs.map(q);
  for (const auto& q : patch.circuit.declared_qudits) out.declared_qudits.insert(rs.map(q));
  return out;
}

}  // namespace tileroute
