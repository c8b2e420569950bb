#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tileroute/graph.hpp"
#include "tileroute/json_io.hpp"

namespace tileroute {

// Built-in basis-graph database. Stored as a versioned JSON asset; each entry
// is one minimal, congruent-seed basis graph generating the named lattice.
// Vertices are the central cell; edges are one representative per translation
// class with the lexicographically smaller endpoint in cell (0,0).
inline const char* kLatticeDatabaseJson = R"JSON(
{
  "version": "1",
  "graphs": [
    {"name": "line", "vertices": [[0,0,0]],
     "edges": [[[0,0,0],[1,0,0]]]},
    {"name": "ladder", "vertices": [[0,0,0],[0,0,1]],
     "edges": [[[0,0,0],[0,0,1]], [[0,0,0],[1,0,0]], [[0,0,1],[1,0,1]]]},
    {"name": "square", "vertices": [[0,0,0]],
     "edges": [[[0,0,0],[1,0,0]], [[0,0,0],[0,1,0]]]},
    {"name": "plus-square", "vertices": [[0,0,0],[0,0,1],[0,0,2],[0,0,3],[0,0,4]],
     "edges": [[[0,0,0],[0,0,1]], [[0,0,0],[0,0,2]], [[0,0,0],[0,0,3]], [[0,0,0],[0,0,4]],
               [[0,0,1],[0,1,2]], [[0,0,1],[1,0,4]], [[0,0,2],[1,0,4]],
               [[0,0,2],[1,0,3]], [[0,0,1],[0,1,3]], [[0,0,4],[0,1,3]]]},
    {"name": "diamond-square", "vertices": [[0,0,0],[0,0,1]],
     "edges": [[[0,0,0],[0,0,1]], [[0,0,1],[1,0,0]], [[0,0,1],[0,1,0]], [[0,0,1],[1,1,0]]]},
    {"name": "honeycomb", "vertices": [[0,0,0],[0,0,1]],
     "edges": [[[0,0,0],[0,0,1]], [[0,0,1],[1,0,0]], [[0,0,1],[0,1,0]]]},
    {"name": "triangular", "vertices": [[0,0,0]],
     "edges": [[[0,0,0],[1,0,0]], [[0,0,0],[0,1,0]], [[0,0,0],[1,1,0]]]},
    {"name": "kagome", "vertices": [[0,0,0],[0,0,1],[0,0,2]],
     "edges": [[[0,0,0],[0,0,1]], [[0,0,0],[0,0,2]], [[0,0,1],[0,0,2]],
               [[0,0,1],[1,0,0]], [[0,0,2],[0,1,0]], [[0,0,1],[1,-1,2]]]},
    {"name": "shuriken", "vertices": [[0,0,0],[0,0,1],[0,0,2],[0,0,3],[0,0,4],[0,0,5]],
     "edges": [[[0,0,0],[0,0,1]], [[0,0,1],[0,0,2]], [[0,0,2],[0,0,3]], [[0,0,0],[0,0,3]],
               [[0,0,0],[0,0,4]], [[0,0,1],[0,0,4]], [[0,0,2],[0,1,4]], [[0,0,3],[0,1,4]],
               [[0,0,1],[0,0,5]], [[0,0,2],[0,0,5]], [[0,0,5],[1,0,0]], [[0,0,5],[1,0,3]]]},
    {"name": "snub-square", "vertices": [[0,0,0],[0,0,1],[0,0,2],[0,0,3]],
     "edges": [[[0,0,0],[0,0,1]], [[0,0,1],[0,0,2]], [[0,0,2],[0,0,3]], [[0,0,0],[0,0,3]],
               [[0,0,0],[1,0,1]], [[0,0,3],[1,0,1]], [[0,0,3],[1,0,2]],
               [[0,0,1],[0,1,2]], [[0,0,0],[0,1,2]], [[0,0,0],[0,1,3]]]},
    {"name": "square-octagon", "vertices": [[0,0,0],[0,0,1],[0,0,2],[0,0,3]],
     "edges": [[[0,0,0],[0,0,1]], [[0,0,1],[0,0,2]], [[0,0,2],[0,0,3]], [[0,0,0],[0,0,3]],
               [[0,0,1],[1,0,3]], [[0,0,0],[0,1,2]]]},
    {"name": "star", "vertices": [[0,0,0],[0,0,1],[0,0,2],[0,0,3],[0,0,4],[0,0,5]],
     "edges": [[[0,0,0],[0,0,1]], [[0,0,1],[0,0,2]], [[0,0,0],[0,0,2]],
               [[0,0,3],[0,0,4]], [[0,0,4],[0,0,5]], [[0,0,3],[0,0,5]],
               [[0,0,0],[0,0,3]], [[0,0,4],[1,0,1]], [[0,0,5],[0,1,2]]]},
    {"name": "ruby", "vertices": [[0,0,0],[0,0,1],[0,0,2],[0,0,3],[0,0,4],[0,0,5]],
     "edges": [[[0,0,0],[0,0,1]], [[0,0,1],[0,0,2]], [[0,0,2],[0,0,3]],
               [[0,0,3],[0,0,4]], [[0,0,4],[0,0,5]], [[0,0,0],[0,0,5]],
               [[0,0,0],[1,0,2]], [[0,0,5],[1,0,3]], [[0,0,0],[0,1,4]],
               [[0,0,1],[0,1,3]], [[0,0,5],[1,-1,1]], [[0,0,4],[1,-1,2]]]},
    {"name": "bridge", "vertices": [[0,0,0],[0,0,1],[0,0,2],[0,0,3],[0,0,4],[0,0,5]],
     "edges": [[[0,0,0],[0,0,1]], [[0,0,1],[0,0,2]], [[0,0,2],[0,0,3]],
               [[0,0,3],[0,0,4]], [[0,0,4],[0,0,5]], [[0,0,0],[0,0,5]],
               [[0,0,0],[1,0,2]], [[0,0,5],[1,0,2]], [[0,0,5],[1,0,3]],
               [[0,0,1],[0,1,3]], [[0,0,0],[0,1,3]], [[0,0,0],[0,1,4]],
               [[0,0,4],[1,-1,2]], [[0,0,4],[1,-1,1]], [[0,0,5],[1,-1,1]]]},
    {"name": "trellis", "vertices": [[0,0,0],[0,0,1]],
     "edges": [[[0,0,0],[1,0,0]], [[0,0,1],[1,0,1]], [[0,0,0],[0,0,1]],
               [[0,0,1],[1,0,0]], [[0,0,1],[0,1,0]]]},
    {"name": "cross", "vertices": [[0,0,0],[0,0,1],[0,0,2],[0,0,3],[0,0,4],[0,0,5],
                                   [0,0,6],[0,0,7],[0,0,8],[0,0,9],[0,0,10],[0,0,11]],
     "edges": [[[0,0,0],[0,0,1]], [[0,0,1],[0,0,2]], [[0,0,2],[0,0,3]], [[0,0,3],[0,0,4]],
               [[0,0,4],[0,0,5]], [[0,0,5],[0,0,6]], [[0,0,6],[0,0,7]], [[0,0,7],[0,0,8]],
               [[0,0,8],[0,0,9]], [[0,0,9],[0,0,10]], [[0,0,10],[0,0,11]], [[0,0,0],[0,0,11]],
               [[0,0,0],[1,0,5]], [[0,0,11],[1,0,6]], [[0,0,2],[0,1,7]], [[0,0,1],[0,1,8]],
               [[0,0,9],[1,-1,4]], [[0,0,10],[1,-1,3]]]},
    {"name": "union-jack", "vertices": [[0,0,0],[0,0,1]],
     "edges": [[[0,0,0],[0,0,1]], [[0,0,1],[1,1,0]], [[0,0,1],[0,1,0]], [[0,0,1],[1,0,0]],
               [[0,0,0],[1,0,0]], [[0,0,0],[0,1,0]]]},
    {"name": "dice", "vertices": [[0,0,0],[0,0,1],[0,0,2]],
     "edges": [[[0,0,0],[0,0,1]], [[0,0,0],[0,0,2]], [[0,0,1],[1,0,0]], [[0,0,1],[0,1,0]],
               [[0,0,0],[1,0,2]], [[0,0,0],[0,1,2]]]},
    {"name": "cairo-pentagonal", "vertices": [[0,0,0],[0,0,1],[0,0,2],[0,0,3],[0,0,4],[0,0,5]],
     "edges": [[[0,0,0],[0,0,4]], [[0,0,0],[0,0,2]], [[0,0,1],[0,0,2]], [[0,0,2],[0,0,3]],
               [[0,0,4],[0,0,5]], [[0,0,1],[0,0,5]], [[0,0,3],[1,0,0]], [[0,0,5],[0,1,0]],
               [[0,0,1],[0,1,3]], [[0,0,1],[1,0,4]]]},
    {"name": "prismatic-pentagonal", "vertices": [[0,0,0],[0,0,1],[0,0,2]],
     "edges": [[[0,0,0],[0,0,1]], [[0,0,1],[0,0,2]], [[0,0,2],[0,1,0]],
               [[0,0,1],[1,0,0]], [[0,0,2],[1,0,2]]]},
    {"name": "tetrille", "vertices": [[0,0,0],[0,0,1],[0,0,2],[0,0,3],[0,0,4],[0,0,5]],
     "edges": [[[0,0,0],[0,0,1]], [[0,0,0],[0,0,2]], [[0,0,0],[0,0,3]],
               [[0,0,1],[1,0,0]], [[0,0,2],[0,1,0]], [[0,0,0],[1,-1,3]],
               [[0,0,1],[0,0,4]], [[0,0,1],[0,0,5]], [[0,0,2],[0,0,4]],
               [[0,0,5],[1,-1,2]], [[0,0,5],[1,-1,3]], [[0,0,4],[1,0,3]]]},
    {"name": "asanoha", "vertices": [[0,0,0],[0,0,1],[0,0,2]],
     "edges": [[[0,0,0],[1,-1,0]], [[0,0,0],[0,1,0]], [[0,0,0],[1,0,0]],
               [[0,0,0],[1,-1,1]], [[0,0,0],[1,0,1]], [[0,0,0],[0,0,1]],
               [[0,0,0],[0,0,2]], [[0,0,2],[0,1,0]], [[0,0,0],[1,-1,2]]]},
    {"name": "floret-pentagonal", "vertices": [[0,0,0],[0,0,1],[0,0,2],[0,0,3],[0,0,4],
                                               [0,0,5],[0,0,6],[0,0,7],[0,0,8]],
     "edges": [[[0,0,0],[0,0,1]], [[0,0,0],[0,0,3]], [[0,0,0],[0,0,5]],
               [[0,0,2],[1,0,0]], [[0,0,4],[0,1,0]], [[0,0,0],[1,-1,6]],
               [[0,0,1],[0,0,7]], [[0,0,1],[0,0,2]], [[0,0,2],[0,0,8]],
               [[0,0,8],[1,-1,3]], [[0,0,3],[0,0,4]], [[0,0,4],[0,0,7]],
               [[0,0,7],[1,0,5]], [[0,0,5],[0,0,6]], [[0,0,8],[1,-1,6]]]},
    {"name": "kisrhombille", "vertices": [[0,0,0],[0,0,1],[0,0,2],[0,0,3],[0,0,4],[0,0,5]],
     "edges": [[[0,0,0],[0,0,1]], [[0,0,0],[0,0,4]], [[0,0,0],[0,0,2]],
               [[0,0,5],[1,-1,0]], [[0,0,0],[0,0,3]], [[0,0,4],[1,0,0]],
               [[0,0,1],[1,0,0]], [[0,0,5],[1,0,0]], [[0,0,2],[0,1,0]],
               [[0,0,4],[0,1,0]], [[0,0,0],[1,-1,3]], [[0,0,0],[0,0,5]],
               [[0,0,1],[0,0,4]], [[0,0,1],[0,0,5]], [[0,0,5],[1,-1,2]],
               [[0,0,2],[0,0,4]], [[0,0,4],[1,0,3]], [[0,0,5],[1,-1,3]]]},
    {"name": "heavy-hex", "vertices": [[0,0,0],[0,0,1],[0,0,2],[0,0,3],[0,0,4]],
     "edges": [[[0,0,0],[0,0,2]], [[0,0,1],[0,0,2]], [[0,0,1],[0,0,3]],
               [[0,0,3],[1,0,0]], [[0,0,1],[0,0,4]], [[0,0,4],[0,1,0]]]},
    {"name": "J1J2-line", "vertices": [[0,0,0]],
     "edges": [[[0,0,0],[1,0,0]], [[0,0,0],[2,0,0]]]},
    {"name": "J1J2-ladder", "vertices": [[0,0,0],[0,0,1]],
     "edges": [[[0,0,0],[0,0,1]], [[0,0,0],[1,0,0]], [[0,0,1],[1,0,1]],
               [[0,0,0],[1,0,1]], [[0,0,1],[1,0,0]]]},
    {"name": "J1J2-square", "vertices": [[0,0,0]],
     "edges": [[[0,0,0],[1,0,0]], [[0,0,0],[0,1,0]], [[0,0,0],[1,1,0]], [[0,0,0],[1,-1,0]]]},
    {"name": "J1J2J3-square", "vertices": [[0,0,0]],
     "edges": [[[0,0,0],[1,0,0]], [[0,0,0],[0,1,0]], [[0,0,0],[1,1,0]], [[0,0,0],[1,-1,0]],
               [[0,0,0],[2,0,0]], [[0,0,0],[0,2,0]]]}
  ]
}
)JSON";

inline const std::map<std::string, BasisGraph>& lattice_database() {
  static const std::map<std::string, BasisGraph> db = [] {
    std::map<std::string, BasisGraph> out;
    json doc = json::parse(kLatticeDatabaseJson);
    for (const auto& jg : doc["graphs"]) {
      BasisGraph b = graph_from_json(jg);
      out.emplace(b.name, std::move(b));
    }
    return out;
  }();
  return db;
}

inline std::vector<std::string> lattice_names() {
  std::vector<std::string> names;
  for (const auto& [name, b] : lattice_database()) names.push_back(name);
  return names;
}

inline const BasisGraph& builtin_basis_graph(const std::string& name) {
  const auto& db = lattice_database();
  auto it = db.find(name);
  if (it == db.end()) {
    std::string msg = "unknown lattice \"" + name + "\"; available:";
    for (const auto& n : lattice_names()) msg += " " + n;
    throw std::invalid_argument(msg);
  }
  return it->second;
}

inline std::string lattice_database_version() { return json::parse(kLatticeDatabaseJson)["version"]; }

}  // namespace tileroute
