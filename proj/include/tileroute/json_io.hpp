#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "tileroute/circuit.hpp"
#include "tileroute/graph.hpp"

namespace tileroute {

using json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json to_json(const QuditCoord& q) { return json::array({q.x, q.y, q.s}); }

inline QuditCoord coord_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ParseError("qudit coordinate must be a [x, y, s] triple");
  for (const auto& v : j)
    if (!v.is_number_integer()) throw ParseError("qudit coordinate entries must be integers");
  QuditCoord q{j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
  if (q.s < 0) throw ParseError("seed numbers must be non-negative");
  return q;
}

// Circuit format: {"gates": [{"id", "label", "qudits", "time"}...]}, plus an
// optional "qudits" list for idle qudits not touched by any gate.
inline json to_json(const BasisCircuit& c) {
  json gates = json::array();
  for (const auto& g : c.gates) {
    json jg{{"id", g.id}, {"label", g.label}};
    jg["qudits"] = json::array();
    for (const auto& q : g.qudits) jg["qudits"].push_back(to_json(q));
    jg["time"] = g.time ? json(*g.time) : json(nullptr);
    gates.push_back(std::move(jg));
  }
  json out{{"gates", std::move(gates)}};
  if (!c.name.empty()) out["name"] = c.name;
  auto acted = c.acted_qudits();
  json idle = json::array();
  for (const auto& q : c.declared_qudits)
    if (!acted.count(q)) idle.push_back(to_json(q));
  if (!idle.empty()) out["qudits"] = std::move(idle);
  return out;
}

inline BasisCircuit circuit_from_json(const json& j) {
  if (!j.is_object() || !j.contains("gates") || !j["gates"].is_array())
    throw ParseError("circuit document must be an object with a \"gates\" array");
  BasisCircuit c;
  if (j.contains("name")) c.name = j["name"].get<std::string>();
  std::set<int> ids;
  for (const auto& jg : j["gates"]) {
    Gate g;
    if (!jg.contains("id") || !jg["id"].is_number_integer()) throw ParseError("gate without integer id");
    g.id = jg["id"].get<int>();
    if (!ids.insert(g.id).second) throw ParseError("duplicate gate id " + std::to_string(g.id));
    g.label = jg.value("label", std::string{});
    if (!jg.contains("qudits") || !jg["qudits"].is_array()) throw ParseError("gate without qudits");
    for (const auto& q : jg["qudits"]) g.qudits.push_back(coord_from_json(q));
    if (g.qudits.empty() || g.qudits.size() > 2)
      throw ParseError("gate " + std::to_string(g.id) + " must act on 1 or 2 qudits");
    if (g.qudits.size() == 2 && g.qudits[0] == g.qudits[1])
      throw ParseError("gate " + std::to_string(g.id) + " acts twice on the same qudit");
    if (jg.contains("time") && !jg["time"].is_null()) {
      if (!jg["time"].is_number_integer() || jg["time"].get<int>() < 0)
        throw ParseError("gate times must be non-negative integers");
      g.time = jg["time"].get<int>();
    }
    c.gates.push_back(std::move(g));
  }
  if (j.contains("qudits"))
    for (const auto& q : j["qudits"]) c.declared_qudits.insert(coord_from_json(q));
  return c;
}

// Graph format: {"name", "vertices": [[x,y,s]...], "edges": [[[..],[..]]...]}
inline json to_json(const BasisGraph& b) {
  json verts = json::array(), edges = json::array();
  for (const auto& v : b.vertices) verts.push_back(to_json(v));
  for (const auto& e : b.edges) edges.push_back(json::array({to_json(e.a), to_json(e.b)}));
  return json{{"name", b.name}, {"vertices", std::move(verts)}, {"edges", std::move(edges)}};
}

inline BasisGraph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw ParseError("graph document must carry \"vertices\" and \"edges\"");
  BasisGraph b;
  b.name = j.value("name", std::string{});
  for (const auto& v : j["vertices"]) b.vertices.push_back(coord_from_json(v));
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2) throw ParseError("edges must be pairs of coordinates");
    b.edges.emplace_back(coord_from_json(e[0]), coord_from_json(e[1]));
  }
  return b;
}

}  // namespace tileroute
