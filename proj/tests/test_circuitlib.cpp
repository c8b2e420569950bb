#include <catch_amalgamated.hpp>

#include <random>

#include "tileroute/circuits.hpp"
#include "tileroute/graph.hpp"
#include "tileroute/json_io.hpp"
#include "tileroute/lattices.hpp"
#include "tileroute/schedule.hpp"

using namespace tileroute;

TEST_CASE("atl circuit has one untimed gate per edge") {
  for (const auto& name : lattice_names()) {
    const BasisGraph& b = builtin_basis_graph(name);
    BasisCircuit c = atl_trotter_circuit(b);
    CHECK(c.gates.size() == b.edges.size());
    for (const auto& g : c.gates) {
      CHECK_FALSE(g.time.has_value());
      CHECK(g.qudits.size() == 2);
    }
  }
  CHECK(atl_trotter_circuit(builtin_basis_graph("line")).gates.size() == 1);
  CHECK(atl_trotter_circuit(builtin_basis_graph("J1J2-line")).gates.size() == 2);
}

TEST_CASE("scheduling an atl circuit needs an optimal order to reach max degree") {
  // the library does not pre-order gates: depth of a list-order schedule can
  // exceed the degree bound, which the router closes by choosing the order
  BasisGraph square22 = reseed_graph(builtin_basis_graph("square"), 2, 2);
  BasisCircuit c = atl_trotter_circuit(square22);
  CHECK(seed_touch_bound(c) == lattice_max_degree(square22));
  CHECK(schedule(c).depth() >= lattice_max_degree(square22));
}

TEST_CASE("rule54 basis circuit is valid with critical path 20") {
  BasisCircuit r54 = rule54_circuit();
  CHECK(r54.n_seeds() == 4);
  CHECK(r54.gates.size() == 20);
  CHECK(validate_basis_circuit(r54).valid());
  CHECK(critical_path_depth(r54) == 20);
  BasisCircuit s = schedule(r54);
  CHECK(s.depth() == critical_path_depth(r54));
  CHECK(validate_basis_circuit(s).valid());
}

TEST_CASE("load_circuit accepts a minimal document") {
  json doc = json::parse(R"({"gates": [{"id": 0, "label": "U", "qudits": [[0,0,0],[0,0,1]], "time": 0}]})");
  BasisCircuit c = load_circuit(doc);
  REQUIRE(c.gates.size() == 1);
  CHECK(c.gates[0].label == "U");
  CHECK(c.gates[0].time == 0);
}

TEST_CASE("load_circuit rejects same-seed same-layer circuits with a report") {
  json doc = json::parse(R"({"gates": [
    {"id": 0, "label": "A", "qudits": [[0,0,0]], "time": 0},
    {"id": 1, "label": "B", "qudits": [[1,0,0]], "time": 0}]})");
  CHECK_THROWS_AS(load_circuit(doc), ValidationError);
}

TEST_CASE("load_circuit rejects malformed documents") {
  CHECK_THROWS_AS(load_circuit(json::parse(R"({"gates": [{"id": 0}]})")), ParseError);
  CHECK_THROWS_AS(load_circuit(json::parse(R"({"nope": 1})")), ParseError);
  CHECK_THROWS_AS(
      load_circuit(json::parse(R"({"gates": [{"id": 0, "qudits": [[0,0,0],[0,0,0]]}]})")),
      ParseError);
  CHECK_THROWS_AS(
      load_circuit(json::parse(R"({"gates": [{"id": 0, "qudits": [[0,0,-1]]}]})")), ParseError);
}

TEST_CASE("load(emit(c)) round-trips on random circuits") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> cell(-1, 1), seed(0, 3);
  for (int i = 0; i < 100; ++i) {
    BasisCircuit c;
    const int n = 1 + static_cast<int>(rng() % 5);
    for (int k = 0; k < n; ++k) {
      Gate g;
      g.id = k;
      g.label = "U" + std::to_string(k);
      g.qudits.push_back({cell(rng), cell(rng), 2 * seed(rng)});
      g.qudits.push_back({cell(rng), cell(rng), 2 * seed(rng) + 1});
      c.gates.push_back(std::move(g));
    }
    c = schedule(c);
    if (!validate_basis_circuit(c).valid()) continue;
    BasisCircuit back = load_circuit(to_json(c));
    REQUIRE(back.gates.size() == c.gates.size());
    for (size_t k = 0; k < c.gates.size(); ++k) {
      CHECK(back.gates[k].id == c.gates[k].id);
      CHECK(back.gates[k].label == c.gates[k].label);
      CHECK(back.gates[k].qudits == c.gates[k].qudits);
      CHECK(back.gates[k].time == c.gates[k].time);
    }
  }
}

TEST_CASE("the shipped rokhsar-kivelson circuit loads and matches its lower bound") {
  const char* root = std::getenv("TILEROUTE_ROOT");
  REQUIRE(root != nullptr);
  BasisCircuit c = load_circuit_file(std::string(root) + "/circuits/rokhsar-kivelson-xyz.json");
  CHECK(validate_basis_circuit(c).valid());
  CHECK(c.n_seeds() == 4);
  CHECK(c.depth() == 18);
  CHECK(critical_path_depth(c) == 18);
}
