#include <catch_amalgamated.hpp>

#include "tileroute/circuits.hpp"
#include "tileroute/graph.hpp"
#include "tileroute/lattices.hpp"
#include "tileroute/schedule.hpp"

using namespace tileroute;

TEST_CASE("every builtin graph satisfies the basis-graph invariants") {
  for (const auto& name : lattice_names()) {
    const BasisGraph& b = builtin_basis_graph(name);
    INFO("lattice " << name);
    CHECK(basis_graph_problems(b).empty());
  }
}

TEST_CASE("coordination numbers of the named lattices") {
  const std::map<std::string, int> expected = {
      {"line", 2},     {"ladder", 3},    {"square", 4},      {"triangular", 6},
      {"honeycomb", 3}, {"kagome", 4},   {"J1J2-line", 4},   {"J1J2-square", 8},
      {"snub-square", 5}, {"shuriken", 4}, {"plus-square", 4}, {"diamond-square", 4},
      {"square-octagon", 3}, {"star", 3}, {"ruby", 4}, {"bridge", 5}, {"trellis", 5},
      {"cross", 3}, {"J1J2J3-square", 12}};
  for (const auto& [name, z] : expected) {
    INFO("lattice " << name);
    CHECK(lattice_max_degree(builtin_basis_graph(name)) == z);
  }
}

TEST_CASE("unknown lattice names list the alternatives") {
  try {
    builtin_basis_graph("moebius");
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    CHECK(msg.find("moebius") != std::string::npos);
    CHECK(msg.find("kagome") != std::string::npos);
    CHECK(msg.find("square") != std::string::npos);
  }
}

TEST_CASE("line basis graph structure") {
  const BasisGraph& b = builtin_basis_graph("line");
  REQUIRE(b.vertices.size() == 1);
  REQUIRE(b.edges.size() == 1);
  CHECK(b.edges[0] == Edge({0, 0, 0}, {1, 0, 0}));
}

TEST_CASE("patch of the line is a path graph") {
  const BasisGraph& b = builtin_basis_graph("line");
  for (int n = 2; n <= 6; ++n) {
    auto edges = lattice_edges(b, 0, n - 1, 0, 0);
    // n translates produce a path on n+1 vertices: connected, acyclic, max degree 2
    std::map<QuditCoord, int> deg;
    for (const auto& e : edges) {
      deg[e.a]++;
      deg[e.b]++;
    }
    CHECK(edges.size() == static_cast<size_t>(n));
    CHECK(deg.size() == static_cast<size_t>(n + 1));
    for (const auto& [v, d] : deg) CHECK(d <= 2);
  }
}

TEST_CASE("ladder basis graph structure") {
  const BasisGraph& b = builtin_basis_graph("ladder");
  REQUIRE(b.vertices.size() == 2);
  std::set<Edge> edges(b.edges.begin(), b.edges.end());
  CHECK(edges.count(Edge({0, 0, 0}, {0, 0, 1})));
  CHECK(edges.count(Edge({0, 0, 0}, {1, 0, 0})));
  CHECK(edges.count(Edge({0, 0, 1}, {1, 0, 1})));
  CHECK(lattice_max_degree(b) == 3);
}

TEST_CASE("J1J2-line basis graph structure") {
  const BasisGraph& b = builtin_basis_graph("J1J2-line");
  REQUIRE(b.vertices.size() == 1);
  std::set<Edge> edges(b.edges.begin(), b.edges.end());
  CHECK(edges.count(Edge({0, 0, 0}, {1, 0, 0})));
  CHECK(edges.count(Edge({0, 0, 0}, {2, 0, 0})));
  CHECK(lattice_max_degree(b) == 4);
}

TEST_CASE("reseed_graph(line, 1, 1) is the line up to renumbering") {
  BasisGraph r = reseed_graph(builtin_basis_graph("line"), 1, 1);
  CHECK(r.vertices.size() == 1);
  REQUIRE(r.edges.size() == 1);
  CHECK(r.edges[0] == Edge({0, 0, 0}, {1, 0, 0}));
}

TEST_CASE("reseed_graph(line, 3, 1) matches the reference chain") {
  BasisGraph r = reseed_graph(builtin_basis_graph("line"), 3, 1);
  CHECK(r.vertices.size() == 3);
  std::set<Edge> edges(r.edges.begin(), r.edges.end());
  CHECK(edges.count(Edge({0, 0, 0}, {0, 0, 1})));
  CHECK(edges.count(Edge({0, 0, 1}, {0, 0, 2})));
  CHECK(edges.count(Edge({0, 0, 2}, {1, 0, 0})));
  CHECK(edges.size() == 3);
}

TEST_CASE("reseeded central cell has n*m*N vertices") {
  for (const auto& name : {"line", "ladder", "kagome", "square"}) {
    const BasisGraph& b = builtin_basis_graph(name);
    for (auto [n, m] : {std::pair{2, 1}, {3, 2}, {2, 2}}) {
      BasisGraph r = reseed_graph(b, n, m);
      CHECK(r.vertices.size() == b.vertices.size() * n * m);
    }
  }
}

TEST_CASE("reseeding generates an isomorphic lattice") {
  // the reseed map is an explicit isomorphism; undo it and compare windows
  for (const auto& name : {"line", "ladder", "square", "kagome", "J1J2-line", "triangular"}) {
    const BasisGraph& b = builtin_basis_graph(name);
    for (auto [n, m] : {std::pair{2, 1}, {2, 2}, {3, 1}}) {
      BasisGraph r = reseed_graph(b, n, m);
      CHECK(basis_graph_problems(r).empty());
      Reseeder rs{n, m, b.n_seeds()};
      for (int window = 1; window <= 3; ++window) {
        auto reseeded_edges = lattice_edges(r, -window, window, -window, window);
        std::set<Edge> mapped_back;
        for (const auto& e : reseeded_edges) mapped_back.insert(Edge(rs.unmap(e.a), rs.unmap(e.b)));
        // the original window large enough to contain the mapped-back region
        auto original = lattice_edges(b, -(window + 1) * n - 2, (window + 1) * n + 2,
                                      -(window + 1) * m - 2, (window + 1) * m + 2);
        for (const auto& e : mapped_back) CHECK(original.count(e));
        // and the core of the original window is covered
        auto core = lattice_edges(b, 0, window * n - 1, 0, window * m - 1);
        size_t covered = 0;
        for (const auto& e : core) covered += mapped_back.count(e);
        CHECK(covered == core.size());
      }
    }
  }
}

TEST_CASE("reseeded circuits stay valid and reseed commutes with the graph map") {
  // an ATL circuit built on a reseeded graph equals the reseeded ATL circuit
  for (const auto& name : {"ladder", "square", "kagome"}) {
    const BasisGraph& b = builtin_basis_graph(name);
    BasisCircuit direct = atl_trotter_circuit(reseed_graph(b, 2, 1));
    BasisCircuit via_circuit = reseed_circuit(atl_trotter_circuit(b), 2, 1);
    auto key = [](const BasisCircuit& c) {
      std::set<std::pair<QuditCoord, QuditCoord>> s;
      for (const auto& g : c.gates) {
        Edge e{g.qudits[0], g.qudits[1]};
        Edge rep = translation_class_representative(e);
        s.insert({rep.a, rep.b});
      }
      return s;
    };
    CHECK(key(direct) == key(via_circuit));
  }
  // a timed valid circuit stays valid after reseeding
  BasisCircuit r54 = rule54_circuit();
  BasisCircuit rr = reseed_circuit(r54, 2, 1);
  CHECK(validate_basis_circuit(rr).valid());
  CHECK(rr.n_seeds() == 8);
}

