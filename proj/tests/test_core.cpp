#include <catch_amalgamated.hpp>

#include <random>

#include "tileroute/circuit.hpp"
#include "tileroute/circuits.hpp"
#include "tileroute/graph.hpp"
#include "tileroute/json_io.hpp"
#include "tileroute/lattices.hpp"
#include "tileroute/schedule.hpp"

using namespace tileroute;

namespace {

Gate make_gate(int id, std::vector<QuditCoord> qudits, std::optional<int> t = std::nullopt,
               std::string label = "U") {
  Gate g;
  g.id = id;
  g.label = std::move(label);
  g.qudits = std::move(qudits);
  g.time = t;
  return g;
}

// Independent re-implementation of gate translation used as an oracle.
Gate translate_oracle(const Gate& g, int dx, int dy, int dt) {
  Gate out = g;
  for (auto& q : out.qudits) {
    q.x += dx;
    q.y += dy;
  }
  if (out.time) out.time = *out.time + dt;
  return out;
}

// Random timed circuits over a small seed/cell budget; some valid, some not.
// distinct_seeds restricts every two-qudit gate to two different seeds, the
// domain on which scheduling can produce valid basis circuits at all.
BasisCircuit random_circuit(std::mt19937& rng, bool distinct_seeds = false) {
  std::uniform_int_distribution<int> n_gates(1, 6), n_seeds(1, 4), cell(-1, 1), tdist(0, 3);
  BasisCircuit c;
  const int seeds = distinct_seeds ? std::max(2, n_seeds(rng)) : n_seeds(rng);
  std::uniform_int_distribution<int> sdist(0, seeds - 1);
  const int total = n_gates(rng);
  for (int i = 0; i < total; ++i) {
    Gate g;
    g.id = i;
    g.label = "U";
    QuditCoord q0{cell(rng), cell(rng), sdist(rng)};
    g.qudits.push_back(q0);
    if (rng() % 2) {
      for (int tries = 0; tries < 16; ++tries) {
        QuditCoord q1{cell(rng), cell(rng), sdist(rng)};
        if (q1 != q0 && (!distinct_seeds || q1.s != q0.s)) {
          g.qudits.push_back(q1);
          break;
        }
      }
    }
    g.time = tdist(rng);
    c.gates.push_back(std::move(g));
  }
  return c;
}

// Brute-force collision scan of P_{k,k,1} for all k up to the coordinate
// span + 1: the independent oracle for Theorem-1 validation.
bool patches_collision_free(const BasisCircuit& c) {
  int xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (const auto& g : c.gates)
    for (const auto& q : g.qudits) {
      xmin = std::min(xmin, q.x);
      xmax = std::max(xmax, q.x);
      ymin = std::min(ymin, q.y);
      ymax = std::max(ymax, q.y);
    }
  const int span = std::max(xmax - xmin, ymax - ymin);
  for (int k = 1; k <= span + 1; ++k) {
    std::map<std::pair<QuditCoord, int>, int> uses;  // (qudit, time) -> ops touching it
    for (int dx = 0; dx < k; ++dx)
      for (int dy = 0; dy < k; ++dy)
        for (const auto& g : c.gates)
          for (const auto& q : g.qudits)
            if (++uses[{q.translated(dx, dy), *g.time}] > 1) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("translate identity and inverse") {
  Gate g = make_gate(0, {{0, 0, 0}}, 1);
  CHECK(translate(g, 0, 0, 0).qudits == g.qudits);
  CHECK(translate(g, 0, 0, 0).time == g.time);

  Gate h = make_gate(3, {{0, 0, 0}, {1, 0, 1}}, 2, "V");
  Gate back = translate(translate(h, 1, 0, 0), -1, 0, 0);
  CHECK(back.qudits == h.qudits);
  CHECK(back.time == h.time);
  CHECK(back.id == h.id);
  CHECK(back.label == h.label);
}

TEST_CASE("translate is field-wise addition") {
  Gate g = make_gate(7, {{0, 0, 0}, {1, 0, 1}}, 2);
  Gate t = translate(g, 2, 3, 5);
  CHECK(t.qudits == std::vector<QuditCoord>{{2, 3, 0}, {3, 3, 1}});
  CHECK(t.time == 7);

  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-4, 4), dt(0, 3);
  for (int i = 0; i < 200; ++i) {
    Gate rg = make_gate(i, {{d(rng), d(rng), std::abs(d(rng))}, {d(rng), d(rng), std::abs(d(rng))}},
                        dt(rng) + 5);
    int dx = d(rng), dy = d(rng), dtt = dt(rng);
    Gate a = translate(rg, dx, dy, dtt);
    Gate b = translate_oracle(rg, dx, dy, dtt);
    CHECK(a.qudits == b.qudits);
    CHECK(a.time == b.time);
  }
}

TEST_CASE("translate errors") {
  Gate g = make_gate(0, {{0, 0, 0}}, 1);
  CHECK_THROWS_WITH(translate(g, 0, 0, -2), "time underflow");
  Gate untimed = make_gate(0, {{0, 0, 0}});
  CHECK_THROWS(translate(untimed, 0, 0, 1));
}

TEST_CASE("translation composes as a group action") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int i = 0; i < 100; ++i) {
    Gate g = make_gate(0, {{d(rng), d(rng), 2}, {d(rng), d(rng), 3}}, 10);
    int a1 = d(rng), b1 = d(rng), t1 = std::abs(d(rng));
    int a2 = d(rng), b2 = d(rng), t2 = std::abs(d(rng));
    Gate lhs = translate(translate(g, a1, b1, t1), a2, b2, t2);
    Gate rhs = translate(g, a1 + a2, b1 + b2, t1 + t2);
    CHECK(lhs.qudits == rhs.qudits);
    CHECK(lhs.time == rhs.time);
  }
}

TEST_CASE("make_patch multiplies gate count") {
  BasisCircuit c;
  c.gates.push_back(make_gate(0, {{0, 0, 0}}, 0));
  c.gates.push_back(make_gate(1, {{0, 0, 1}}, 1));
  auto res = make_patch_traced(c, {2, 3, 2});
  CHECK(res.circuit.gates.size() == 24);
  CHECK(res.duplicates_removed == 0);
  // patched gate count invariant
  CHECK(res.circuit.gates.size() + res.duplicates_removed == 2u * 2 * 3 * 2);
}

TEST_CASE("identity patch is the identity") {
  BasisCircuit c;
  c.gates.push_back(make_gate(0, {{0, 0, 0}, {1, 0, 1}}, 0, "A"));
  c.gates.push_back(make_gate(1, {{0, 0, 1}, {0, 0, 0}}, 1, "B"));
  BasisCircuit p = make_patch(c, {1, 1, 1});
  REQUIRE(p.gates.size() == c.gates.size());
  for (size_t i = 0; i < c.gates.size(); ++i) {
    CHECK(p.gates[i].qudits == c.gates[i].qudits);
    CHECK(p.gates[i].time == c.gates[i].time);
    CHECK(p.gates[i].label == c.gates[i].label);
  }
}

TEST_CASE("rule54 patch is collision-free with doubled depth") {
  BasisCircuit r54 = rule54_circuit();
  const int d = r54.depth();
  BasisCircuit p = make_patch(r54, {3, 1, 2});
  CHECK(p.depth() == 2 * d);
  // exhaustive collision scan of the patch
  std::map<std::pair<QuditCoord, int>, int> uses;
  for (const auto& g : p.gates)
    for (const auto& q : g.qudits) CHECK(++uses[{q, *g.time}] == 1);
}

TEST_CASE("make_patch rejects invalid circuits with a report") {
  BasisCircuit bad;
  bad.gates.push_back(make_gate(0, {{0, 0, 0}}, 0));
  bad.gates.push_back(make_gate(1, {{1, 0, 0}}, 0));
  try {
    make_patch(bad, {2, 2, 1});
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    REQUIRE(e.report.violations.size() == 1);
    CHECK(e.report.violations[0].time == 0);
    CHECK(e.report.violations[0].seed == 0);
  }
}

TEST_CASE("validate_basis_circuit flags same-seed same-layer") {
  BasisCircuit c;
  c.gates.push_back(make_gate(0, {{0, 0, 0}}, 0));
  c.gates.push_back(make_gate(1, {{1, 0, 0}}, 0));
  auto rep = validate_basis_circuit(c);
  REQUIRE_FALSE(rep.valid());
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].time == 0);
  CHECK(rep.violations[0].seed == 0);
  CHECK(rep.violations[0].gate_ids == std::vector<int>{0, 1});
}

TEST_CASE("validate_basis_circuit accepts a single gate") {
  BasisCircuit c;
  c.gates.push_back(make_gate(0, {{0, 0, 0}, {0, 0, 1}}, 0));
  CHECK(validate_basis_circuit(c).valid());
}

TEST_CASE("validation agrees with brute-force patch collision scan") {
  std::mt19937 rng(2024);
  int valid_seen = 0, invalid_seen = 0;
  for (int i = 0; i < 500; ++i) {
    BasisCircuit c = random_circuit(rng);
    bool v = validate_basis_circuit(c).valid();
    bool oracle = patches_collision_free(c);
    REQUIRE(v == oracle);
    (v ? valid_seen : invalid_seen)++;
  }
  // the sample must exercise both outcomes
  CHECK(valid_seen > 50);
  CHECK(invalid_seen > 50);
}

TEST_CASE("schedule single gate") {
  BasisCircuit c;
  c.gates.push_back(make_gate(0, {{0, 0, 0}, {0, 0, 1}}));
  BasisCircuit s = schedule(c);
  CHECK(s.gates[0].time == 0);
  CHECK(s.depth() == 1);
}

// The wrapped-vs-naive scheduling example: treating the basis circuit as a
// standard circuit splits gates that actually share a wrapped wire.
namespace {
BasisCircuit scheduling_figure_circuit() {
  BasisCircuit c;
  c.gates.push_back(make_gate(0, {{0, 0, 0}}, std::nullopt, "g0"));
  c.gates.push_back(make_gate(1, {{0, 0, 0}, {0, 0, 1}}, std::nullopt, "g1"));
  c.gates.push_back(make_gate(2, {{0, 0, 2}, {1, 0, 1}}, std::nullopt, "g2"));
  c.gates.push_back(make_gate(3, {{1, 0, 0}, {0, 0, 2}}, std::nullopt, "g3"));
  return c;
}

// naive ASAP on unwrapped coordinates (the incorrect method)
BasisCircuit naive_schedule(const BasisCircuit& c) {
  BasisCircuit out = c;
  std::map<QuditCoord, int> avail;
  for (size_t i = 0; i < c.gates.size(); ++i) {
    int t = 0;
    for (const auto& q : c.gates[i].qudits) {
      auto it = avail.find(q);
      if (it != avail.end()) t = std::max(t, it->second);
    }
    out.gates[i].time = t;
    for (const auto& q : c.gates[i].qudits) avail[q] = t + 1;
  }
  return out;
}
}  // namespace

TEST_CASE("wrapped scheduling differs from naive scheduling and stays valid") {
  BasisCircuit c = scheduling_figure_circuit();
  BasisCircuit wrapped = schedule(c);
  BasisCircuit naive = naive_schedule(c);
  CHECK(wrapped.gates[0].time == 0);
  CHECK(wrapped.gates[1].time == 1);
  CHECK(wrapped.gates[2].time == 2);
  CHECK(wrapped.gates[3].time == 3);
  CHECK(validate_basis_circuit(wrapped).valid());
  CHECK_FALSE(validate_basis_circuit(naive).valid());
  CHECK(naive.depth() < wrapped.depth());
}

TEST_CASE("scheduling properties on random circuits") {
  std::mt19937 rng(77);
  for (int i = 0; i < 200; ++i) {
    BasisCircuit c = random_circuit(rng, /*distinct_seeds=*/true);
    BasisCircuit s = schedule(c);
    // depth equals the DAG longest path
    CHECK(s.depth() == critical_path_depth(c));
    // idempotence
    BasisCircuit s2 = schedule(s);
    for (size_t k = 0; k < s.gates.size(); ++k) CHECK(s2.gates[k].time == s.gates[k].time);
    // multiset of (label, qudits) preserved, only times change
    auto key = [](const BasisCircuit& cc) {
      std::multiset<std::pair<std::string, std::vector<QuditCoord>>> m;
      for (const auto& g : cc.gates) m.insert({g.label, g.qudits});
      return m;
    };
    CHECK(key(s) == key(c));
    // every direct dependency is respected by the schedule
    std::map<int, int> time_of;
    for (const auto& g : s.gates) time_of[g.id] = *g.time;
    for (const auto& [a, b] : gate_dependencies(c)) CHECK(time_of[a] < time_of[b]);
    // scheduled output is a valid basis circuit
    CHECK(validate_basis_circuit(s).valid());
  }
}

TEST_CASE("gate_dependencies on the scheduling-figure circuit") {
  auto deps = gate_dependencies(scheduling_figure_circuit());
  CHECK(std::find(deps.begin(), deps.end(), std::make_pair(1, 3)) != deps.end());
}

TEST_CASE("gate_dependencies of seed-disjoint gates is empty") {
  BasisCircuit c;
  c.gates.push_back(make_gate(0, {{0, 0, 0}, {0, 0, 1}}, 0));
  c.gates.push_back(make_gate(1, {{0, 0, 2}, {0, 0, 3}}, 0));
  CHECK(gate_dependencies(c).empty());
}

TEST_CASE("direct dependencies imply all transitive dependencies") {
  // reorderings that respect the direct list keep every transitive pair
  std::mt19937 rng(99);
  for (int i = 0; i < 100; ++i) {
    BasisCircuit c = schedule(random_circuit(rng, /*distinct_seeds=*/true));
    auto direct = gate_dependencies(c);
    // transitive closure oracle
    const int n = static_cast<int>(c.gates.size());
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    std::map<int, int> pos;
    for (int k = 0; k < n; ++k) pos[c.gates[k].id] = k;
    for (auto& [a, b] : direct) reach[pos[a]][pos[b]] = true;
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (reach[a][k] && reach[k][b]) reach[a][b] = true;
    // oracle: share a seed and ordered in time => transitively dependent
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        const Gate &ga = c.gates[a], &gb = c.gates[b];
        bool share = false;
        for (const auto& qa : ga.qudits)
          for (const auto& qb : gb.qudits)
            if (qa.s == qb.s) share = true;
        bool before = std::make_pair(*ga.time, a) < std::make_pair(*gb.time, b);
        if (share && before) CHECK(reach[a][b]);
      }
  }
}

TEST_CASE("critical path depth basics") {
  BasisCircuit empty;
  CHECK(critical_path_depth(empty) == 0);

  BasisCircuit one;
  one.gates.push_back(make_gate(0, {{0, 0, 0}, {0, 0, 1}}, 0));
  CHECK(critical_path_depth(one) == 1);

  // one edge per cell on the line lattice: the wrapped gate touches seed 0 twice
  BasisCircuit atl_line = atl_trotter_circuit(builtin_basis_graph("line"));
  CHECK(critical_path_depth(atl_line) == 2);
  CHECK(seed_touch_bound(atl_line) == 2);

  // J1J2 chain reseeded to four seeds: minimal depth is the lattice degree 4
  BasisGraph j = reseed_graph(builtin_basis_graph("J1J2-line"), 4, 1);
  BasisCircuit atl_j = atl_trotter_circuit(j);
  CHECK(seed_touch_bound(atl_j) == 4);
  CHECK(lattice_max_degree(j) == 4);
}

TEST_CASE("circuit JSON round-trip is lossless") {
  std::mt19937 rng(123);
  for (int i = 0; i < 100; ++i) {
    BasisCircuit c = random_circuit(rng);
    if (i % 3 == 0) c.gates[0].time.reset();
    if (i % 4 == 0) c.declared_qudits.insert({5, 5, 0});
    BasisCircuit back = circuit_from_json(to_json(c));
    REQUIRE(back.gates.size() == c.gates.size());
    for (size_t k = 0; k < c.gates.size(); ++k) {
      CHECK(back.gates[k].id == c.gates[k].id);
      CHECK(back.gates[k].label == c.gates[k].label);
      CHECK(back.gates[k].qudits == c.gates[k].qudits);
      CHECK(back.gates[k].time == c.gates[k].time);
    }
    CHECK(back.all_qudits() == c.all_qudits());
  }
}

TEST_CASE("graph JSON round-trip") {
  for (const auto& name : lattice_names()) {
    const BasisGraph& b = builtin_basis_graph(name);
    BasisGraph back = graph_from_json(to_json(b));
    CHECK(back.name == b.name);
    CHECK(back.vertices == b.vertices);
    CHECK(back.edges == b.edges);
  }
}
