#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tileroute/coord.hpp"

namespace tileroute {

/// A gate of a basis circuit. The label is opaque to the router: only which
/// qudits a gate touches, and when, matters for routing.
struct Gate {
  int id = 0;
  std::string label;
  std::vector<QuditCoord> qudits;  // 1 or 2 entries, distinct when 2
  std::optional<int> time;         // absent = order left to the router

  [[nodiscard]] bool two_qudit() const { return qudits.size() == 2; }
};

inline bool same_operation(const Gate& a, const Gate& b) {
  if (a.label != b.label || a.time != b.time) return false;
  auto qa = a.qudits, qb = b.qudits;
  std::sort(qa.begin(), qa.end());
  std::sort(qb.begin(), qb.end());
  return qa == qb;
}

/// Finite generator of an infinite lattice circuit: translated copies of the
/// gate list merge into arbitrarily large circuit patches.
struct BasisCircuit {
  std::string name;
  std::vector<Gate> gates;
  std::set<QuditCoord> declared_qudits;  // gate qudits plus idle qudits

  [[nodiscard]] std::set<QuditCoord> acted_qudits() const {
    std::set<QuditCoord> out;
    for (const auto& g : gates) out.insert(g.qudits.begin(), g.qudits.end());
    return out;
  }

  [[nodiscard]] std::set<QuditCoord> all_qudits() const {
    auto out = acted_qudits();
    out.insert(declared_qudits.begin(), declared_qudits.end());
    return out;
  }

  [[nodiscard]] bool all_times_present() const {
    return std::all_of(gates.begin(), gates.end(), [](const Gate& g) { return g.time.has_value(); });
  }

  /// Depth = (max time) + 1 over present times; 0 for an untimed circuit.
  [[nodiscard]] int depth() const {
    int d = 0;
    for (const auto& g : gates)
      if (g.time) d = std::max(d, *g.time + 1);
    return d;
  }

  /// Number of distinct seed numbers acted on.
  [[nodiscard]] int n_seeds() const {
    std::set<int> seeds;
    for (const auto& q : all_qudits()) seeds.insert(q.s);
    return static_cast<int>(seeds.size());
  }
};

/// Spatial (n, m) and temporal (l) repetition counts of a patch.
struct PatchSpec {
  int n = 1;
  int m = 1;
  int l = 1;
};

inline void require_valid(const PatchSpec& p) {
  if (p.n < 1 || p.m < 1 || p.l < 1) throw std::invalid_argument("patch size must be >= 1 in every direction");
}

struct ValidationReport {
  struct Violation {
    int time = 0;
    int seed = 0;
    std::vector<int> gate_ids;
  };
  std::vector<Violation> violations;

  [[nodiscard]] bool valid() const { return violations.empty(); }
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationReport rep)
      : std::runtime_error("circuit is not a valid basis circuit (" +
                           std::to_string(rep.violations.size()) + " layer/seed violations)"),
        report(std::move(rep)) {}
  ValidationReport report;
};

// ---------------------------------------------------------------------------
// Translation

inline Gate translate(const Gate& g, int dx, int dy, int dt) {
  if (dt != 0 && !g.time) throw std::invalid_argument("cannot time-translate an untimed gate");
  Gate out = g;
  for (auto& q : out.qudits) q = q.translated(dx, dy);
  if (out.time) {
    int t = *out.time + dt;
    if (t < 0) throw std::invalid_argument("time underflow");
    out.time = t;
  }
  return out;
}

inline BasisCircuit translate(const BasisCircuit& c, int dx, int dy, int dt) {
  BasisCircuit out;
  out.name = c.name;
  out.gates.reserve(c.gates.size());
  for (const auto& g : c.gates) out.gates.push_back(translate(g, dx, dy, dt));
  for (const auto& q : c.declared_qudits) out.declared_qudits.insert(q.translated(dx, dy));
  return out;
}

// ---------------------------------------------------------------------------
// Theorem-1 validation: a basis circuit tiles collision-free for every patch
// size iff each (layer, seed) pair has at most one acted-on qudit.

inline ValidationReport validate_basis_circuit(const BasisCircuit& c) {
  if (!c.all_times_present()) throw std::invalid_argument("validate_basis_circuit requires all gate times");
  // (time, seed) -> gate-qudit touches. More than one touch per layer and
  // seed means a collision somewhere in the induced lattice: two distinct
  // qudits collide under translation, a twice-touched qudit collides as-is.
  std::map<std::pair<int, int>, std::vector<int>> touches;
  for (const auto& g : c.gates)
    for (const auto& q : g.qudits) touches[{*g.time, q.s}].push_back(g.id);

  ValidationReport rep;
  for (const auto& [key, ids] : touches) {
    if (ids.size() < 2) continue;
    ValidationReport::Violation v{key.first, key.second, ids};
    std::sort(v.gate_ids.begin(), v.gate_ids.end());
    v.gate_ids.erase(std::unique(v.gate_ids.begin(), v.gate_ids.end()), v.gate_ids.end());
    rep.violations.push_back(std::move(v));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Patching (Eq. for P_{n,m,l}): merge translated copies; full duplicates
// (same qudit set, time and label) keep one representative.

struct PatchOrigin {
  int source_id = 0;
  int dx = 0, dy = 0, dt = 0;
};

struct PatchResult {
  BasisCircuit circuit;
  std::vector<PatchOrigin> origins;  // parallel to circuit.gates
  int duplicates_removed = 0;
};

inline PatchResult make_patch_traced(const BasisCircuit& c, const PatchSpec& p, bool validate = true) {
  require_valid(p);
  const bool timed = c.all_times_present();
  if (p.l > 1 && !timed) throw std::invalid_argument("temporal patching requires gate times");
  if (validate && timed) {
    auto rep = validate_basis_circuit(c);
    if (!rep.valid()) throw ValidationError(std::move(rep));
  }
  const int d = c.depth();

  PatchResult out;
  out.circuit.name = c.name;
  // dedup key: (label, time, sorted qudits)
  std::map<std::tuple<std::string, int, std::vector<QuditCoord>>, int> seen;
  for (int rep_t = 0; rep_t < p.l; ++rep_t) {
    const int dt = rep_t * d;
    for (int dx = 0; dx < p.n; ++dx) {
      for (int dy = 0; dy < p.m; ++dy) {
        for (const auto& g : c.gates) {
          Gate tg = translate(g, dx, dy, dt);
          auto key = std::make_tuple(tg.label, tg.time.value_or(-1), tg.qudits);
          std::sort(std::get<2>(key).begin(), std::get<2>(key).end());
          if (seen.count(key)) {
            ++out.duplicates_removed;
            continue;
          }
          seen.emplace(key, static_cast<int>(out.circuit.gates.size()));
          tg.id = static_cast<int>(out.circuit.gates.size());
          out.circuit.gates.push_back(std::move(tg));
          out.origins.push_back({g.id, dx, dy, dt});
        }
        for (const auto& q : c.declared_qudits) out.circuit.declared_qudits.insert(q.translated(dx, dy));
      }
    }
  }
  return out;
}

inline BasisCircuit make_patch(const BasisCircuit& c, const PatchSpec& p) {
  return make_patch_traced(c, p).circuit;
}

}  // namespace tileroute
