#pragma once

#include <compare>
#include <cstdlib>
#include <functional>
#include <string>

namespace tileroute {

/// A qudit (or basis-graph vertex) of a periodic lattice: integer cell
/// coordinates plus a seed number distinguishing qudits within one cell.
/// Ordered lexicographically on (x, y, s) for canonicalization.
struct QuditCoord {
  int x = 0;
  int y = 0;
  int s = 0;

  friend auto operator<=>(const QuditCoord&, const QuditCoord&) = default;

  [[nodiscard]] QuditCoord translated(int dx, int dy) const { return {x + dx, y + dy, s}; }
};

inline std::string to_string(const QuditCoord& q) {
  return "(" + std::to_string(q.x) + "," + std::to_string(q.y) + "," + std::to_string(q.s) + ")";
}

// floor division/modulo; the usual C++ truncation is wrong for negative cells
inline int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline int floor_mod(int a, int b) { return a - floor_div(a, b) * b; }

struct QuditCoordHash {
  std::size_t operator()(const QuditCoord& q) const noexcept {
    std::size_t h = std::hash<long long>()((static_cast<long long>(q.x) << 21) ^
                                           (static_cast<long long>(q.y) << 42) ^ q.s);
    return h;
  }
};

}  // namespace tileroute
