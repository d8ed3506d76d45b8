#pragma once

#include <optional>
#include <vector>

#include "perconet/lattice.hpp"

namespace perconet {

/// Basis site `sub` of the cell displaced by (dx, dy) from a supercell origin.
struct SiteRef {
  int dx = 0;
  int dy = 0;
  int sub = 0;
};

/// Measurement M at `center` on its links to `end1` and `end2`.
struct GhzRule {
  SiteRef center;
  SiteRef end1;
  SiteRef end2;
};

/// Link left as a Bell pair, as in classical percolation.
struct BellRule {
  SiteRef a;
  SiteRef b;
};

/// Periodic measurement pattern: the rules are repeated on every supercell of
/// period_x x period_y unit cells.
struct MeasurementPattern {
  int period_x = 1;
  int period_y = 1;
  std::vector<GhzRule> ghz;
  std::vector<BellRule> bell;
};

/// Built-in pattern for a lattice kind.
const MeasurementPattern& builtin_pattern(LatticeKind kind);

}  // namespace perconet
