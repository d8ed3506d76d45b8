#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace perconet {

enum class LatticeKind {
  square,
  triangular,
  hexagonal,
  kagome,
  dice,
  bowtie,
  four_eight_eight,
  snub_square,
};

enum class Boundary { periodic, open };

inline constexpr LatticeKind kAllLatticeKinds[] = {
    LatticeKind::four_eight_eight, LatticeKind::hexagonal, LatticeKind::kagome,
    LatticeKind::square,           LatticeKind::dice,      LatticeKind::snub_square,
    LatticeKind::bowtie,           LatticeKind::triangular,
};

std::string_view to_string(LatticeKind kind);
std::string_view to_string(Boundary boundary);
std::optional<LatticeKind> parse_lattice_kind(std::string_view name);
std::optional<Boundary> parse_boundary(std::string_view name);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Number of whole system periods separating two periodic images.
struct Shift {
  int x = 0;
  int y = 0;

  friend bool operator==(const Shift&, const Shift&) = default;
  Shift operator-() const { return {-x, -y}; }
  Shift operator+(Shift o) const { return {x + o.x, y + o.y}; }
  Shift operator-(Shift o) const { return {x - o.x, y - o.y}; }
  bool is_zero() const { return x == 0 && y == 0; }
};

/// Edge between basis site `from` in cell (x, y) and basis site `to` in cell (x + dx, y + dy).
struct CellEdge {
  int from;
  int to;
  int dx;
  int dy;
};

struct UnitCell {
  Vec2 a1;
  Vec2 a2;
  std::vector<Vec2> basis;
  std::vector<CellEdge> edges;
};

const UnitCell& unit_cell(LatticeKind kind);

struct Node {
  int id = 0;
  Vec2 pos;
  int sublattice = 0;
  int degree = 0;
  int cell_x = 0;
  int cell_y = 0;
};

/// `shift` is the periodic image of `b` as seen from `a`.
struct Edge {
  int a = 0;
  int b = 0;
  Shift shift;
};

class LatticeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Immutable periodic (or open) lattice of physical nodes and links.
class Lattice {
 public:
  LatticeKind kind() const { return kind_; }
  int lx() const { return lx_; }
  int ly() const { return ly_; }
  Boundary boundary() const { return boundary_; }
  int basis_size() const { return basis_size_; }

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  int zmax() const { return zmax_; }
  /// Fraction of nodes that carry the maximum coordination.
  double dprime() const;

  /// Node id of basis site `sub` in cell (cx, cy); cell indices are reduced modulo the size.
  int node_id(int cx, int cy, int sub) const;

  /// Periodic vectors spanning the whole system.
  Vec2 period_x() const;
  Vec2 period_y() const;

  /// Edge id joining a and b at the given image shift, if any.
  std::optional<int> find_edge(int a, int b, Shift shift) const;
  const std::vector<int>& incident_edges(int node) const { return incident_[node]; }

 private:
  friend Lattice generate_lattice(LatticeKind, int, int, Boundary);

  LatticeKind kind_ = LatticeKind::square;
  int lx_ = 0;
  int ly_ = 0;
  Boundary boundary_ = Boundary::periodic;
  int basis_size_ = 1;
  int zmax_ = 0;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
};

/// Builds Lx x Ly unit cells of the given tiling.
/// Throws LatticeError for sizes below 2 (periodic) or 3 (open).
Lattice generate_lattice(LatticeKind kind, int lx, int ly, Boundary boundary = Boundary::periodic);

/// Coordination number expected for a sublattice in the infinite tiling.
int standard_coordination(LatticeKind kind, int sublattice);

}  // namespace perconet
