#include "perconet/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace perconet {
namespace {

struct KindName {
  LatticeKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 8> kKindNames{{
    {LatticeKind::square, "square"},
    {LatticeKind::triangular, "triangular"},
    {LatticeKind::hexagonal, "hexagonal"},
    {LatticeKind::kagome, "kagome"},
    {LatticeKind::dice, "dice"},
    {LatticeKind::bowtie, "bowtie"},
    {LatticeKind::four_eight_eight, "four-eight-eight"},
    {LatticeKind::snub_square, "snub-square"},
}};

UnitCell make_square() {
  return {{1, 0}, {0, 1}, {{0, 0}}, {{0, 0, 1, 0}, {0, 0, 0, 1}}};
}

UnitCell make_triangular() {
  const double h = std::sqrt(3.0) / 2.0;
  return {{1, 0}, {-0.5, h}, {{0, 0}}, {{0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 1, 1}}};
}

UnitCell make_hexagonal() {
  const double s = std::sqrt(3.0);
  // Sites A (0) and B (1); A(x,y) links to B(x,y), B(x-1,y), B(x,y-1).
  return {{s, 0},
          {s / 2.0, 1.5},
          {{0, 0}, {s / 2.0, 0.5}},
          {{0, 1, 0, 0}, {0, 1, -1, 0}, {0, 1, 0, -1}}};
}

UnitCell make_kagome() {
  const double h = std::sqrt(3.0) / 2.0;
  // Up triangle a-b-c inside the cell, down triangle b(x,y), a(x+1,y), c(x+1,y-1).
  return {{2, 0},
          {1, 2 * h},
          {{0, 0}, {1, 0}, {0.5, h}},
          {{0, 1, 0, 0}, {0, 2, 0, 0}, {1, 2, 0, 0}, {1, 0, 1, 0}, {2, 0, 0, 1}, {1, 2, 1, -1}}};
}

UnitCell make_dice() {
  const double h = std::sqrt(3.0) / 2.0;
  const Vec2 a1{1, 0};
  const Vec2 a2{0.5, h};
  const Vec2 up{(a1.x + a2.x) / 3.0, (a1.y + a2.y) / 3.0};
  const Vec2 down{2.0 * up.x, 2.0 * up.y};
  // Hub (0) has coordination 6; the triangle centres (1, 2) have 3.
  return {a1,
          a2,
          {{0, 0}, up, down},
          {{1, 0, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}, {2, 0, 1, 0}, {2, 0, 0, 1}, {2, 0, 1, 1}}};
}

UnitCell make_bowtie() {
  // 2x2 block of the square grid. One diagonal is added to every other plaquette in a
  // checkerboard, all with the same orientation, so sites 0 and 3 reach coordination 6
  // and sites 1 and 2 keep coordination 4.
  return {{2, 0},
          {0, 2},
          {{0, 0}, {1, 0}, {0, 1}, {1, 1}},
          {{0, 1, 0, 0},
           {1, 0, 1, 0},
           {2, 3, 0, 0},
           {3, 2, 1, 0},
           {0, 2, 0, 0},
           {2, 0, 0, 1},
           {1, 3, 0, 0},
           {3, 1, 0, 1},
           {0, 3, 0, 0},
           {3, 0, 1, 1}}};
}

UnitCell make_four_eight_eight() {
  const double r = 1.0 / std::sqrt(2.0);
  const double a = 1.0 + std::sqrt(2.0);
  return {{a, 0},
          {0, a},
          {{r, 0}, {0, r}, {-r, 0}, {0, -r}},
          {{0, 1, 0, 0}, {1, 2, 0, 0}, {2, 3, 0, 0}, {3, 0, 0, 0}, {0, 2, 1, 0}, {1, 3, 0, 1}}};
}

UnitCell make_snub_square() {
  const double r = 1.0 / std::sqrt(2.0);
  const double a = (1.0 + std::sqrt(3.0)) / std::sqrt(2.0);
  const double pi = std::acos(-1.0);
  std::vector<Vec2> basis;
  for (double deg : {60.0, 150.0, 240.0, 330.0}) {
    basis.push_back({r * std::cos(deg * pi / 180.0), r * std::sin(deg * pi / 180.0)});
  }
  return {{a, 0},
          {0, a},
          basis,
          {{0, 1, 0, 0},
           {0, 1, 1, 0},
           {0, 2, 0, 1},
           {0, 3, 0, 0},
           {0, 3, 0, 1},
           {1, 2, 0, 0},
           {1, 2, 0, 1},
           {1, 3, -1, 0},
           {2, 3, -1, 0},
           {2, 3, 0, 0}}};
}

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int floor_mod(int a, int b) { return a - b * floor_div(a, b); }

}  // namespace

std::string_view to_string(LatticeKind kind) {
  for (const auto& kn : kKindNames) {
    if (kn.kind == kind) return kn.name;
  }
  return "unknown";
}

std::string_view to_string(Boundary boundary) {
  return boundary == Boundary::periodic ? "periodic" : "open";
}

std::optional<LatticeKind> parse_lattice_kind(std::string_view name) {
  for (const auto& kn : kKindNames) {
    if (kn.name == name) return kn.kind;
  }
  if (name == "4-8-8" || name == "488") return LatticeKind::four_eight_eight;
  if (name == "snub" || name == "3-3-4-3-4") return LatticeKind::snub_square;
  return std::nullopt;
}

std::optional<Boundary> parse_boundary(std::string_view name) {
  if (name == "periodic") return Boundary::periodic;
  if (name == "open") return Boundary::open;
  return std::nullopt;
}

const UnitCell& unit_cell(LatticeKind kind) {
  static const std::array<UnitCell, 8> cells{make_square(),    make_triangular(),
                                             make_hexagonal(), make_kagome(),
                                             make_dice(),      make_bowtie(),
                                             make_four_eight_eight(), make_snub_square()};
  return cells[static_cast<std::size_t>(kind)];
}

int standard_coordination(LatticeKind kind, int sublattice) {
  switch (kind) {
    case LatticeKind::square: return 4;
    case LatticeKind::triangular: return 6;
    case LatticeKind::hexagonal: return 3;
    case LatticeKind::kagome: return 4;
    case LatticeKind::dice: return sublattice == 0 ? 6 : 3;
    case LatticeKind::bowtie: return (sublattice == 0 || sublattice == 3) ? 6 : 4;
    case LatticeKind::four_eight_eight: return 3;
    case LatticeKind::snub_square: return 5;
  }
  return 0;
}

double Lattice::dprime() const {
  if (nodes_.empty()) return 0.0;
  const auto count = std::count_if(nodes_.begin(), nodes_.end(),
                                   [this](const Node& n) { return n.degree == zmax_; });
  return static_cast<double>(count) / static_cast<double>(nodes_.size());
}

int Lattice::node_id(int cx, int cy, int sub) const {
  return (floor_mod(cy, ly_) * lx_ + floor_mod(cx, lx_)) * basis_size_ + sub;
}

Vec2 Lattice::period_x() const {
  const auto& uc = unit_cell(kind_);
  return {uc.a1.x * lx_, uc.a1.y * lx_};
}

Vec2 Lattice::period_y() const {
  const auto& uc = unit_cell(kind_);
  return {uc.a2.x * ly_, uc.a2.y * ly_};
}

std::optional<int> Lattice::find_edge(int a, int b, Shift shift) const {
  for (int e : incident_[a]) {
    const Edge& edge = edges_[e];
    if (edge.a == a && edge.b == b && edge.shift == shift) return e;
    if (edge.b == a && edge.a == b && edge.shift == -shift) return e;
  }
  return std::nullopt;
}

Lattice generate_lattice(LatticeKind kind, int lx, int ly, Boundary boundary) {
  const int min_size = boundary == Boundary::periodic ? 2 : 3;
  if (lx < min_size || ly < min_size) {
    throw LatticeError("lattice size " + std::to_string(lx) + "x" + std::to_string(ly) +
                       " too small for " + std::string(to_string(boundary)) + " boundaries");
  }
  const UnitCell& uc = unit_cell(kind);
  Lattice lat;
  lat.kind_ = kind;
  lat.lx_ = lx;
  lat.ly_ = ly;
  lat.boundary_ = boundary;
  lat.basis_size_ = static_cast<int>(uc.basis.size());

  const int n = lx * ly * lat.basis_size_;
  lat.nodes_.resize(n);
  for (int cy = 0; cy < ly; ++cy) {
    for (int cx = 0; cx < lx; ++cx) {
      for (int s = 0; s < lat.basis_size_; ++s) {
        const int id = lat.node_id(cx, cy, s);
        Node& node = lat.nodes_[id];
        node.id = id;
        node.sublattice = s;
        node.cell_x = cx;
        node.cell_y = cy;
        node.pos = {cx * uc.a1.x + cy * uc.a2.x + uc.basis[s].x,
                    cx * uc.a1.y + cy * uc.a2.y + uc.basis[s].y};
      }
    }
  }

  for (int cy = 0; cy < ly; ++cy) {
    for (int cx = 0; cx < lx; ++cx) {
      for (const CellEdge& ce : uc.edges) {
        const int tx = cx + ce.dx;
        const int ty = cy + ce.dy;
        const Shift shift{floor_div(tx, lx), floor_div(ty, ly)};
        if (boundary == Boundary::open && !shift.is_zero()) continue;
        lat.edges_.push_back({lat.node_id(cx, cy, ce.from), lat.node_id(tx, ty, ce.to), shift});
      }
    }
  }

  lat.incident_.assign(n, {});
  for (int e = 0; e < lat.edge_count(); ++e) {
    const Edge& edge = lat.edges_[e];
    lat.incident_[edge.a].push_back(e);
    lat.incident_[edge.b].push_back(e);
    ++lat.nodes_[edge.a].degree;
    ++lat.nodes_[edge.b].degree;
  }
  for (const Node& node : lat.nodes_) lat.zmax_ = std::max(lat.zmax_, node.degree);
  return lat;
}

}  // namespace perconet
