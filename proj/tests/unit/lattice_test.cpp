#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "perconet/lattice.hpp"

using namespace perconet;

namespace {

struct Expected {
  LatticeKind kind;
  int nodes_per_cell;
  int edges_per_cell;
  int zmax;
  double dprime;
};

const Expected kTable[] = {
    {LatticeKind::square, 1, 2, 4, 1.0},
    {LatticeKind::triangular, 1, 3, 6, 1.0},
    {LatticeKind::hexagonal, 2, 3, 3, 1.0},
    {LatticeKind::kagome, 3, 6, 4, 1.0},
    {LatticeKind::dice, 3, 6, 6, 1.0 / 3.0},
    {LatticeKind::bowtie, 4, 10, 6, 0.5},
    {LatticeKind::four_eight_eight, 4, 6, 3, 1.0},
    {LatticeKind::snub_square, 4, 10, 5, 1.0},
};

}  // namespace

TEST(LatticeTest, CountsAndCoordination) {
  for (const Expected& e : kTable) {
    const Lattice lat = generate_lattice(e.kind, 6, 4);
    EXPECT_EQ(lat.node_count(), 24 * e.nodes_per_cell) << to_string(e.kind);
    EXPECT_EQ(lat.edge_count(), 24 * e.edges_per_cell) << to_string(e.kind);
    EXPECT_EQ(lat.zmax(), e.zmax) << to_string(e.kind);
    EXPECT_NEAR(lat.dprime(), e.dprime, 1e-15) << to_string(e.kind);
    for (const Node& node : lat.nodes()) {
      EXPECT_EQ(node.degree, standard_coordination(e.kind, node.sublattice)) << to_string(e.kind);
    }
  }
}

TEST(LatticeTest, SpecExamples) {
  const Lattice sq = generate_lattice(LatticeKind::square, 16, 16);
  EXPECT_EQ(sq.node_count(), 256);
  EXPECT_EQ(sq.edge_count(), 512);
  EXPECT_EQ(sq.zmax(), 4);

  const Lattice hex = generate_lattice(LatticeKind::hexagonal, 8, 8);
  EXPECT_EQ(hex.node_count(), 128);
  EXPECT_EQ(hex.edge_count(), 192);
  EXPECT_EQ(hex.zmax(), 3);

  const Lattice dice = generate_lattice(LatticeKind::dice, 8, 8);
  EXPECT_EQ(dice.node_count(), 192);
  EXPECT_EQ(dice.edge_count(), 384);
  std::map<int, int> histogram;
  for (const Node& n : dice.nodes()) ++histogram[n.degree];
  EXPECT_EQ(histogram, (std::map<int, int>{{3, 128}, {6, 64}}));
}

TEST(LatticeTest, EdgesJoinNearestNeighbours) {
  for (const Expected& e : kTable) {
    const Lattice lat = generate_lattice(e.kind, 5, 5);
    const Vec2 px = lat.period_x();
    const Vec2 py = lat.period_y();
    double shortest = 1e300;
    double longest = 0.0;
    for (const Edge& edge : lat.edges()) {
      const Vec2 a = lat.nodes()[edge.a].pos;
      const Vec2 b = lat.nodes()[edge.b].pos;
      const double dx = b.x + edge.shift.x * px.x + edge.shift.y * py.x - a.x;
      const double dy = b.y + edge.shift.x * px.y + edge.shift.y * py.y - a.y;
      const double d = std::hypot(dx, dy);
      shortest = std::min(shortest, d);
      longest = std::max(longest, d);
    }
    // Every tiling here has unit links, except the bowtie and dice whose diagonal or
    // rhombus links are at most sqrt(2) times the shortest.
    EXPECT_GT(shortest, 0.1) << to_string(e.kind);
    EXPECT_LE(longest / shortest, std::sqrt(2.0) + 1e-9) << to_string(e.kind);
  }
}

TEST(LatticeTest, FindEdgeAndIncidence) {
  const Lattice lat = generate_lattice(LatticeKind::kagome, 4, 4);
  int total = 0;
  for (int v = 0; v < lat.node_count(); ++v) total += static_cast<int>(lat.incident_edges(v).size());
  EXPECT_EQ(total, 2 * lat.edge_count());
  for (int e = 0; e < lat.edge_count(); ++e) {
    const Edge& edge = lat.edges()[e];
    EXPECT_EQ(lat.find_edge(edge.a, edge.b, edge.shift), e);
    EXPECT_EQ(lat.find_edge(edge.b, edge.a, -edge.shift), e);
  }
}

TEST(LatticeTest, OpenBoundaryDropsWrappingLinks) {
  const Lattice lat = generate_lattice(LatticeKind::square, 4, 4, Boundary::open);
  EXPECT_EQ(lat.edge_count(), 2 * 4 * 3);
  for (const Edge& e : lat.edges()) EXPECT_TRUE(e.shift.is_zero());
}

TEST(LatticeTest, RejectsSmallSizes) {
  EXPECT_THROW(generate_lattice(LatticeKind::square, 1, 4), LatticeError);
  EXPECT_THROW(generate_lattice(LatticeKind::square, 2, 2, Boundary::open), LatticeError);
  EXPECT_NO_THROW(generate_lattice(LatticeKind::square, 2, 2));
}

TEST(LatticeTest, ParseNames) {
  for (LatticeKind k : kAllLatticeKinds) EXPECT_EQ(parse_lattice_kind(to_string(k)), k);
  EXPECT_EQ(parse_lattice_kind("4-8-8"), LatticeKind::four_eight_eight);
  EXPECT_EQ(parse_lattice_kind("snub"), LatticeKind::snub_square);
  EXPECT_FALSE(parse_lattice_kind("pentagonal"));
}
