#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <string>
#include <tuple>

#include "perconet/network.hpp"
#include "perconet/network_io.hpp"

using namespace perconet;

namespace {

struct FExpected {
  LatticeKind kind;
  double f;
};

// Dice is 2/3 here: a quarter of the hubs cannot cover every rim triangle.
const FExpected kF[] = {
    {LatticeKind::four_eight_eight, 0.25}, {LatticeKind::hexagonal, 0.25},
    {LatticeKind::kagome, 1.0 / 3.0},      {LatticeKind::square, 0.5},
    {LatticeKind::dice, 2.0 / 3.0},        {LatticeKind::snub_square, 0.5},
    {LatticeKind::bowtie, 0.5},            {LatticeKind::triangular, 0.25},
};

using ElementKey = std::tuple<int, int, int, int, int, int, int>;

/// Order-independent description of an element: centre, sorted ends with relative shifts.
ElementKey key_of(const Element& el) {
  std::vector<std::tuple<int, int, int>> ends;
  for (int i = 1; i < el.size(); ++i) ends.emplace_back(el.nodes[i], el.shifts[i].x, el.shifts[i].y);
  if (el.kind == ElementKind::bond) {
    return {el.nodes[0], std::get<0>(ends[0]), std::get<1>(ends[0]), std::get<2>(ends[0]), -1, 0, 0};
  }
  std::sort(ends.begin(), ends.end());
  return {el.nodes[0],          std::get<0>(ends[0]), std::get<1>(ends[0]), std::get<2>(ends[0]),
          std::get<0>(ends[1]), std::get<1>(ends[1]), std::get<2>(ends[1])};
}

}  // namespace

TEST(NetworkTest, CepExamples) {
  const GeneralizedNetwork sq = cep_network(generate_lattice(LatticeKind::square, 16, 16));
  EXPECT_EQ(sq.element_count(), 512);
  EXPECT_EQ(sq.qualified_nodes().size(), 256u);
  EXPECT_DOUBLE_EQ(sq.f(), 1.0);
  for (const Element& el : sq.elements()) EXPECT_EQ(el.size(), 2);

  const GeneralizedNetwork dice = cep_network(generate_lattice(LatticeKind::dice, 8, 8));
  EXPECT_EQ(dice.element_count(), 384);
  EXPECT_EQ(dice.qualified_nodes().size(), 64u);

  const GeneralizedNetwork tri = cep_network(generate_lattice(LatticeKind::triangular, 4, 4));
  EXPECT_EQ(tri.element_count(), 48);
  EXPECT_EQ(tri.qualified_nodes().size(), 16u);
}

TEST(NetworkTest, QepExamples) {
  const NetworkStats oct = network_stats(qep_network(generate_lattice(LatticeKind::four_eight_eight, 2, 2)));
  EXPECT_EQ(oct.ghz_elements, 3 * 4);
  EXPECT_EQ(oct.measured_nodes, 3 * 4);
  EXPECT_EQ(oct.qualified_nodes, 4);

  const NetworkStats sq = network_stats(qep_network(generate_lattice(LatticeKind::square, 6, 6)));
  EXPECT_EQ(sq.ghz_elements, 36);
  EXPECT_EQ(sq.measured_nodes, 18);
  EXPECT_EQ(sq.bond_elements, 0);

  const NetworkStats hex = network_stats(qep_network(generate_lattice(LatticeKind::hexagonal, 2, 2)));
  EXPECT_EQ(hex.nodes, 8);
  EXPECT_EQ(hex.ghz_elements, 6);
  EXPECT_EQ(hex.qualified_nodes, 2);

  const NetworkStats bow = network_stats(qep_network(generate_lattice(LatticeKind::bowtie, 4, 4)));
  EXPECT_DOUBLE_EQ(bow.dprime, 0.5);
  EXPECT_DOUBLE_EQ(bow.f, 0.5);
}

TEST(NetworkTest, FractionOfQualifiedNodes) {
  for (const FExpected& e : kF) {
    const GeneralizedNetwork net = qep_network(generate_lattice(e.kind, 12, 12));
    EXPECT_NEAR(net.f(), e.f, 1e-12) << to_string(e.kind);
  }
}

TEST(NetworkTest, QepElementsPartitionTheLinks) {
  for (LatticeKind kind : kAllLatticeKinds) {
    const Lattice lat = generate_lattice(kind, 6, 6);
    const GeneralizedNetwork net = qep_network(lat);
    int consumed = 0;
    for (const Element& el : net.elements()) {
      ASSERT_TRUE(el.size() == 2 || el.size() == 3);
      consumed += el.size() - 1;
      if (el.kind == ElementKind::ghz) EXPECT_TRUE(net.is_measured(el.nodes[0]));
    }
    EXPECT_EQ(consumed, lat.edge_count()) << to_string(kind);
    EXPECT_NO_THROW(validate_edge_partition(lat, net.elements()));
    for (int v : net.qualified_nodes()) {
      EXPECT_FALSE(net.is_measured(v));
      EXPECT_EQ(lat.nodes()[v].degree, lat.zmax());
    }
  }
}

TEST(NetworkTest, PatternIsTranslationInvariant) {
  for (LatticeKind kind : kAllLatticeKinds) {
    const Lattice lat = generate_lattice(kind, 6, 6);
    const GeneralizedNetwork net = qep_network(lat);
    const int px = net.period_x();
    const int py = net.period_y();
    auto move = [&](int v) {
      const Node& n = lat.nodes()[v];
      return lat.node_id(n.cell_x + px, n.cell_y + py, n.sublattice);
    };
    auto crosses_x = [&](int v) { return lat.nodes()[v].cell_x + px >= lat.lx(); };
    auto crosses_y = [&](int v) { return lat.nodes()[v].cell_y + py >= lat.ly(); };
    std::set<ElementKey> original;
    for (const Element& el : net.elements()) original.insert(key_of(el));
    for (const Element& el : net.elements()) {
      Element moved = el;
      for (int i = 0; i < el.size(); ++i) moved.nodes[i] = move(el.nodes[i]);
      // Re-express image shifts relative to the moved centre.
      for (int i = 1; i < el.size(); ++i) {
        moved.shifts[i].x += (crosses_x(el.nodes[i]) ? 1 : 0) - (crosses_x(el.nodes[0]) ? 1 : 0);
        moved.shifts[i].y += (crosses_y(el.nodes[i]) ? 1 : 0) - (crosses_y(el.nodes[0]) ? 1 : 0);
      }
      EXPECT_TRUE(original.count(key_of(moved))) << to_string(kind);
    }
  }
}

TEST(NetworkTest, PatternSizeConstraints) {
  EXPECT_THROW(qep_network(generate_lattice(LatticeKind::square, 5, 6)), NetworkError);
  EXPECT_THROW(qep_network(generate_lattice(LatticeKind::dice, 4, 6)), NetworkError);
  EXPECT_THROW(qep_network(generate_lattice(LatticeKind::square, 6, 6, Boundary::open)), NetworkError);
}

TEST(NetworkIoTest, RoundTrip) {
  for (LatticeKind kind : {LatticeKind::square, LatticeKind::dice, LatticeKind::snub_square}) {
    const GeneralizedNetwork net = qep_network(generate_lattice(kind, 6, 6));
    const std::string doc = export_network(net);
    const GeneralizedNetwork back = import_network(doc);
    ASSERT_EQ(back.element_count(), net.element_count());
    for (int e = 0; e < net.element_count(); ++e) {
      EXPECT_EQ(key_of(back.elements()[e]), key_of(net.elements()[e]));
      EXPECT_EQ(back.elements()[e].kind, net.elements()[e].kind);
    }
    EXPECT_EQ(back.qualified_nodes(), net.qualified_nodes());
    EXPECT_EQ(back.strategy(), Strategy::qep);
    EXPECT_EQ(export_network(back), doc);
  }
}

TEST(NetworkIoTest, SquareEightByEightRoundTrip) {
  const GeneralizedNetwork net = qep_network(generate_lattice(LatticeKind::square, 8, 8));
  EXPECT_EQ(export_network(import_network(export_network(net))), export_network(net));
}

TEST(NetworkIoTest, RealsUseSeventeenDigits) {
  const std::string doc = export_network(cep_network(generate_lattice(LatticeKind::dice, 3, 3)));
  EXPECT_NE(doc.find("\"dprime\": 0.33333333333333331"), std::string::npos);
}

TEST(NetworkIoTest, SyntaxErrorCarriesPosition) {
  try {
    import_network("{\"meta\": {\"kind\": \"square\",, }");
    FAIL() << "expected a parse error";
  } catch (const NetworkFormatError& e) {
    EXPECT_EQ(e.position(), 28u);
  }
}

TEST(NetworkIoTest, RejectsFourNodeElement) {
  std::string doc = export_network(qep_network(generate_lattice(LatticeKind::square, 4, 4)));
  const auto elements = doc.find("\"elements\"");
  const auto list = doc.find("\"nodes\": [", elements);
  const auto close = doc.find(']', list);
  ASSERT_NE(close, std::string::npos);
  doc.insert(close, ", 5");
  try {
    import_network(doc);
    FAIL() << "expected a size error";
  } catch (const NetworkFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("2 or 3 nodes"), std::string::npos);
  }
}

TEST(NetworkIoTest, RejectsDoublyConsumedLink) {
  const GeneralizedNetwork net = cep_network(generate_lattice(LatticeKind::square, 3, 3));
  std::string doc = export_network(net);
  // Point the second element at the first element's link.
  const Element& a = net.elements()[0];
  const Element& b = net.elements()[1];
  auto text = [](const Element& el) {
    return "{\"nodes\": [" + std::to_string(el.nodes[0]) + ", " + std::to_string(el.nodes[1]) +
           "], \"kind\": \"bond\", \"wrap\": [[0, 0], [" + std::to_string(el.shifts[1].x) + ", " +
           std::to_string(el.shifts[1].y) + "]]}";
  };
  const auto at = doc.find(text(b));
  ASSERT_NE(at, std::string::npos);
  doc.replace(at, text(b).size(), text(a));
  try {
    import_network(doc);
    FAIL() << "expected a consistency error";
  } catch (const NetworkFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("twice"), std::string::npos);
  }
}
