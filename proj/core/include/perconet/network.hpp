#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "perconet/lattice.hpp"
#include "perconet/pattern.hpp"

namespace perconet {

enum class Strategy { cep, qep };

std::string_view to_string(Strategy strategy);
std::optional<Strategy> parse_strategy(std::string_view name);

enum class ElementKind { bond, ghz };

/// Percolation unit: a Bell bond (2 nodes) or a GHZ triangle (3 nodes, centre first).
/// `shifts[i]` is the periodic image of `nodes[i]` relative to `nodes[0]`.
struct Element {
  ElementKind kind = ElementKind::bond;
  std::array<int, 3> nodes{};
  std::array<Shift, 3> shifts{};

  int size() const { return kind == ElementKind::bond ? 2 : 3; }
};

class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hypergraph of percolation elements over the physical nodes of a lattice.
class GeneralizedNetwork {
 public:
  GeneralizedNetwork(Lattice lattice, Strategy strategy, std::vector<Element> elements,
                     std::vector<char> measured, int period_x = 1, int period_y = 1);

  const Lattice& lattice() const { return lattice_; }
  Strategy strategy() const { return strategy_; }
  const std::vector<Element>& elements() const { return elements_; }
  int node_count() const { return lattice_.node_count(); }
  int element_count() const { return static_cast<int>(elements_.size()); }

  bool is_measured(int node) const { return measured_[node] != 0; }
  bool is_qualified(int node) const { return qualified_[node] != 0; }
  const std::vector<int>& qualified_nodes() const { return qualified_ids_; }

  /// Elements containing a node.
  const std::vector<int>& elements_at(int node) const { return incidence_[node]; }

  double dhat() const;
  double f() const;

  /// Translation period of the element structure, in unit cells.
  int period_x() const { return period_x_; }
  int period_y() const { return period_y_; }

 private:
  Lattice lattice_;
  Strategy strategy_;
  std::vector<Element> elements_;
  std::vector<char> measured_;
  std::vector<char> qualified_;
  std::vector<int> qualified_ids_;
  std::vector<std::vector<int>> incidence_;
  int period_x_ = 1;
  int period_y_ = 1;
};

/// Every link becomes a Bell bond; qualified nodes are all max-coordination nodes.
GeneralizedNetwork cep_network(const Lattice& lattice);

/// Applies the measurement pattern for the lattice kind. Throws NetworkError when the
/// lattice is open or its size is not a multiple of the pattern period.
GeneralizedNetwork qep_network(const Lattice& lattice);

/// Applies an explicit pattern; used by qep_network and for experimenting with patterns.
GeneralizedNetwork apply_pattern(const Lattice& lattice, const MeasurementPattern& pattern);

GeneralizedNetwork build_network(const Lattice& lattice, Strategy strategy);

struct NetworkStats {
  int nodes = 0;
  int bond_elements = 0;
  int ghz_elements = 0;
  int measured_nodes = 0;
  int qualified_nodes = 0;
  int zmax = 0;
  double dprime = 0.0;
  double dhat = 0.0;
  double f = 0.0;
};

NetworkStats network_stats(const GeneralizedNetwork& net);

/// Checks that the elements partition the lattice links and that GHZ elements
/// are built from two links at their centre. Throws NetworkError on violation.
void validate_edge_partition(const Lattice& lattice, const std::vector<Element>& elements);

}  // namespace perconet
