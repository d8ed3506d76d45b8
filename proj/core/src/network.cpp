#include "perconet/network.hpp"

#include <algorithm>
#include <string>

namespace perconet {
namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::string_view to_string(Strategy strategy) {
  return strategy == Strategy::cep ? "cep" : "qep";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  if (name == "cep") return Strategy::cep;
  if (name == "qep") return Strategy::qep;
  return std::nullopt;
}

GeneralizedNetwork::GeneralizedNetwork(Lattice lattice, Strategy strategy,
                                       std::vector<Element> elements, std::vector<char> measured,
                                       int period_x, int period_y)
    : lattice_(std::move(lattice)),
      strategy_(strategy),
      elements_(std::move(elements)),
      measured_(std::move(measured)),
      period_x_(period_x),
      period_y_(period_y) {
  const int n = lattice_.node_count();
  if (static_cast<int>(measured_.size()) != n) {
    throw NetworkError("measured flags do not match the node count");
  }
  incidence_.assign(n, {});
  for (int e = 0; e < element_count(); ++e) {
    const Element& el = elements_[e];
    for (int i = 0; i < el.size(); ++i) {
      const int v = el.nodes[i];
      if (v < 0 || v >= n) throw NetworkError("element references unknown node");
      incidence_[v].push_back(e);
    }
  }
  qualified_.assign(n, 0);
  for (const Node& node : lattice_.nodes()) {
    if (node.degree == lattice_.zmax() && !measured_[node.id]) {
      qualified_[node.id] = 1;
      qualified_ids_.push_back(node.id);
    }
  }
}

double GeneralizedNetwork::dhat() const {
  return static_cast<double>(qualified_ids_.size()) / static_cast<double>(node_count());
}

double GeneralizedNetwork::f() const { return dhat() / lattice_.dprime(); }

void validate_edge_partition(const Lattice& lattice, const std::vector<Element>& elements) {
  std::vector<int> uses(lattice.edge_count(), 0);
  auto consume = [&](int a, int b, Shift shift) {
    const auto e = lattice.find_edge(a, b, shift);
    if (!e) {
      throw NetworkError("element uses a link " + std::to_string(a) + "-" + std::to_string(b) +
                         " that is not in the lattice");
    }
    if (++uses[*e] > 1) {
      throw NetworkError("link " + std::to_string(a) + "-" + std::to_string(b) +
                         " is consumed twice");
    }
  };
  for (const Element& el : elements) {
    if (el.kind == ElementKind::bond) {
      consume(el.nodes[0], el.nodes[1], el.shifts[1]);
    } else {
      consume(el.nodes[0], el.nodes[1], el.shifts[1]);
      consume(el.nodes[0], el.nodes[2], el.shifts[2]);
    }
  }
  const auto unused = std::find(uses.begin(), uses.end(), 0);
  if (unused != uses.end()) {
    const Edge& edge = lattice.edges()[unused - uses.begin()];
    throw NetworkError("link " + std::to_string(edge.a) + "-" + std::to_string(edge.b) +
                       " is not consumed by any element");
  }
}

GeneralizedNetwork cep_network(const Lattice& lattice) {
  std::vector<Element> elements;
  elements.reserve(lattice.edge_count());
  for (const Edge& edge : lattice.edges()) {
    Element el;
    el.kind = ElementKind::bond;
    el.nodes = {edge.a, edge.b, -1};
    el.shifts = {Shift{}, edge.shift, Shift{}};
    elements.push_back(el);
  }
  return GeneralizedNetwork(lattice, Strategy::cep, std::move(elements),
                            std::vector<char>(lattice.node_count(), 0));
}

GeneralizedNetwork apply_pattern(const Lattice& lattice, const MeasurementPattern& pattern) {
  if (lattice.boundary() != Boundary::periodic) {
    throw NetworkError("measurement patterns need periodic boundaries");
  }
  if (lattice.lx() % pattern.period_x != 0 || lattice.ly() % pattern.period_y != 0) {
    throw NetworkError("lattice size " + std::to_string(lattice.lx()) + "x" +
                       std::to_string(lattice.ly()) + " is not a multiple of the pattern period " +
                       std::to_string(pattern.period_x) + "x" + std::to_string(pattern.period_y));
  }
  const int lx = lattice.lx();
  const int ly = lattice.ly();
  std::vector<Element> elements;
  std::vector<char> measured(lattice.node_count(), 0);

  for (int oy = 0; oy < ly; oy += pattern.period_y) {
    for (int ox = 0; ox < lx; ox += pattern.period_x) {
      auto resolve = [&](const SiteRef& ref) {
        return lattice.node_id(ox + ref.dx, oy + ref.dy, ref.sub);
      };
      auto image = [&](const SiteRef& ref) {
        return Shift{floor_div(ox + ref.dx, lx), floor_div(oy + ref.dy, ly)};
      };
      for (const GhzRule& rule : pattern.ghz) {
        Element el;
        el.kind = ElementKind::ghz;
        el.nodes = {resolve(rule.center), resolve(rule.end1), resolve(rule.end2)};
        const Shift base = image(rule.center);
        el.shifts = {Shift{}, image(rule.end1) - base, image(rule.end2) - base};
        measured[el.nodes[0]] = 1;
        elements.push_back(el);
      }
      for (const BellRule& rule : pattern.bell) {
        Element el;
        el.kind = ElementKind::bond;
        el.nodes = {resolve(rule.a), resolve(rule.b), -1};
        el.shifts = {Shift{}, image(rule.b) - image(rule.a), Shift{}};
        elements.push_back(el);
      }
    }
  }
  validate_edge_partition(lattice, elements);
  return GeneralizedNetwork(lattice, Strategy::qep, std::move(elements), std::move(measured),
                            pattern.period_x, pattern.period_y);
}

GeneralizedNetwork qep_network(const Lattice& lattice) {
  return apply_pattern(lattice, builtin_pattern(lattice.kind()));
}

GeneralizedNetwork build_network(const Lattice& lattice, Strategy strategy) {
  return strategy == Strategy::cep ? cep_network(lattice) : qep_network(lattice);
}

NetworkStats network_stats(const GeneralizedNetwork& net) {
  NetworkStats s;
  s.nodes = net.node_count();
  for (const Element& el : net.elements()) {
    (el.kind == ElementKind::bond ? s.bond_elements : s.ghz_elements) += 1;
  }
  for (int v = 0; v < net.node_count(); ++v) s.measured_nodes += net.is_measured(v) ? 1 : 0;
  s.qualified_nodes = static_cast<int>(net.qualified_nodes().size());
  s.zmax = net.lattice().zmax();
  s.dprime = net.lattice().dprime();
  s.dhat = net.dhat();
  s.f = net.f();
  return s;
}

}  // namespace perconet
