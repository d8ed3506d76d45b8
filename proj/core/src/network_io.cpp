#include "perconet/network_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace perconet {
namespace {

using nlohmann::json;

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* boolean(bool b) { return b ? "true" : "false"; }

template <class T>
T field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw NetworkFormatError(where + ": missing \"" + key + "\"");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw NetworkFormatError(where + ": \"" + key + "\" has the wrong type");
  }
}

}  // namespace

std::string export_network(const GeneralizedNetwork& net) {
  const Lattice& lat = net.lattice();
  std::ostringstream out;
  out << "{\n  \"meta\": {"
      << "\"kind\": \"" << to_string(lat.kind()) << "\", "
      << "\"Lx\": " << lat.lx() << ", "
      << "\"Ly\": " << lat.ly() << ", "
      << "\"boundary\": \"" << to_string(lat.boundary()) << "\", "
      << "\"strategy\": \"" << to_string(net.strategy()) << "\", "
      << "\"period\": [" << net.period_x() << ", " << net.period_y() << "], "
      << "\"Zmax\": " << lat.zmax() << ", "
      << "\"dprime\": " << real(lat.dprime()) << ", "
      << "\"dhat\": " << real(net.dhat()) << ", "
      << "\"f\": " << real(net.f()) << "},\n  \"nodes\": [";
  for (const Node& node : lat.nodes()) {
    out << (node.id == 0 ? "\n" : ",\n") << "    {\"id\": " << node.id << ", \"pos\": ["
        << real(node.pos.x) << ", " << real(node.pos.y) << "], \"degree\": " << node.degree
        << ", \"qualified\": " << boolean(net.is_qualified(node.id))
        << ", \"measured\": " << boolean(net.is_measured(node.id)) << "}";
  }
  out << "\n  ],\n  \"elements\": [";
  bool first = true;
  for (const Element& el : net.elements()) {
    out << (first ? "\n" : ",\n") << "    {\"nodes\": [";
    for (int i = 0; i < el.size(); ++i) out << (i ? ", " : "") << el.nodes[i];
    out << "], \"kind\": \"" << (el.kind == ElementKind::bond ? "bond" : "ghz") << "\", \"wrap\": [";
    for (int i = 0; i < el.size(); ++i) {
      out << (i ? ", " : "") << "[" << el.shifts[i].x << ", " << el.shifts[i].y << "]";
    }
    out << "]}";
    first = false;
  }
  out << "\n  ]\n}\n";
  return out.str();
}

GeneralizedNetwork import_network(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw NetworkFormatError(std::string("syntax error: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw NetworkFormatError("document is not a JSON object", 0);

  const json& meta = doc.contains("meta") ? doc["meta"] : json();
  const auto kind_name = field<std::string>(meta, "kind", "meta");
  const auto kind = parse_lattice_kind(kind_name);
  if (!kind) throw NetworkFormatError("meta: unknown lattice kind \"" + kind_name + "\"");
  const auto boundary_name = field<std::string>(meta, "boundary", "meta");
  const auto boundary = parse_boundary(boundary_name);
  if (!boundary) throw NetworkFormatError("meta: unknown boundary \"" + boundary_name + "\"");
  const int lx = field<int>(meta, "Lx", "meta");
  const int ly = field<int>(meta, "Ly", "meta");
  Strategy strategy = Strategy::cep;
  if (meta.contains("strategy")) {
    const auto s = parse_strategy(field<std::string>(meta, "strategy", "meta"));
    if (!s) throw NetworkFormatError("meta: unknown strategy");
    strategy = *s;
  }
  int period_x = 1;
  int period_y = 1;
  if (meta.contains("period")) {
    const auto period = field<std::vector<int>>(meta, "period", "meta");
    if (period.size() != 2 || period[0] < 1 || period[1] < 1) {
      throw NetworkFormatError("meta: period must be two positive integers");
    }
    period_x = period[0];
    period_y = period[1];
  }

  Lattice lattice;
  try {
    lattice = generate_lattice(*kind, lx, ly, *boundary);
  } catch (const LatticeError& e) {
    throw NetworkFormatError(std::string("meta: ") + e.what());
  }

  if (!doc.contains("nodes") || !doc["nodes"].is_array()) throw NetworkFormatError("missing \"nodes\" array");
  const json& nodes = doc["nodes"];
  if (static_cast<int>(nodes.size()) != lattice.node_count()) {
    throw NetworkFormatError("nodes: expected " + std::to_string(lattice.node_count()) + " entries, found " +
                             std::to_string(nodes.size()));
  }
  std::vector<char> measured(lattice.node_count(), 0);
  bool measured_listed = false;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string where = "nodes[" + std::to_string(i) + "]";
    const int id = field<int>(nodes[i], "id", where);
    if (id != static_cast<int>(i)) throw NetworkFormatError(where + ": ids must be dense and ordered");
    const int degree = field<int>(nodes[i], "degree", where);
    if (degree != lattice.nodes()[i].degree) throw NetworkFormatError(where + ": degree does not match the lattice");
    if (nodes[i].contains("measured")) {
      measured[i] = field<bool>(nodes[i], "measured", where) ? 1 : 0;
      measured_listed = true;
    }
  }

  if (!doc.contains("elements") || !doc["elements"].is_array()) {
    throw NetworkFormatError("missing \"elements\" array");
  }
  std::vector<Element> elements;
  for (std::size_t i = 0; i < doc["elements"].size(); ++i) {
    const json& item = doc["elements"][i];
    const std::string where = "elements[" + std::to_string(i) + "]";
    const auto members = field<std::vector<int>>(item, "nodes", where);
    if (members.size() != 2 && members.size() != 3) {
      throw NetworkFormatError(where + ": elements have 2 or 3 nodes, found " + std::to_string(members.size()));
    }
    const auto kind_tag = field<std::string>(item, "kind", where);
    Element el;
    if (kind_tag == "bond") {
      el.kind = ElementKind::bond;
    } else if (kind_tag == "ghz") {
      el.kind = ElementKind::ghz;
    } else {
      throw NetworkFormatError(where + ": unknown element kind \"" + kind_tag + "\"");
    }
    if (static_cast<std::size_t>(el.size()) != members.size()) {
      throw NetworkFormatError(where + ": " + kind_tag + " element with " + std::to_string(members.size()) + " nodes");
    }
    const auto wraps = field<std::vector<std::vector<int>>>(item, "wrap", where);
    if (wraps.size() != members.size()) throw NetworkFormatError(where + ": one wrap pair per node expected");
    el.nodes = {-1, -1, -1};
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (members[k] < 0 || members[k] >= lattice.node_count()) {
        throw NetworkFormatError(where + ": node id out of range");
      }
      if (wraps[k].size() != 2) throw NetworkFormatError(where + ": wrap entries are [bx, by]");
      el.nodes[k] = members[k];
      el.shifts[k] = Shift{wraps[k][0], wraps[k][1]};
    }
    if (!el.shifts[0].is_zero()) throw NetworkFormatError(where + ": wraps are relative to the first node");
    if (el.kind == ElementKind::ghz && !measured_listed) measured[el.nodes[0]] = 1;
    elements.push_back(el);
  }
  try {
    validate_edge_partition(lattice, elements);
    return GeneralizedNetwork(std::move(lattice), strategy, std::move(elements), std::move(measured),
                              period_x, period_y);
  } catch (const NetworkError& e) {
    throw NetworkFormatError(std::string("inconsistent network: ") + e.what());
  }
}

GeneralizedNetwork load_network(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NetworkFormatError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return import_network(buf.str());
}

void save_network(const GeneralizedNetwork& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NetworkFormatError("cannot write " + path);
  out << export_network(net);
}

}  // namespace perconet
