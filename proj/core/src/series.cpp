#include "perconet/series.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace perconet::series {
namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw SeriesError("series coefficient overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw SeriesError("series coefficient overflow");
  return r;
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = checked_mul(r, n - k + i) / i;
  return r;
}

// Node patch: every node within `radius` element hops of the root, with the
// elements that touch a node strictly inside the ball.
struct Patch {
  std::vector<int> global_node;
  std::vector<int> dist;
  std::vector<std::vector<int>> node_elements;  // local element ids
  std::vector<std::vector<int>> members;        // local node ids
  std::vector<int> global_element;
  int radius = 0;

  int node_count() const { return static_cast<int>(global_node.size()); }
  int element_count() const { return static_cast<int>(members.size()); }
  bool on_boundary(int v) const { return dist[v] >= radius; }
};

Patch build_patch(const GeneralizedNetwork& net, int root, int radius) {
  Patch patch;
  patch.radius = radius;
  std::map<int, int> local;
  std::vector<Shift> image;
  std::deque<int> queue;

  local[root] = 0;
  patch.global_node.push_back(root);
  patch.dist.push_back(0);
  image.push_back({});
  queue.push_back(0);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (patch.dist[u] >= radius) continue;
    const int gu = patch.global_node[u];
    for (int e : net.elements_at(gu)) {
      const Element& el = net.elements()[e];
      int self = 0;
      while (el.nodes[self] != gu) ++self;
      for (int i = 0; i < el.size(); ++i) {
        if (i == self) continue;
        const Shift img = image[u] + (el.shifts[i] - el.shifts[self]);
        const auto [it, inserted] = local.try_emplace(el.nodes[i], patch.node_count());
        if (inserted) {
          patch.global_node.push_back(el.nodes[i]);
          patch.dist.push_back(patch.dist[u] + 1);
          image.push_back(img);
          queue.push_back(it->second);
        } else if (!(image[it->second] == img)) {
          throw PatchTooSmall("network too small for a series patch of radius " +
                            std::to_string(radius));
        }
      }
    }
  }

  patch.node_elements.assign(patch.node_count(), {});
  std::map<int, int> local_element;
  for (int u = 0; u < patch.node_count(); ++u) {
    if (patch.dist[u] >= radius) continue;
    for (int e : net.elements_at(patch.global_node[u])) {
      const auto [it, inserted] = local_element.try_emplace(e, patch.element_count());
      if (!inserted) continue;
      const Element& el = net.elements()[e];
      std::vector<int> m;
      for (int i = 0; i < el.size(); ++i) m.push_back(local.at(el.nodes[i]));
      for (int v : m) patch.node_elements[v].push_back(it->second);
      patch.members.push_back(std::move(m));
      patch.global_element.push_back(e);
    }
  }
  return patch;
}

// Depth-first enumeration: every element touching the growing cluster is
// decided exactly once, either occupied (joins the cluster) or closed (perimeter).
class Enumerator {
 public:
  Enumerator(const Patch& patch, int max_perimeter)
      : patch_(patch),
        max_t_(max_perimeter),
        in_cluster_(patch.node_count(), 0),
        state_(patch.element_count(), kUnseen),
        path_used_(patch.element_count(), 0),
        visit_stamp_(patch.node_count(), 0),
        parent_node_(patch.node_count(), -1),
        parent_element_(patch.node_count(), -1) {}

  std::vector<ClusterRecord> run() {
    add_node(0);
    explore(0);
    return std::move(found_);
  }

  int max_dist_seen() const { return max_dist_; }

 private:
  enum : char { kUnseen, kFrontier, kOpen, kClosed };

  void add_node(int v) {
    in_cluster_[v] = 1;
    cluster_.push_back(v);
    for (int e : patch_.node_elements[v]) {
      if (state_[e] == kUnseen) {
        state_[e] = kFrontier;
        queue_.push_back(e);
      }
    }
  }

  void explore(std::size_t next) {
    if (next == queue_.size()) {
      record();
      return;
    }
    const int e = queue_[next];

    if (closed_ + 1 <= max_t_) {
      state_[e] = kClosed;
      ++closed_;
      if (!prunable(next + 1)) explore(next + 1);
      --closed_;
    }

    const std::size_t queue_mark = queue_.size();
    const std::size_t cluster_mark = cluster_.size();
    bool reaches_boundary = false;
    for (int v : patch_.members[e]) {
      if (!in_cluster_[v] && patch_.on_boundary(v)) reaches_boundary = true;
    }
    if (!reaches_boundary) {
      state_[e] = kOpen;
      opened_.push_back(e);
      for (int v : patch_.members[e]) {
        if (!in_cluster_[v]) add_node(v);
      }
      if (!prunable(next + 1)) explore(next + 1);
      opened_.pop_back();
      while (cluster_.size() > cluster_mark) {
        in_cluster_[cluster_.back()] = 0;
        cluster_.pop_back();
      }
      while (queue_.size() > queue_mark) {
        state_[queue_.back()] = kUnseen;
        queue_.pop_back();
      }
    }
    state_[e] = kFrontier;
  }

  void record() {
    ClusterRecord rec;
    rec.occupied = static_cast<int>(opened_.size());
    rec.perimeter = closed_;
    rec.elements.reserve(opened_.size());
    for (int e : opened_) rec.elements.push_back(patch_.global_element[e]);
    std::sort(rec.elements.begin(), rec.elements.end());
    for (int v : cluster_) max_dist_ = std::max(max_dist_, patch_.dist[v]);
    found_.push_back(std::move(rec));
  }

  // Lower bound on the closings still required: element-disjoint paths from the
  // cluster to the patch boundary, each of which must be cut by a perimeter element.
  bool prunable(std::size_t next) {
    const int budget = max_t_ - closed_;
    const int undecided = static_cast<int>(queue_.size() - next);
    if (undecided <= budget) return false;

    std::fill(path_used_.begin(), path_used_.end(), 0);
    int paths = 0;
    std::vector<int> bfs;
    while (paths <= budget) {
      ++stamp_;
      bfs.clear();
      for (int v : cluster_) {
        visit_stamp_[v] = stamp_;
        parent_node_[v] = -1;
        bfs.push_back(v);
      }
      int hit = -1;
      for (std::size_t head = 0; head < bfs.size() && hit < 0; ++head) {
        const int u = bfs[head];
        for (int e : patch_.node_elements[u]) {
          if (state_[e] == kClosed || state_[e] == kOpen || path_used_[e]) continue;
          for (int w : patch_.members[e]) {
            if (visit_stamp_[w] == stamp_) continue;
            visit_stamp_[w] = stamp_;
            parent_node_[w] = u;
            parent_element_[w] = e;
            if (patch_.on_boundary(w)) {
              hit = w;
              break;
            }
            bfs.push_back(w);
          }
          if (hit >= 0) break;
        }
      }
      if (hit < 0) break;
      for (int w = hit; parent_node_[w] >= 0; w = parent_node_[w]) path_used_[parent_element_[w]] = 1;
      ++paths;
    }
    return paths > budget;
  }

  const Patch& patch_;
  int max_t_;
  int closed_ = 0;
  int max_dist_ = 0;
  std::vector<char> in_cluster_;
  std::vector<char> state_;
  std::vector<int> cluster_;
  std::vector<int> queue_;
  std::vector<int> opened_;
  std::vector<ClusterRecord> found_;

  std::vector<char> path_used_;
  std::vector<int> visit_stamp_;
  std::vector<int> parent_node_;
  std::vector<int> parent_element_;
  int stamp_ = 0;
};

}  // namespace

double EpsilonPolynomial::deficit(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs.size())) return 0.0;
  return -static_cast<double>(coeffs[k]) / static_cast<double>(denominator);
}

double EpsilonPolynomial::value_at(double p) const { return eval_series(*this, p); }

std::string EpsilonPolynomial::to_string() const {
  std::ostringstream out;
  auto term = [&](std::int64_t num, int k) {
    const std::int64_t mag = num < 0 ? -num : num;
    const std::int64_t g = std::gcd(mag, denominator);
    const std::int64_t n = mag / g;
    const std::int64_t d = denominator / g;
    std::string c = d == 1 ? std::to_string(n) : std::to_string(n) + "/" + std::to_string(d);
    if (k == 0) return c;
    const std::string power = k == 1 ? "e" : "e^" + std::to_string(k);
    if (n == 1 && d == 1) return power;
    return c + "*" + power;
  };
  bool first = true;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    if (first) {
      if (coeffs[k] < 0) out << "-";
      out << term(coeffs[k], static_cast<int>(k));
      first = false;
    } else {
      out << (coeffs[k] < 0 ? " - " : " + ") << term(coeffs[k], static_cast<int>(k));
    }
  }
  if (first) out << "0";
  return out.str();
}

double eval_series(const EpsilonPolynomial& poly, double p) {
  const double eps = 1.0 - p;
  double acc = 0.0;
  for (std::size_t k = poly.coeffs.size(); k-- > 0;) acc = acc * eps + static_cast<double>(poly.coeffs[k]);
  return acc / static_cast<double>(poly.denominator);
}

LocalClusterEnumeration enumerate_clusters(const GeneralizedNetwork& net, int root,
                                           int max_perimeter) {
  if (root < 0 || root >= net.node_count()) throw SeriesError("root out of range");
  if (max_perimeter < 0 || max_perimeter > kMaxOrder) {
    throw SeriesError("max_perimeter must lie in [0, " + std::to_string(kMaxOrder) + "]");
  }
  int radius = max_perimeter + 2;
  for (;;) {
    const Patch patch = build_patch(net, root, radius);
    Enumerator en(patch, max_perimeter);
    auto clusters = en.run();
    if (en.max_dist_seen() < radius - 1) {
      std::sort(clusters.begin(), clusters.end(), [](const auto& a, const auto& b) {
        return std::tie(a.perimeter, a.occupied, a.elements) <
               std::tie(b.perimeter, b.occupied, b.elements);
      });
      return {root, max_perimeter, radius, std::move(clusters)};
    }
    radius += 2;
  }
}

EpsilonPolynomial theta_from_clusters(const LocalClusterEnumeration& clusters, int max_order) {
  EpsilonPolynomial poly;
  poly.order = max_order;
  poly.coeffs.assign(max_order + 1, 0);
  poly.coeffs[0] = 1;
  for (const ClusterRecord& c : clusters.clusters) {
    for (int j = 0; c.perimeter + j <= max_order; ++j) {
      const std::int64_t term = checked_mul(binomial(c.occupied, j), (j % 2 == 0) ? 1 : -1);
      poly.coeffs[c.perimeter + j] = checked_add(poly.coeffs[c.perimeter + j], -term);
    }
  }
  return poly;
}

SeriesResult theta_series(const GeneralizedNetwork& net, int max_order) {
  if (max_order < 0 || max_order > kMaxOrder) {
    throw SeriesError("order must lie in [0, " + std::to_string(kMaxOrder) + "]");
  }
  std::vector<int> roots;
  for (int v : net.qualified_nodes()) {
    const Node& node = net.lattice().nodes()[v];
    if (node.cell_x < net.period_x() && node.cell_y < net.period_y()) roots.push_back(v);
  }
  if (roots.empty()) throw SeriesError("network has no qualified nodes");

  SeriesResult result;
  for (int root : roots) {
    EpsilonPolynomial poly = theta_from_clusters(enumerate_clusters(net, root, max_order), max_order);
    auto it = std::find_if(result.orbits.begin(), result.orbits.end(),
                           [&](const OrbitSeries& o) { return o.theta == poly; });
    if (it == result.orbits.end()) {
      result.orbits.push_back({{root}, std::move(poly)});
    } else {
      it->roots.push_back(root);
    }
  }

  EpsilonPolynomial avg;
  avg.order = max_order;
  avg.coeffs.assign(max_order + 1, 0);
  for (const OrbitSeries& o : result.orbits) {
    for (int k = 0; k <= max_order; ++k) {
      avg.coeffs[k] = checked_add(
          avg.coeffs[k], checked_mul(o.theta.coeffs[k], static_cast<std::int64_t>(o.roots.size())));
    }
  }
  std::int64_t den = static_cast<std::int64_t>(roots.size());
  std::int64_t g = den;
  for (auto c : avg.coeffs) g = std::gcd(g, c < 0 ? -c : c);
  for (auto& c : avg.coeffs) c /= g;
  avg.denominator = den / g;
  result.theta = std::move(avg);
  return result;
}

SeriesResult theta_series(LatticeKind kind, Strategy strategy, int max_order) {
  const MeasurementPattern& pattern = builtin_pattern(kind);
  const int px = strategy == Strategy::qep ? pattern.period_x : 1;
  const int py = strategy == Strategy::qep ? pattern.period_y : 1;
  auto round_up = [](int v, int m) { return (v + m - 1) / m * m; };
  for (int size = max_order + 6;; size *= 2) {
    const Lattice lattice = generate_lattice(kind, round_up(size, px), round_up(size, py));
    try {
      return theta_series(build_network(lattice, strategy), max_order);
    } catch (const PatchTooSmall&) {
      if (size > 1024) throw;
    }
  }
}

}  // namespace perconet::series
