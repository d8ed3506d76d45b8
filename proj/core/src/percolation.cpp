#include "perconet/percolation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <thread>

#include "perconet/rng.hpp"
#include "perconet/union_find.hpp"

namespace perconet {
namespace {

constexpr std::int64_t kChunk = 64;
constexpr std::uint64_t kBootstrapSalt = 0x5bd1e9955bd1e995ULL;

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

template <class Fn>
void run_parallel(std::int64_t tasks, int workers, Fn&& fn) {
  workers = static_cast<int>(std::min<std::int64_t>(workers, std::max<std::int64_t>(tasks, 1)));
  std::atomic<std::int64_t> next{0};
  auto loop = [&](int worker) {
    for (std::int64_t t = next++; t < tasks; t = next++) fn(worker, t);
  };
  if (workers <= 1) {
    loop(0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(loop, w);
  loop(0);
  for (auto& t : pool) t.join();
}

std::string network_id(const GeneralizedNetwork& net) {
  const Lattice& lat = net.lattice();
  return std::string(to_string(lat.kind())) + "-" + std::string(to_string(net.strategy())) + "-" +
         std::to_string(lat.lx()) + "x" + std::to_string(lat.ly());
}

/// Tail sums of a binomial window: tail[i] = P(K >= lo + i).
std::vector<double> tail_sums(const BinomialWindow& w) {
  std::vector<double> tail(w.weights.size() + 1, 0.0);
  for (int i = static_cast<int>(w.weights.size()) - 1; i >= 0; --i) tail[i] = tail[i + 1] + w.weights[i];
  return tail;
}

/// P(K >= k) for a first-event count k; k < 0 means the event never happened.
double event_by(const BinomialWindow& w, const std::vector<double>& tail, int k) {
  if (k < 0) return 0.0;
  if (k <= w.lo) return 1.0;
  if (k > w.hi()) return 0.0;
  return tail[k - w.lo];
}

struct ChunkSums {
  std::vector<double> wrap, wrap2, theta, theta2, pair, pair2, largest;

  explicit ChunkSums(std::size_t g = 0)
      : wrap(g), wrap2(g), theta(g), theta2(g), pair(g), pair2(g), largest(g) {}
};

struct Worker {
  UnionFind uf;
  std::vector<int> order;
  std::vector<int> qcount;
  std::vector<std::int32_t> w_k;
  std::vector<std::int32_t> big_k;
  std::vector<std::int64_t> theta_sum;
  std::vector<std::int64_t> largest_sum;
};

double mean_of(double s, double n) { return s / n; }

double stderr_of(double s, double s2, double n) {
  if (n < 2) return 0.0;
  const double m = s / n;
  const double var = std::max(0.0, (s2 - n * m * m) / (n - 1));
  return std::sqrt(var / n);
}

/// Empirical distribution of first-wrap counts, as cdf[k] = fraction wrapped by k.
struct WrapCurve {
  int n = 0;
  std::vector<double> cdf;

  WrapCurve(const std::vector<std::int32_t>& first, int n_elements, const std::vector<std::size_t>* pick = nullptr)
      : n(n_elements), cdf(n_elements + 1, 0.0) {
    const std::size_t count = pick ? pick->size() : first.size();
    for (std::size_t i = 0; i < count; ++i) {
      const std::int32_t k = first[pick ? (*pick)[i] : i];
      if (k >= 0) cdf[k] += 1.0;
    }
    double acc = 0.0;
    for (double& c : cdf) {
      acc += c;
      c = acc / static_cast<double>(count);
    }
  }

  double at(double p) const {
    const BinomialWindow w = binomial_window(n, p);
    double r = 0.0;
    for (std::size_t i = 0; i < w.weights.size(); ++i) r += w.weights[i] * cdf[w.lo + i];
    return r;
  }
};

double bisect_crossing(const WrapCurve& a, const WrapCurve& b, double lo, double hi) {
  double dlo = b.at(lo) - a.at(lo);
  for (int it = 0; it < 60 && hi - lo > 1e-10; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double d = b.at(mid) - a.at(mid);
    if ((d > 0) == (dlo > 0)) {
      lo = mid;
      dlo = d;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Finds where the larger system's curve overtakes the smaller one's inside [from, to].
std::optional<double> find_crossing(const WrapCurve& small, const WrapCurve& large, double from,
                                    double to, double step) {
  std::optional<double> best;
  double best_score = std::numeric_limits<double>::infinity();
  double prev_p = from;
  double prev_d = large.at(from) - small.at(from);
  for (double p = from + step; p <= to + 1e-12; p += step) {
    const double d = large.at(p) - small.at(p);
    if (prev_d <= 0.0 && d > 0.0) {
      const double x = bisect_crossing(small, large, prev_p, p);
      const double r = small.at(x);
      if (r > 0.02 && r < 0.98 && std::abs(r - 0.5) < best_score) {
        best_score = std::abs(r - 0.5);
        best = x;
      }
    }
    prev_p = p;
    prev_d = d;
  }
  return best;
}

}  // namespace

ClusterLabeling sample_and_cluster(const GeneralizedNetwork& net, double p, std::uint64_t seed) {
  const int n = net.node_count();
  UnionFind uf(n);
  CounterRng rng(seed, 0);
  ClusterLabeling out;
  out.occupied.assign(net.element_count(), 0);
  for (int e = 0; e < net.element_count(); ++e) {
    if (rng.uniform() >= p) continue;
    out.occupied[e] = 1;
    const Element& el = net.elements()[e];
    for (int j = 1; j < el.size(); ++j) uf.unite(el.nodes[0], el.nodes[j], el.shifts[j]);
  }
  out.label.assign(n, -1);
  std::vector<int> label_of_root(n, -1);
  for (int v = 0; v < n; ++v) {
    const int r = uf.find(v);
    if (label_of_root[r] < 0) {
      label_of_root[r] = out.cluster_count++;
      out.wrapping.push_back(uf.wraps(r) ? 1 : 0);
      out.sizes.push_back(uf.root_size(r));
    }
    out.label[v] = label_of_root[r];
  }
  return out;
}

BinomialWindow binomial_window(int n, double p) {
  BinomialWindow w;
  if (n <= 0 || p <= 0.0) {
    w.lo = 0;
    w.weights = {1.0};
    return w;
  }
  if (p >= 1.0) {
    w.lo = n;
    w.weights = {1.0};
    return w;
  }
  const double q = 1.0 - p;
  const int mode = std::min(n, static_cast<int>(std::floor((n + 1) * p)));
  constexpr double cut = 1e-17;
  std::vector<double> down;  // k = mode-1, mode-2, ...
  double v = 1.0;
  for (int k = mode; k > 0; --k) {
    v *= static_cast<double>(k) / static_cast<double>(n - k + 1) * (q / p);
    if (v < cut) break;
    down.push_back(v);
  }
  std::vector<double> up;  // k = mode+1, ...
  v = 1.0;
  for (int k = mode; k < n; ++k) {
    v *= static_cast<double>(n - k) / static_cast<double>(k + 1) * (p / q);
    if (v < cut) break;
    up.push_back(v);
  }
  w.lo = mode - static_cast<int>(down.size());
  w.weights.reserve(down.size() + 1 + up.size());
  w.weights.assign(down.rbegin(), down.rend());
  w.weights.push_back(1.0);
  w.weights.insert(w.weights.end(), up.begin(), up.end());
  double total = 0.0;
  for (double x : w.weights) total += x;
  for (double& x : w.weights) x /= total;
  return w;
}

SweepResult newman_ziff_sweep(const GeneralizedNetwork& net, const SweepConfig& config) {
  const int n_el = net.element_count();
  const int n_nodes = net.node_count();
  if (n_el == 0) throw EstimationError("network has no elements");
  if (config.samples < 1) throw EstimationError("at least one sample is needed");
  const int n_q = static_cast<int>(net.qualified_nodes().size());
  const bool theta = config.track_theta && n_q > 0;
  const bool pair = config.pair_a >= 0 && config.pair_b >= 0;
  for (double p : config.p_grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw EstimationError("p outside [0, 1]");
  }

  const std::size_t g = config.p_grid.size();
  std::vector<BinomialWindow> windows;
  std::vector<std::vector<double>> tails;
  for (double p : config.p_grid) {
    windows.push_back(binomial_window(n_el, p));
    tails.push_back(tail_sums(windows.back()));
  }

  const int workers = resolve_workers(config.workers);
  std::vector<Worker> state(workers);
  for (Worker& w : state) {
    w.theta_sum.assign(theta ? n_el + 1 : 0, 0);
    w.largest_sum.assign(config.track_largest ? n_el + 1 : 0, 0);
  }

  SweepResult res;
  res.element_count = n_el;
  res.qualified_count = n_q;
  res.samples = config.samples;
  res.first_wrap.assign(config.samples, -1);
  if (pair) res.first_pair.assign(config.samples, -1);

  const std::int64_t chunks = (config.samples + kChunk - 1) / kChunk;
  std::vector<ChunkSums> chunk_sums(chunks, ChunkSums(g));
  const auto& elements = net.elements();

  run_parallel(chunks, workers, [&](int wid, std::int64_t chunk) {
    Worker& w = state[wid];
    ChunkSums& acc = chunk_sums[chunk];
    const std::int64_t end = std::min(config.samples, (chunk + 1) * kChunk);
    for (std::int64_t s = chunk * kChunk; s < end; ++s) {
      CounterRng rng(config.seed, static_cast<std::uint64_t>(s));
      w.uf.reset(n_nodes);
      w.order.resize(n_el);
      std::iota(w.order.begin(), w.order.end(), 0);
      for (int i = n_el - 1; i > 0; --i) {
        std::swap(w.order[i], w.order[rng.below(static_cast<std::uint64_t>(i) + 1)]);
      }
      if (theta) {
        w.qcount.assign(n_nodes, 0);
        for (int v : net.qualified_nodes()) w.qcount[v] = 1;
        w.w_k.assign(n_el + 1, 0);
      }
      if (config.track_largest) w.big_k.assign(n_el + 1, 1);
      std::int32_t first_wrap = -1;
      std::int32_t first_pair = -1;
      int wrapped = 0;
      int largest = 1;
      for (int k = 1; k <= n_el; ++k) {
        const Element& el = elements[w.order[k - 1]];
        for (int j = 1; j < el.size(); ++j) {
          const int a = el.nodes[0];
          const int b = el.nodes[j];
          int ra = 0, rb = 0;
          bool wa = false, wb = false;
          if (theta) {
            ra = w.uf.find(a);
            rb = w.uf.find(b);
            wa = w.uf.wraps(ra);
            wb = w.uf.wraps(rb);
          }
          const UnionFind::Merge m = w.uf.unite(a, b, el.shifts[j]);
          if (theta) {
            if (!m.joined) {
              if (m.started_wrap) wrapped += w.qcount[m.root];
            } else {
              const int qa = w.qcount[ra];
              const int qb = w.qcount[rb];
              wrapped -= (wa ? qa : 0) + (wb ? qb : 0);
              w.qcount[m.root] = qa + qb;
              if (w.uf.wraps(m.root)) wrapped += qa + qb;
            }
          }
          if (first_wrap < 0 && w.uf.wraps(m.root)) first_wrap = k;
          if (m.joined) largest = std::max(largest, w.uf.root_size(m.root));
        }
        if (pair && first_pair < 0 && w.uf.connected(config.pair_a, config.pair_b)) first_pair = k;
        if (theta) w.w_k[k] = wrapped;
        if (config.track_largest) w.big_k[k] = largest;
      }
      if (pair && first_pair < 0 && config.pair_a == config.pair_b) first_pair = 0;
      res.first_wrap[s] = first_wrap;
      if (pair) res.first_pair[s] = first_pair;
      if (theta) {
        for (int k = 0; k <= n_el; ++k) w.theta_sum[k] += w.w_k[k];
      }
      if (config.track_largest) {
        for (int k = 0; k <= n_el; ++k) w.largest_sum[k] += w.big_k[k];
      }
      for (std::size_t i = 0; i < g; ++i) {
        const BinomialWindow& win = windows[i];
        const double wv = event_by(win, tails[i], first_wrap);
        acc.wrap[i] += wv;
        acc.wrap2[i] += wv * wv;
        if (theta) {
          double t = 0.0;
          for (std::size_t j = 0; j < win.weights.size(); ++j) t += win.weights[j] * w.w_k[win.lo + j];
          t /= n_q;
          acc.theta[i] += t;
          acc.theta2[i] += t * t;
        }
        if (config.track_largest) {
          double t = 0.0;
          for (std::size_t j = 0; j < win.weights.size(); ++j) t += win.weights[j] * w.big_k[win.lo + j];
          acc.largest[i] += t / n_nodes;
        }
        if (pair) {
          const double pv = event_by(win, tails[i], first_pair);
          acc.pair[i] += pv;
          acc.pair2[i] += pv * pv;
        }
      }
    }
  });

  const double ns = static_cast<double>(config.samples);
  ChunkSums total(g);
  for (const ChunkSums& c : chunk_sums) {
    for (std::size_t i = 0; i < g; ++i) {
      total.wrap[i] += c.wrap[i];
      total.wrap2[i] += c.wrap2[i];
      total.theta[i] += c.theta[i];
      total.theta2[i] += c.theta2[i];
      total.pair[i] += c.pair[i];
      total.pair2[i] += c.pair2[i];
      total.largest[i] += c.largest[i];
    }
  }
  for (std::size_t i = 0; i < g; ++i) {
    GridPoint gp;
    gp.p = config.p_grid[i];
    gp.wrap_mean = mean_of(total.wrap[i], ns);
    gp.wrap_stderr = stderr_of(total.wrap[i], total.wrap2[i], ns);
    gp.theta_mean = mean_of(total.theta[i], ns);
    gp.theta_stderr = stderr_of(total.theta[i], total.theta2[i], ns);
    gp.largest_mean = mean_of(total.largest[i], ns);
    gp.pair_mean = mean_of(total.pair[i], ns);
    gp.pair_stderr = stderr_of(total.pair[i], total.pair2[i], ns);
    res.grid.push_back(gp);
  }

  res.wrap_k.assign(n_el + 1, 0.0);
  for (std::int32_t k : res.first_wrap) {
    if (k >= 0) res.wrap_k[k] += 1.0;
  }
  double acc = 0.0;
  for (double& v : res.wrap_k) {
    acc += v;
    v = acc / ns;
  }
  if (theta) {
    res.theta_k.assign(n_el + 1, 0.0);
    for (const Worker& w : state) {
      for (int k = 0; k <= n_el; ++k) res.theta_k[k] += static_cast<double>(w.theta_sum[k]);
    }
    for (double& v : res.theta_k) v /= ns * n_q;
  }
  if (config.track_largest) {
    res.largest_k.assign(n_el + 1, 0.0);
    for (const Worker& w : state) {
      for (int k = 0; k <= n_el; ++k) res.largest_k[k] += static_cast<double>(w.largest_sum[k]);
    }
    for (double& v : res.largest_k) v /= ns * n_nodes;
  }
  return res;
}

ThetaEstimate estimate_theta(const GeneralizedNetwork& net, const std::vector<double>& p_grid,
                             std::int64_t samples, std::uint64_t seed, int workers) {
  if (net.qualified_nodes().empty()) throw EstimationError("network has no qualified nodes");
  SweepConfig cfg;
  cfg.p_grid = p_grid;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.workers = workers;
  const SweepResult sweep = newman_ziff_sweep(net, cfg);
  ThetaEstimate est;
  est.network = network_id(net);
  est.samples = samples;
  for (const GridPoint& gp : sweep.grid) {
    est.p.push_back(gp.p);
    est.mean.push_back(std::clamp(gp.theta_mean, 0.0, 1.0));
    est.stderr_.push_back(gp.theta_stderr);
  }
  return est;
}

std::pair<int, int> farthest_qualified_pair(const GeneralizedNetwork& net) {
  const auto& q = net.qualified_nodes();
  if (q.size() < 2) throw EstimationError("fewer than two qualified nodes");
  const Lattice& lat = net.lattice();
  const Vec2 px = lat.period_x();
  const Vec2 py = lat.period_y();
  const bool periodic = lat.boundary() == Boundary::periodic;
  const int a = q.front();
  const Vec2 pa = lat.nodes()[a].pos;
  int best = q[1];
  double best_d = -1.0;
  for (std::size_t i = 1; i < q.size(); ++i) {
    const Vec2 pb = lat.nodes()[q[i]].pos;
    double d = std::numeric_limits<double>::infinity();
    const int reach = periodic ? 1 : 0;
    for (int ix = -reach; ix <= reach; ++ix) {
      for (int iy = -reach; iy <= reach; ++iy) {
        const double dx = pb.x + ix * px.x + iy * py.x - pa.x;
        const double dy = pb.y + ix * px.y + iy * py.y - pa.y;
        d = std::min(d, std::hypot(dx, dy));
      }
    }
    if (d > best_d + 1e-9) {
      best_d = d;
      best = q[i];
    }
  }
  return {a, best};
}

PairEstimate estimate_p_ab(const GeneralizedNetwork& net, const std::vector<double>& p_grid,
                           std::int64_t samples, std::uint64_t seed, int workers) {
  const auto [a, b] = farthest_qualified_pair(net);
  SweepConfig cfg;
  cfg.p_grid = p_grid;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.workers = workers;
  cfg.track_theta = false;
  cfg.pair_a = a;
  cfg.pair_b = b;
  const SweepResult sweep = newman_ziff_sweep(net, cfg);
  PairEstimate est;
  est.node_a = a;
  est.node_b = b;
  const Vec2 pa = net.lattice().nodes()[a].pos;
  const Vec2 pb = net.lattice().nodes()[b].pos;
  est.separation = std::hypot(pb.x - pa.x, pb.y - pa.y);
  est.samples = samples;
  for (const GridPoint& gp : sweep.grid) {
    est.p.push_back(gp.p);
    est.mean.push_back(gp.pair_mean);
    est.stderr_.push_back(gp.pair_stderr);
  }
  return est;
}

double wrapping_probability(const std::vector<std::int32_t>& first_wrap, int element_count,
                            double p) {
  if (first_wrap.empty()) throw EstimationError("no samples");
  return WrapCurve(first_wrap, element_count).at(p);
}

double wrapping_crossing(const std::vector<std::int32_t>& small, int n_small,
                         const std::vector<std::int32_t>& large, int n_large) {
  const WrapCurve a(small, n_small);
  const WrapCurve b(large, n_large);
  const auto x = find_crossing(a, b, 0.002, 0.998, 0.004);
  if (!x) throw EstimationError("wrapping curves do not cross in (0, 1)");
  return *x;
}

int fitted_size(LatticeKind kind, Strategy strategy, int size) {
  if (strategy == Strategy::cep) return size;
  const MeasurementPattern& pat = builtin_pattern(kind);
  const int period = std::lcm(pat.period_x, pat.period_y);
  return (size + period - 1) / period * period;
}

ThresholdEstimate estimate_threshold(LatticeKind kind, Strategy strategy, std::vector<int> sizes,
                                     std::int64_t samples, std::uint64_t seed, int workers,
                                     int bootstrap) {
  if (sizes.size() < 2) throw EstimationError("threshold estimation needs at least two sizes");
  std::sort(sizes.begin(), sizes.end());
  ThresholdEstimate est;
  est.samples = samples;
  std::vector<std::vector<std::int32_t>> first;
  std::vector<int> counts;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const int l = fitted_size(kind, strategy, sizes[i]);
    est.sizes.push_back(l);
    const GeneralizedNetwork net = build_network(generate_lattice(kind, l, l), strategy);
    SweepConfig cfg;
    cfg.samples = samples;
    cfg.seed = seed + i;
    cfg.workers = workers;
    cfg.track_theta = false;
    SweepResult sweep = newman_ziff_sweep(net, cfg);
    first.push_back(std::move(sweep.first_wrap));
    counts.push_back(net.element_count());
  }
  for (std::size_t i = 0; i + 1 < first.size(); ++i) {
    est.crossings.push_back(wrapping_crossing(first[i], counts[i], first[i + 1], counts[i + 1]));
  }
  est.p_c = est.crossings.back();

  const std::size_t last = first.size() - 1;
  std::vector<double> boot;
  CounterRng rng(seed ^ kBootstrapSalt, 0);
  std::vector<std::size_t> pick_a(first[last - 1].size());
  std::vector<std::size_t> pick_b(first[last].size());
  for (int b = 0; b < bootstrap; ++b) {
    for (auto& x : pick_a) x = rng.below(pick_a.size());
    for (auto& x : pick_b) x = rng.below(pick_b.size());
    const WrapCurve ca(first[last - 1], counts[last - 1], &pick_a);
    const WrapCurve cb(first[last], counts[last], &pick_b);
    const auto x = find_crossing(ca, cb, std::max(0.001, est.p_c - 0.05),
                                 std::min(0.999, est.p_c + 0.05), 0.0025);
    if (x) boot.push_back(*x);
  }
  if (boot.size() >= 2) {
    const double m = std::accumulate(boot.begin(), boot.end(), 0.0) / boot.size();
    double v = 0.0;
    for (double x : boot) v += (x - m) * (x - m);
    est.uncertainty = std::sqrt(v / (boot.size() - 1));
  }
  if (!(est.uncertainty > 0.0)) est.uncertainty = std::numeric_limits<double>::epsilon();
  return est;
}

Comparison compare_strategies(LatticeKind kind, const std::vector<double>& p_grid, int size,
                              std::int64_t samples, std::uint64_t seed, int workers,
                              const std::vector<int>& threshold_sizes,
                              std::int64_t threshold_samples) {
  Comparison cmp;
  cmp.kind = kind;
  cmp.size = fitted_size(kind, Strategy::qep, size);
  cmp.samples = samples;
  const Lattice lat = generate_lattice(kind, cmp.size, cmp.size);
  const ThetaEstimate cep = estimate_theta(cep_network(lat), p_grid, samples, seed, workers);
  const ThetaEstimate qep = estimate_theta(qep_network(lat), p_grid, samples, seed + 1, workers);
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    ComparisonRow row;
    row.p = p_grid[i];
    row.theta_cep = cep.mean[i];
    row.theta_cep_stderr = cep.stderr_[i];
    row.theta_qep = qep.mean[i];
    row.theta_qep_stderr = qep.stderr_[i];
    row.difference = row.theta_qep - row.theta_cep;
    row.combined_stderr = std::hypot(row.theta_cep_stderr, row.theta_qep_stderr);
    cmp.rows.push_back(row);
  }
  if (!threshold_sizes.empty()) {
    const std::int64_t ts = threshold_samples > 0 ? threshold_samples : samples;
    cmp.cep_threshold = estimate_threshold(kind, Strategy::cep, threshold_sizes, ts, seed + 2, workers);
    cmp.qep_threshold = estimate_threshold(kind, Strategy::qep, threshold_sizes, ts, seed + 3, workers);
    cmp.relative_gain = 1.0 - cmp.qep_threshold.p_c / cmp.cep_threshold.p_c;
    cmp.has_thresholds = true;
  }
  return cmp;
}

}  // namespace perconet
