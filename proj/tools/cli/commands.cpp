#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "output.hpp"
#include "perconet/csv.hpp"
#include "perconet/network_io.hpp"
#include "perconet/percolation.hpp"
#include "perconet/quantum.hpp"
#include "perconet/series.hpp"
#include "reference.hpp"

namespace perconet::cli {
namespace {

using nlohmann::json;

constexpr std::int64_t kThetaSamples = 100000;
constexpr std::int64_t kThresholdSamples = 2000;
constexpr int kDefaultSize = 64;
constexpr int kFigureSize = 128;

std::string name(LatticeKind k) { return std::string(to_string(k)); }
std::string name(Strategy s) { return std::string(to_string(s)); }

LatticeKind kind_of(const std::string& text) {
  const auto k = parse_lattice_kind(text);
  if (!k) throw UsageError("unknown lattice kind \"" + text + "\"");
  return *k;
}

Strategy strategy_of(const std::string& text) {
  const auto s = parse_strategy(text);
  if (!s) throw UsageError("unknown strategy \"" + text + "\" (expected cep or qep)");
  return *s;
}

Boundary boundary_of(const std::string& text) {
  const auto b = parse_boundary(text);
  if (!b) throw UsageError("unknown boundary \"" + text + "\"");
  return *b;
}

double number(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError("not a number: \"" + text + "\"");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

/// "a,b,c" or "start:stop:step" (stop included).
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> values;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw UsageError("range grids are start:stop:step");
    const double a = number(parts[0]);
    const double b = number(parts[1]);
    const double step = number(parts[2]);
    if (!(step > 0.0) || b < a) throw UsageError("bad grid range \"" + text + "\"");
    const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
    for (long i = 0; i <= n; ++i) values.push_back(a + static_cast<double>(i) * step);
  } else {
    for (const std::string& part : split(text, ',')) values.push_back(number(part));
  }
  if (values.empty()) throw UsageError("empty grid");
  return values;
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  for (const std::string& part : split(text, ',')) {
    const double v = number(part);
    if (v < 2 || v != std::floor(v)) throw UsageError("sizes are integers of at least 2");
    sizes.push_back(static_cast<int>(v));
  }
  if (sizes.size() < 2) throw UsageError("at least two sizes are needed");
  return sizes;
}

struct Grid {
  std::vector<double> p;
  std::vector<double> phi1;  // empty unless given as phi1
};

Grid grid_of(const Options& o, bool required) {
  Grid g;
  if (!o.p.empty() && !o.phi1.empty()) throw UsageError("give either --p or --phi1, not both");
  if (!o.phi1.empty()) {
    g.phi1 = parse_grid(o.phi1);
    for (double v : g.phi1) {
      if (v < 0.0 || v > 0.5) throw UsageError("phi1 must lie in [0, 0.5]");
      g.p.push_back(2.0 * v);
    }
  } else if (!o.p.empty()) {
    g.p = parse_grid(o.p);
    for (double v : g.p) {
      if (v < 0.0 || v > 1.0) throw UsageError("p must lie in [0, 1]");
    }
  } else if (required) {
    throw UsageError("a grid is required: --p or --phi1");
  }
  return g;
}

std::int64_t samples_of(const Options& o, std::int64_t fallback) {
  if (o.samples < 0) throw UsageError("samples must be at least 1");
  return o.samples > 0 ? o.samples : fallback;
}

std::string prefix_of(const Options& o, const std::string& command) {
  return o.out.empty() ? "perconet-" + command : o.out;
}

json base_config(const Options& o, const std::string& command) {
  json c;
  c["command"] = command;
  c["seed"] = o.seed;
  c["workers"] = o.workers;
  c["out"] = prefix_of(o, command);
  return c;
}

void describe(json& c, const GeneralizedNetwork& net, const Options& o) {
  if (!o.network.empty()) c["network"] = o.network;
  c["lattice"] = name(net.lattice().kind());
  c["Lx"] = net.lattice().lx();
  c["Ly"] = net.lattice().ly();
  c["boundary"] = std::string(to_string(net.lattice().boundary()));
  c["strategy"] = name(net.strategy());
}

void describe(json& c, const Grid& g) {
  c["p"] = g.p;
  if (!g.phi1.empty()) c["phi1"] = g.phi1;
}

/// The network named by --network, or built from --lattice and the size flags. A lone
/// --size is rounded up to the strategy's pattern period.
GeneralizedNetwork network_of(const Options& o, Strategy strategy) {
  if (!o.network.empty()) {
    if (!o.lattice.empty()) throw UsageError("give either --lattice or --network, not both");
    return load_network(o.network);
  }
  if (o.lattice.empty()) throw UsageError("--lattice or --network is required");
  const LatticeKind kind = kind_of(o.lattice);
  const Boundary boundary = boundary_of(o.boundary);
  const int size = o.size > 0 ? o.size : kDefaultSize;
  if (size < 2 || o.lx < 0 || o.ly < 0) throw UsageError("lattice sizes must be at least 2");
  const int lx = o.lx > 0 ? o.lx : fitted_size(kind, strategy, size);
  const int ly = o.ly > 0 ? o.ly : fitted_size(kind, strategy, size);
  return build_network(generate_lattice(kind, lx, ly, boundary), strategy);
}

CsvTable stats_table(const GeneralizedNetwork& net) {
  const NetworkStats s = network_stats(net);
  CsvTable t({"kind", "Lx", "Ly", "boundary", "strategy", "nodes", "bond_elements", "ghz_elements",
              "measured_nodes", "qualified_nodes", "Zmax", "dprime", "dhat", "f"});
  t.add_row({name(net.lattice().kind()), std::to_string(net.lattice().lx()), std::to_string(net.lattice().ly()),
             std::string(to_string(net.lattice().boundary())), name(net.strategy()), std::to_string(s.nodes),
             std::to_string(s.bond_elements), std::to_string(s.ghz_elements), std::to_string(s.measured_nodes),
             std::to_string(s.qualified_nodes), std::to_string(s.zmax), format_real(s.dprime),
             format_real(s.dhat), format_real(s.f)});
  return t;
}

json stats_json(const GeneralizedNetwork& net) {
  const NetworkStats s = network_stats(net);
  return {{"nodes", s.nodes},
          {"bond_elements", s.bond_elements},
          {"ghz_elements", s.ghz_elements},
          {"measured_nodes", s.measured_nodes},
          {"qualified_nodes", s.qualified_nodes},
          {"Zmax", s.zmax},
          {"dprime", s.dprime},
          {"dhat", s.dhat},
          {"f", s.f}};
}

int emit_network(const Options& o, const std::string& command, const GeneralizedNetwork& net) {
  const std::string prefix = prefix_of(o, command);
  json config = base_config(o, command);
  describe(config, net, o);
  const std::string path = prefix + ".network.json";
  save_network(net, path);
  json summary = stats_json(net);
  summary["network_file"] = path;
  emit(prefix, config, stats_table(net), summary);
  const NetworkStats s = network_stats(net);
  std::printf("%s %s %dx%d: %d nodes, %d bonds, %d GHZ elements, %d qualified, f = %.6g -> %s\n",
              name(net.strategy()).c_str(), name(net.lattice().kind()).c_str(), net.lattice().lx(),
              net.lattice().ly(), s.nodes, s.bond_elements, s.ghz_elements, s.qualified_nodes, s.f,
              path.c_str());
  return 0;
}

std::string terms_text(const std::vector<std::pair<int, int>>& terms) {
  std::string s = "1";
  for (const auto& [k, c] : terms) {
    s += " - " + (c == 1 ? std::string() : std::to_string(c) + "*") + "e^" + std::to_string(k);
  }
  return s;
}

bool matches(const series::EpsilonPolynomial& poly, const std::vector<std::pair<int, int>>& terms) {
  for (const auto& [k, c] : terms) {
    if (poly.deficit(k) != c) return false;
  }
  return true;
}

int reproduce_table1(const Options& o) {
  const std::vector<int> sizes = parse_sizes(o.sizes);
  const std::int64_t samples = samples_of(o, kThresholdSamples);
  json config = base_config(o, "reproduce");
  config["target"] = "table1";
  config["sizes"] = sizes;
  config["samples"] = samples;
  config["bootstrap"] = o.bootstrap;
  CsvTable t({"lattice", "cep_p_c", "cep_uncertainty", "cep_published", "cep_ok", "qep_p_c", "qep_uncertainty",
              "qep_published", "qep_ok", "gain_percent", "gain_published"});
  int failures = 0;
  json rows = json::array();
  std::uint64_t seed = o.seed;
  for (const PublishedRow& r : published()) {
    const ThresholdEstimate c = estimate_threshold(r.kind, Strategy::cep, sizes, samples, seed++, o.workers,
                                                   o.bootstrap);
    const ThresholdEstimate q = estimate_threshold(r.kind, Strategy::qep, sizes, samples, seed++, o.workers,
                                                   o.bootstrap);
    const bool c_ok = std::abs(c.p_c - r.cep_pc) <= kCepTolerance;
    const bool q_ok = std::abs(q.p_c - r.qep_pc) <= kQepTolerance;
    const double gain = 100.0 * (1.0 - q.p_c / c.p_c);
    failures += !c_ok + !q_ok;
    t.add_row({name(r.kind), format_real(c.p_c), format_real(c.uncertainty), format_real(r.cep_pc),
               c_ok ? "pass" : "fail", format_real(q.p_c), format_real(q.uncertainty), format_real(r.qep_pc),
               q_ok ? "pass" : "fail", format_real(gain), format_real(r.gain_percent)});
    rows.push_back({{"lattice", name(r.kind)}, {"cep", c.p_c}, {"qep", q.p_c}, {"cep_ok", c_ok}, {"qep_ok", q_ok}});
    std::printf("  %-16s p'_c %.4f (%.4f) %s   p^_c %.4f (%.4f) %s   gain %.1f%% (%.1f%%)\n",
                name(r.kind).c_str(), c.p_c, r.cep_pc, c_ok ? "pass" : "FAIL", q.p_c, r.qep_pc,
                q_ok ? "pass" : "FAIL", gain, r.gain_percent);
    std::fflush(stdout);
  }
  emit(prefix_of(o, "reproduce"), config, t, {{"rows", rows}, {"failures", failures}});
  std::printf("table1: %d of 16 thresholds within tolerance\n", 16 - failures);
  return failures == 0 ? 0 : 1;
}

int reproduce_table2(const Options& o) {
  json config = base_config(o, "reproduce");
  config["target"] = "table2";
  CsvTable t({"lattice", "strategy", "computed", "published", "series_ok", "f", "f_published", "f_ok"});
  int failures = 0;
  for (const PublishedRow& r : published()) {
    const GeneralizedNetwork qep = qep_network(generate_lattice(r.kind, fitted_size(r.kind, Strategy::qep, 12),
                                                                fitted_size(r.kind, Strategy::qep, 12)));
    const double f = network_stats(qep).f;
    const bool f_ok = std::abs(f - r.f) < 1e-12;
    for (Strategy s : {Strategy::cep, Strategy::qep}) {
      const auto& terms = s == Strategy::cep ? r.cep_terms : r.qep_terms;
      const auto poly = series::theta_series(r.kind, s, terms.back().first).theta;
      const bool ok = matches(poly, terms);
      failures += !ok;
      t.add_row({name(r.kind), name(s), poly.to_string(), terms_text(terms), ok ? "pass" : "fail", format_real(f),
                 format_real(r.f), f_ok ? "pass" : "fail"});
      std::printf("  %-16s %s  %-28s published %-28s %s\n", name(r.kind).c_str(), name(s).c_str(),
                  poly.to_string().c_str(), terms_text(terms).c_str(), ok ? "pass" : "FAIL");
    }
    failures += !f_ok;
    std::printf("  %-16s f = %.6g, published %.6g %s\n", name(r.kind).c_str(), f, r.f, f_ok ? "pass" : "FAIL");
  }
  emit(prefix_of(o, "reproduce"), config, t, {{"failures", failures}});
  std::printf("table2: %d mismatches\n", failures);
  return failures == 0 ? 0 : 1;
}

int reproduce_fig2(const Options& o) {
  const std::int64_t samples = samples_of(o, kThetaSamples);
  const int size = o.size > 0 ? o.size : kFigureSize;
  json config = base_config(o, "reproduce");
  config["target"] = "fig2";
  config["samples"] = samples;
  config["size"] = size;
  CsvTable t({"lattice", "p", "theta_cep", "theta_cep_stderr", "theta_qep", "theta_qep_stderr", "difference",
              "combined_stderr", "positive_3sigma"});
  int failures = 0;
  std::uint64_t seed = o.seed;
  for (LatticeKind kind : {LatticeKind::triangular, LatticeKind::square, LatticeKind::hexagonal}) {
    std::vector<double> grid;
    for (double p = published(kind).qep_pc + 0.02; p <= 0.98 + 1e-9; p += 0.04) grid.push_back(p);
    const Comparison cmp = compare_strategies(kind, grid, size, samples, seed, o.workers);
    seed += 2;
    for (const ComparisonRow& row : cmp.rows) {
      const bool ok = row.difference > 3.0 * row.combined_stderr;
      failures += !ok;
      t.add_row({name(kind), format_real(row.p), format_real(row.theta_cep), format_real(row.theta_cep_stderr),
                 format_real(row.theta_qep), format_real(row.theta_qep_stderr), format_real(row.difference),
                 format_real(row.combined_stderr), ok ? "pass" : "fail"});
      std::printf("  %-11s p=%.4f  diff %+.3e +- %.1e %s\n", name(kind).c_str(), row.p, row.difference,
                  row.combined_stderr, ok ? "pass" : "FAIL");
    }
    std::fflush(stdout);
  }
  emit(prefix_of(o, "reproduce"), config, t, {{"failures", failures}});
  std::printf("fig2: %d grid points without a 3 sigma positive difference\n", failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int run_lattice(const Options& o) { return emit_network(o, "lattice", network_of(o, Strategy::cep)); }

int run_transform(const Options& o) {
  if (!o.network.empty()) {
    const GeneralizedNetwork src = network_of(o, Strategy::cep);
    return emit_network(o, "transform", qep_network(src.lattice()));
  }
  return emit_network(o, "transform", network_of(o, Strategy::qep));
}

int run_threshold(const Options& o) {
  LatticeKind kind;
  Strategy strategy = strategy_of(o.strategy);
  if (!o.network.empty()) {
    const GeneralizedNetwork net = load_network(o.network);
    kind = net.lattice().kind();
    strategy = net.strategy();
  } else {
    if (o.lattice.empty()) throw UsageError("--lattice or --network is required");
    kind = kind_of(o.lattice);
  }
  const std::vector<int> sizes = parse_sizes(o.sizes);
  const std::int64_t samples = samples_of(o, kThresholdSamples);
  if (o.bootstrap < 0) throw UsageError("bootstrap must be nonnegative");
  const ThresholdEstimate est = estimate_threshold(kind, strategy, sizes, samples, o.seed, o.workers, o.bootstrap);

  json config = base_config(o, "threshold");
  if (!o.network.empty()) config["network"] = o.network;
  config["lattice"] = name(kind);
  config["strategy"] = name(strategy);
  config["sizes"] = sizes;
  config["samples"] = samples;
  config["bootstrap"] = o.bootstrap;
  CsvTable t({"size_small", "size_large", "crossing", "p_c", "uncertainty", "n_samples"});
  for (std::size_t i = 0; i < est.crossings.size(); ++i) {
    t.add_row({std::to_string(est.sizes[i]), std::to_string(est.sizes[i + 1]), format_real(est.crossings[i]),
               format_real(est.p_c), format_real(est.uncertainty), std::to_string(est.samples)});
  }
  emit(prefix_of(o, "threshold"), config, t,
       {{"p_c", est.p_c}, {"uncertainty", est.uncertainty}, {"method", est.method}, {"sizes", est.sizes}});
  std::printf("%s %s p_c = %.4f +- %.4f (sizes", name(strategy).c_str(), name(kind).c_str(), est.p_c,
              est.uncertainty);
  for (int s : est.sizes) std::printf(" %d", s);
  std::printf(", %lld samples)\n", static_cast<long long>(est.samples));
  return 0;
}

int run_theta(const Options& o) {
  const Grid g = grid_of(o, true);
  const GeneralizedNetwork net = network_of(o, strategy_of(o.strategy));
  const std::int64_t samples = samples_of(o, kThetaSamples);
  const ThetaEstimate est = estimate_theta(net, g.p, samples, o.seed, o.workers);
  json config = base_config(o, "theta");
  describe(config, net, o);
  describe(config, g);
  config["samples"] = samples;
  std::vector<std::string> header = {"p", "theta_mean", "theta_stderr", "n_samples"};
  if (!g.phi1.empty()) header.insert(header.begin(), "phi1");
  CsvTable t(header);
  for (std::size_t i = 0; i < g.p.size(); ++i) {
    std::vector<std::string> row = {format_real(est.p[i]), format_real(est.mean[i]), format_real(est.stderr_[i]),
                                    std::to_string(est.samples)};
    if (!g.phi1.empty()) row.insert(row.begin(), format_real(g.phi1[i]));
    t.add_row(row);
  }
  emit(prefix_of(o, "theta"), config, t, {{"definition", est.definition}, {"theta", est.mean}});
  std::printf("theta on %s %s %dx%d at %zu points, %lld samples; theta(%.4g) = %.6f +- %.1e\n",
              name(net.strategy()).c_str(), name(net.lattice().kind()).c_str(), net.lattice().lx(),
              net.lattice().ly(), g.p.size(), static_cast<long long>(samples), est.p.back(), est.mean.back(),
              est.stderr_.back());
  return 0;
}

int run_pab(const Options& o) {
  const Grid g = grid_of(o, true);
  const GeneralizedNetwork net = network_of(o, strategy_of(o.strategy));
  const std::int64_t samples = samples_of(o, kThetaSamples);
  const PairEstimate est = estimate_p_ab(net, g.p, samples, o.seed, o.workers);
  json config = base_config(o, "pab");
  describe(config, net, o);
  describe(config, g);
  config["samples"] = samples;
  std::vector<std::string> header = {"p", "p_ab_mean", "p_ab_stderr", "n_samples"};
  if (!g.phi1.empty()) header.insert(header.begin(), "phi1");
  CsvTable t(header);
  t.add_comment("nodes " + std::to_string(est.node_a) + " " + std::to_string(est.node_b) + ", separation " +
                format_real(est.separation));
  for (std::size_t i = 0; i < g.p.size(); ++i) {
    std::vector<std::string> row = {format_real(est.p[i]), format_real(est.mean[i]), format_real(est.stderr_[i]),
                                    std::to_string(est.samples)};
    if (!g.phi1.empty()) row.insert(row.begin(), format_real(g.phi1[i]));
    t.add_row(row);
  }
  emit(prefix_of(o, "pab"), config, t,
       {{"node_a", est.node_a}, {"node_b", est.node_b}, {"separation", est.separation}, {"p_ab", est.mean}});
  std::printf("P(A<->B) on %s %s %dx%d, nodes %d and %d at distance %.3g; P(%.4g) = %.6f +- %.1e\n",
              name(net.strategy()).c_str(), name(net.lattice().kind()).c_str(), net.lattice().lx(),
              net.lattice().ly(), est.node_a, est.node_b, est.separation, est.p.back(), est.mean.back(),
              est.stderr_.back());
  return 0;
}

int run_compare(const Options& o) {
  if (o.lattice.empty()) throw UsageError("--lattice is required");
  const LatticeKind kind = kind_of(o.lattice);
  const Grid g = grid_of(o, true);
  const std::int64_t samples = samples_of(o, kThetaSamples);
  std::vector<int> sizes;
  if (o.thresholds) sizes = parse_sizes(o.sizes);
  const std::int64_t ts = o.threshold_samples > 0 ? o.threshold_samples : kThresholdSamples;
  const Comparison cmp = compare_strategies(kind, g.p, o.size > 0 ? o.size : kFigureSize, samples, o.seed, o.workers, sizes, ts);
  json config = base_config(o, "compare");
  config["lattice"] = name(kind);
  config["size"] = cmp.size;
  describe(config, g);
  config["samples"] = samples;
  if (o.thresholds) {
    config["sizes"] = sizes;
    config["threshold_samples"] = ts;
  }
  CsvTable t({"p", "theta_cep", "theta_cep_stderr", "theta_qep", "theta_qep_stderr", "difference",
              "combined_stderr"});
  for (const ComparisonRow& r : cmp.rows) {
    t.add_row({format_real(r.p), format_real(r.theta_cep), format_real(r.theta_cep_stderr), format_real(r.theta_qep),
               format_real(r.theta_qep_stderr), format_real(r.difference), format_real(r.combined_stderr)});
  }
  json summary;
  if (cmp.has_thresholds) {
    summary = {{"cep_p_c", cmp.cep_threshold.p_c},
               {"qep_p_c", cmp.qep_threshold.p_c},
               {"relative_gain", cmp.relative_gain}};
  }
  emit(prefix_of(o, "compare"), config, t, summary);
  int positive = 0;
  for (const ComparisonRow& r : cmp.rows) positive += r.difference > 3.0 * r.combined_stderr;
  std::printf("%s L=%d: qep above cep by more than 3 sigma at %d of %zu points", name(kind).c_str(), cmp.size,
              positive, cmp.rows.size());
  if (cmp.has_thresholds) {
    std::printf("; p'_c = %.4f, p^_c = %.4f, gain %.1f%%", cmp.cep_threshold.p_c, cmp.qep_threshold.p_c,
                100.0 * cmp.relative_gain);
  }
  std::printf("\n");
  return 0;
}

int run_series(const Options& o) {
  if (o.order < 1 || o.order > series::kMaxOrder) {
    throw UsageError("order must lie in 1.." + std::to_string(series::kMaxOrder));
  }
  series::SeriesResult result;
  json config = base_config(o, "series");
  config.erase("workers");
  config.erase("seed");
  if (!o.network.empty()) {
    const GeneralizedNetwork net = load_network(o.network);
    describe(config, net, o);
    result = series::theta_series(net, o.order);
  } else {
    if (o.lattice.empty()) throw UsageError("--lattice or --network is required");
    const LatticeKind kind = kind_of(o.lattice);
    const Strategy strategy = strategy_of(o.strategy);
    config["lattice"] = name(kind);
    config["strategy"] = name(strategy);
    result = series::theta_series(kind, strategy, o.order);
  }
  config["order"] = o.order;
  CsvTable t({"k", "coefficient", "denominator"});
  for (std::size_t k = 0; k < result.theta.coeffs.size(); ++k) {
    t.add_row({std::to_string(k), std::to_string(result.theta.coeffs[k]), std::to_string(result.theta.denominator)});
  }
  json orbits = json::array();
  for (const auto& orbit : result.orbits) {
    orbits.push_back({{"roots", orbit.roots}, {"series", orbit.theta.to_string()}, {"coefficients", orbit.theta.coeffs}});
  }
  emit(prefix_of(o, "series"), config, t,
       {{"series", result.theta.to_string()},
        {"coefficients", result.theta.coeffs},
        {"denominator", result.theta.denominator},
        {"orbits", orbits}});
  std::printf("%s\n", result.theta.to_string().c_str());
  return 0;
}

int run_quantum_verify(const Options& o) {
  using namespace perconet::quantum;
  if (o.n_max < 1 || o.n_max > 6) throw UsageError("--n-max must lie in 1..6");
  Options grid_opts = o;
  if (grid_opts.phi1.empty() && grid_opts.p.empty()) grid_opts.phi1 = "0.05:0.5:0.05";
  const Grid g = grid_of(grid_opts, true);
  json config = base_config(o, "quantum-verify");
  config.erase("workers");
  config.erase("seed");
  config["n_max"] = o.n_max;
  describe(config, g);
  CsvTable t({"n", "phi1", "oracle", "closed_form", "abs_diff", "ok"});
  int failures = 0;
  double worst = 0.0;
  for (int n = 1; n <= o.n_max; ++n) {
    for (double p : g.p) {
      const PureState s = PureState::from_phi1(p / 2.0);
      const double oracle = star_measurement_oracle(n, s);
      const double closed = ghz_success_prob(n, s);
      const double d = std::abs(oracle - closed);
      const bool ok = d < 1e-10;
      failures += !ok;
      worst = std::max(worst, d);
      t.add_row({std::to_string(n), format_real(s.phi1), format_real(oracle), format_real(closed), format_real(d),
                 ok ? "pass" : "fail"});
    }
  }
  double worst_fid = 0.0;
  int branches = 0;
  for (int n = 2; n <= o.n_max; ++n) {
    for (int m = 2; n + m - 1 <= o.n_max; ++m) {
      for (const Branch& b : merge_ghz(StateVector::ghz(n), StateVector::ghz(m), n - 1, 0).branches) {
        worst_fid = std::max(worst_fid, std::abs(1.0 - b.fidelity));
        ++branches;
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        for (const Branch& b : extract_bell(StateVector::ghz(n), i, j).branches) {
          worst_fid = std::max(worst_fid, std::abs(1.0 - b.fidelity));
          ++branches;
        }
      }
    }
  }
  const bool fid_ok = worst_fid < 1e-12;
  failures += !fid_ok;
  emit(prefix_of(o, "quantum-verify"), config, t,
       {{"max_abs_diff", worst}, {"max_fidelity_defect", worst_fid}, {"protocol_branches", branches},
        {"failures", failures}});
  std::printf("quantum-verify n<=%d: %zu closed-form checks, max deviation %.2e; %d protocol branches, "
              "max fidelity defect %.2e; %s\n",
              o.n_max, t.rows().size(), worst, branches, worst_fid, failures == 0 ? "all pass" : "FAILURES");
  return failures == 0 ? 0 : 1;
}

int run_reproduce(const Options& o) {
  if (o.target == "table1") return reproduce_table1(o);
  if (o.target == "table2") return reproduce_table2(o);
  if (o.target == "fig2") return reproduce_fig2(o);
  throw UsageError("reproduce target must be table1, table2 or fig2");
}

}  // namespace perconet::cli
