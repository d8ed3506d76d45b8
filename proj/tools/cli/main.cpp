#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "output.hpp"

using namespace perconet::cli;

namespace {

void network_flags(CLI::App* cmd, Options& o, bool strategy) {
  cmd->add_option("--lattice,-l", o.lattice, "lattice kind (square, triangular, hexagonal, kagome, dice, bowtie, "
                                              "four-eight-eight, snub-square)");
  cmd->add_option("--network", o.network, "network JSON written by `lattice` or `transform`");
  cmd->add_option("--size,-L", o.size, "linear size in unit cells, rounded up to the pattern period (default 64)");
  cmd->add_option("--lx", o.lx, "exact number of cells along x");
  cmd->add_option("--ly", o.ly, "exact number of cells along y");
  cmd->add_option("--boundary", o.boundary, "periodic or open")->capture_default_str();
  if (strategy) cmd->add_option("--strategy,-s", o.strategy, "cep or qep")->capture_default_str();
}

void grid_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--p", o.p, "occupation probabilities: a,b,c or start:stop:step");
  cmd->add_option("--phi1", o.phi1, "smaller Schmidt weights, mapped to p = 2 phi1");
}

void run_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--samples,-n", o.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "master seed (default: PERCONET_SEED or 1)");
  cmd->add_option("--workers,-j", o.workers, "worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
}

void out_flag(CLI::App* cmd, Options& o) {
  cmd->add_option("--out,-o", o.out, "output path prefix for <prefix>.csv and <prefix>.json");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  if (const char* env = std::getenv("PERCONET_SEED")) {
    try {
      std::size_t used = 0;
      o.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      std::fprintf(stderr, "perconet: PERCONET_SEED is not a 64-bit unsigned integer: %s\n", env);
      return 2;
    }
  }

  CLI::App app{"Entanglement percolation on lattices: classical and multipartite strategies", "perconet"};
  app.set_config("--config", "", "TOML/INI file with flag values; command-line flags take precedence");
  app.require_subcommand(1);

  std::function<int()> action;
  auto add = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    CLI::App* cmd = app.add_subcommand(name, help);
    cmd->callback([&action, fn, &o] { action = [fn, &o] { return fn(o); }; });
    out_flag(cmd, o);
    return cmd;
  };

  CLI::App* lattice = add("lattice", "generate a lattice and write it as a bond network", run_lattice);
  network_flags(lattice, o, false);

  CLI::App* transform = add("transform", "apply the multipartite measurement pattern", run_transform);
  network_flags(transform, o, false);

  CLI::App* threshold = add("threshold", "wrapping-probability crossing estimate of p_c", run_threshold);
  threshold->add_option("--lattice,-l", o.lattice, "lattice kind");
  threshold->add_option("--network", o.network, "network JSON; its kind and strategy are used");
  threshold->add_option("--strategy,-s", o.strategy, "cep or qep")->capture_default_str();
  threshold->add_option("--sizes", o.sizes, "comma-separated sizes, e.g. 64,128")->capture_default_str();
  threshold->add_option("--bootstrap", o.bootstrap, "bootstrap resamples")->capture_default_str();
  run_flags(threshold, o);

  CLI::App* theta = add("theta", "probability that a qualified node is in a wrapping cluster", run_theta);
  network_flags(theta, o, true);
  grid_flags(theta, o);
  run_flags(theta, o);

  CLI::App* pab = add("pab", "probability that two distant qualified nodes are connected", run_pab);
  network_flags(pab, o, true);
  grid_flags(pab, o);
  run_flags(pab, o);

  CLI::App* compare = add("compare", "theta for both strategies on a common grid", run_compare);
  compare->add_option("--lattice,-l", o.lattice, "lattice kind");
  compare->add_option("--size,-L", o.size, "linear size (default 128)");
  grid_flags(compare, o);
  run_flags(compare, o);
  compare->add_flag("--thresholds", o.thresholds, "also estimate both thresholds and the relative gain");
  compare->add_option("--sizes", o.sizes, "threshold sizes")->capture_default_str();
  compare->add_option("--threshold-samples", o.threshold_samples, "threshold samples (default 2000)");

  CLI::App* series = add("series", "high-density expansion of theta in e = 1 - p", run_series);
  network_flags(series, o, true);
  series->add_option("--order", o.order, "truncation order (at most 14)")->capture_default_str();

  CLI::App* quantum = add("quantum-verify", "check the GHZ success formula and protocols against state vectors",
                          run_quantum_verify);
  quantum->add_option("--n-max", o.n_max, "largest number of links (at most 6)")->capture_default_str();
  grid_flags(quantum, o);

  CLI::App* reproduce = add("reproduce", "rerun a published table or figure and compare", run_reproduce);
  reproduce->add_option("target", o.target, "table1, table2 or fig2")->required();
  reproduce->add_option("--sizes", o.sizes, "threshold sizes for table1")->capture_default_str();
  reproduce->add_option("--size,-L", o.size, "lattice size for fig2 (default 128)");
  reproduce->add_option("--bootstrap", o.bootstrap, "bootstrap resamples for table1")->capture_default_str();
  run_flags(reproduce, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    std::fprintf(stderr, "perconet: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "perconet: %s\n", e.what());
    return 1;
  }
}
