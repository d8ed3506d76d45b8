#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "perconet/network.hpp"

namespace perconet {

class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense cluster labels of one random configuration.
struct ClusterLabeling {
  std::vector<int> label;        // per node, 0..cluster_count-1 in order of first node
  std::vector<char> wrapping;    // per label
  std::vector<int> sizes;        // per label
  std::vector<char> occupied;    // per element
  int cluster_count = 0;
};

/// Occupies every element independently with probability p and unions its members.
ClusterLabeling sample_and_cluster(const GeneralizedNetwork& net, double p, std::uint64_t seed);

/// Binomial(n, p) probabilities restricted to the window where they are not negligible,
/// renormalized to sum to one.
struct BinomialWindow {
  int lo = 0;
  std::vector<double> weights;  // weights[i] is the probability of k = lo + i

  int hi() const { return lo + static_cast<int>(weights.size()) - 1; }
};

BinomialWindow binomial_window(int n, double p);

struct SweepConfig {
  std::vector<double> p_grid;
  std::int64_t samples = 1000;
  std::uint64_t seed = 0;
  int workers = 0;  // 0 picks the hardware concurrency
  bool track_theta = true;
  bool track_largest = false;
  int pair_a = -1;  // when both are set, record when a and b first connect
  int pair_b = -1;
};

struct GridPoint {
  double p = 0.0;
  double wrap_mean = 0.0;
  double wrap_stderr = 0.0;
  double theta_mean = 0.0;
  double theta_stderr = 0.0;
  double largest_mean = 0.0;
  double pair_mean = 0.0;
  double pair_stderr = 0.0;
};

struct SweepResult {
  int element_count = 0;
  int qualified_count = 0;
  std::int64_t samples = 0;
  // Microcanonical means indexed by the number k of occupied elements, k = 0..n.
  std::vector<double> wrap_k;
  std::vector<double> theta_k;
  std::vector<double> largest_k;  // fraction of all nodes
  // Per sample: number of occupied elements at which a wrapping cluster first appears
  // (and a, b first connect, when tracked).
  std::vector<std::int32_t> first_wrap;
  std::vector<std::int32_t> first_pair;
  std::vector<GridPoint> grid;
};

/// Newman-Ziff sweep: elements are added one at a time in a random order per sample and
/// the observables are convolved with the binomial distribution onto the p grid.
/// The result does not depend on the worker count.
SweepResult newman_ziff_sweep(const GeneralizedNetwork& net, const SweepConfig& config);

struct ThetaEstimate {
  std::string network;
  std::string definition = "wrapping-cluster membership";
  std::vector<double> p;
  std::vector<double> mean;
  std::vector<double> stderr_;
  std::int64_t samples = 0;
};

/// Probability that a qualified node belongs to a wrapping cluster.
ThetaEstimate estimate_theta(const GeneralizedNetwork& net, const std::vector<double>& p_grid,
                             std::int64_t samples, std::uint64_t seed, int workers = 0);

struct PairEstimate {
  int node_a = -1;
  int node_b = -1;
  double separation = 0.0;
  std::vector<double> p;
  std::vector<double> mean;
  std::vector<double> stderr_;
  std::int64_t samples = 0;
};

/// Two qualified nodes at (close to) the largest separation the torus allows.
std::pair<int, int> farthest_qualified_pair(const GeneralizedNetwork& net);

/// Probability that the farthest qualified pair shares a cluster.
PairEstimate estimate_p_ab(const GeneralizedNetwork& net, const std::vector<double>& p_grid,
                           std::int64_t samples, std::uint64_t seed, int workers = 0);

struct ThresholdEstimate {
  double p_c = 0.0;
  double uncertainty = 0.0;
  std::vector<int> sizes;
  std::vector<double> crossings;  // one per consecutive pair of sizes
  std::string method = "wrapping-probability crossing";
  std::int64_t samples = 0;
};

/// Wrapping probability R(p) given each sample's first wrapping element count.
double wrapping_probability(const std::vector<std::int32_t>& first_wrap, int element_count,
                            double p);

/// Crossing of two wrapping-probability curves, located by bisection on their difference.
double wrapping_crossing(const std::vector<std::int32_t>& small, int n_small,
                         const std::vector<std::int32_t>& large, int n_large);

/// Lattice size that fits the strategy's pattern period and is at least `size`.
int fitted_size(LatticeKind kind, Strategy strategy, int size);

ThresholdEstimate estimate_threshold(LatticeKind kind, Strategy strategy, std::vector<int> sizes,
                                     std::int64_t samples, std::uint64_t seed, int workers = 0,
                                     int bootstrap = 200);

struct ComparisonRow {
  double p = 0.0;
  double theta_cep = 0.0;
  double theta_cep_stderr = 0.0;
  double theta_qep = 0.0;
  double theta_qep_stderr = 0.0;
  double difference = 0.0;
  double combined_stderr = 0.0;
};

struct Comparison {
  LatticeKind kind = LatticeKind::square;
  int size = 0;
  std::int64_t samples = 0;
  std::vector<ComparisonRow> rows;
  bool has_thresholds = false;
  ThresholdEstimate cep_threshold;
  ThresholdEstimate qep_threshold;
  double relative_gain = 0.0;  // 1 - p_hat / p_prime
};

Comparison compare_strategies(LatticeKind kind, const std::vector<double>& p_grid, int size,
                              std::int64_t samples, std::uint64_t seed, int workers = 0,
                              const std::vector<int>& threshold_sizes = {},
                              std::int64_t threshold_samples = 0);

}  // namespace perconet
