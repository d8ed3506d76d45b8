#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "perconet/network.hpp"

namespace perconet::series {

/// Truncated power series in eps = 1 - p with integer numerators over a common
/// denominator (1 unless orbits of inequivalent roots were averaged).
struct EpsilonPolynomial {
  std::vector<std::int64_t> coeffs;  // coeffs[k] multiplies eps^k
  std::int64_t denominator = 1;
  int order = 0;

  /// Coefficient of eps^k as printed in "1 - c_a*e^a - ...": the negated term.
  double deficit(int k) const;
  double value_at(double p) const;

  /// Canonical text form, e.g. "1 - e^6 - 9*e^10".
  std::string to_string() const;

  friend bool operator==(const EpsilonPolynomial&, const EpsilonPolynomial&) = default;
};

struct ClusterRecord {
  std::vector<int> elements;  // occupied element ids of the network
  int occupied = 0;           // s
  int perimeter = 0;          // t
};

struct LocalClusterEnumeration {
  int root = 0;
  int max_perimeter = 0;
  int patch_radius = 0;
  std::vector<ClusterRecord> clusters;
};

class SeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The periodic network wraps onto itself within the enumeration patch.
class PatchTooSmall : public SeriesError {
 public:
  using SeriesError::SeriesError;
};

/// All finite clusters containing `root` with perimeter at most `max_perimeter`.
/// The patch around the root grows until no counted cluster approaches its edge;
/// throws SeriesError if the network is too small to host the patch.
LocalClusterEnumeration enumerate_clusters(const GeneralizedNetwork& net, int root,
                                           int max_perimeter);

/// 1 - sum over clusters of (1 - eps)^s eps^t, truncated at eps^max_order.
EpsilonPolynomial theta_from_clusters(const LocalClusterEnumeration& clusters, int max_order);

struct OrbitSeries {
  std::vector<int> roots;
  EpsilonPolynomial theta;
};

struct SeriesResult {
  EpsilonPolynomial theta;  // average over qualified nodes of one period block
  std::vector<OrbitSeries> orbits;
};

/// Series of theta for the qualified nodes of a network.
SeriesResult theta_series(const GeneralizedNetwork& net, int max_order);

/// Builds a network large enough for the requested order and expands theta.
SeriesResult theta_series(LatticeKind kind, Strategy strategy, int max_order);

inline constexpr int kMaxOrder = 14;

double eval_series(const EpsilonPolynomial& poly, double p);

}  // namespace perconet::series
