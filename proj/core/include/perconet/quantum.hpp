#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace perconet::quantum {

using Amplitude = std::complex<double>;

class QuantumDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class QuantumContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Schmidt weights of sqrt(phi0)|00> + sqrt(phi1)|11>.
struct PureState {
  double phi0 = 0.5;
  double phi1 = 0.5;

  /// Throws QuantumDomainError unless phi0 >= phi1 >= 0 and phi0 + phi1 = 1.
  void validate() const;
  static PureState from_phi1(double phi1);
};

/// Amplitudes over 2^n basis states, qubit 0 being the most significant bit.
/// States produced by projections are left unnormalized; weight() is their squared norm.
struct StateVector {
  int n_qubits = 0;
  std::vector<Amplitude> amplitudes;

  StateVector() = default;
  explicit StateVector(int n);

  double weight() const;
  StateVector normalized() const;
  Amplitude& operator[](std::uint64_t i) { return amplitudes[i]; }
  const Amplitude& operator[](std::uint64_t i) const { return amplitudes[i]; }

  static StateVector basis(int n, std::uint64_t index);
  static StateVector ghz(int n);
  static StateVector pair(const PureState& s);
};

StateVector tensor(const StateVector& a, const StateVector& b);

/// |<a|b>|^2 for normalized inputs.
double fidelity(const StateVector& a, const StateVector& b);

/// Applies a linear map from the qubits in `qubits` to `out_count` qubits, given as a
/// 2^out_count x 2^qubits.size() row-major matrix. The outputs take the places of the
/// first `out_count` listed qubits; the other listed qubits are removed.
StateVector apply_map(const StateVector& state, const std::vector<int>& qubits,
                      const std::vector<Amplitude>& matrix, int out_count);

StateVector apply_x(const StateVector& state, int qubit);
StateVector apply_z(const StateVector& state, int qubit);

/// Optimal conversion probability of a two-qubit pure state into a singlet: 2 phi1.
double singlet_conversion_prob(const PureState& state);

/// Closed-form probability of building GHZ_{n+1} from n links sharing a node.
double ghz_success_prob(int n, const PureState& state);

struct StarOutcome {
  std::uint64_t m = 0;
  double probability = 0.0;
  double lambda_min = 0.0;   // smaller normalized Schmidt weight of the GHZ-like result
  double conversion = 0.0;   // min(1, 2 lambda_min)
};

struct StarMeasurement {
  int n = 0;
  std::vector<StarOutcome> outcomes;
  double total_probability = 0.0;  // sum of outcome probabilities
  double success = 0.0;            // sum of probability * conversion
};

/// State-vector simulation of the E_m measurement on n links sharing a node.
StarMeasurement star_measurement(int n, const PureState& state);
double star_measurement_oracle(int n, const PureState& state);

struct Branch {
  std::vector<int> outcome;
  double probability = 0.0;
  StateVector state;  // normalized and corrected
  double fidelity = 0.0;
};

struct ProtocolResult {
  std::vector<Branch> branches;
  double success_probability = 0.0;
};

/// Joins GHZ_n and GHZ_m on a qubit of each with the two-outcome measurement M and a
/// bit-flip correction, giving GHZ_{n+m-1}. The merged qubit sits where a's qubit was,
/// followed by b's remaining qubits.
ProtocolResult merge_ghz(const StateVector& a, const StateVector& b, int shared_qubit_a,
                         int shared_qubit_b);

/// Measures every qubit other than keep_i and keep_j in the X basis and fixes the sign
/// with Z on keep_i, leaving |Phi+> on (keep_i, keep_j).
ProtocolResult extract_bell(const StateVector& state, int keep_i, int keep_j);

}  // namespace perconet::quantum
