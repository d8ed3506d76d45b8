#include "perconet/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace perconet::quantum {
namespace {

constexpr double kWeightTolerance = 1e-12;
constexpr double kGhzTolerance = 1e-10;

int bit_of(std::uint64_t index, int n, int qubit) {
  return static_cast<int>((index >> (n - 1 - qubit)) & 1U);
}

void require_qubit(const StateVector& s, int q, const char* what) {
  if (q < 0 || q >= s.n_qubits) {
    throw QuantumDomainError(std::string(what) + " " + std::to_string(q) + " outside a " +
                             std::to_string(s.n_qubits) + "-qubit state");
  }
}

void require_ghz(const StateVector& s, const char* name) {
  if (s.n_qubits < 2) throw QuantumContractError(std::string(name) + " has fewer than 2 qubits");
  const double w = s.weight();
  if (w <= 0.0 || fidelity(s.normalized(), StateVector::ghz(s.n_qubits)) < 1.0 - kGhzTolerance) {
    throw QuantumContractError(std::string(name) + " is not a GHZ state");
  }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

void PureState::validate() const {
  if (!(phi1 >= 0.0) || !(phi0 >= phi1)) {
    throw QuantumDomainError("Schmidt weights must satisfy phi0 >= phi1 >= 0");
  }
  if (std::abs(phi0 + phi1 - 1.0) > kWeightTolerance) {
    throw QuantumDomainError("Schmidt weights must sum to 1");
  }
}

PureState PureState::from_phi1(double phi1) {
  PureState s{1.0 - phi1, phi1};
  s.validate();
  return s;
}

StateVector::StateVector(int n) : n_qubits(n), amplitudes(std::size_t{1} << n) {}

double StateVector::weight() const {
  double w = 0.0;
  for (const Amplitude& a : amplitudes) w += std::norm(a);
  return w;
}

StateVector StateVector::normalized() const {
  StateVector out = *this;
  const double w = weight();
  if (w > 0.0) {
    const double inv = 1.0 / std::sqrt(w);
    for (Amplitude& a : out.amplitudes) a *= inv;
  }
  return out;
}

StateVector StateVector::basis(int n, std::uint64_t index) {
  StateVector s(n);
  s[index] = 1.0;
  return s;
}

StateVector StateVector::ghz(int n) {
  StateVector s(n);
  const double h = 1.0 / std::sqrt(2.0);
  s[0] += h;
  s[(std::uint64_t{1} << n) - 1] += h;
  return s;
}

StateVector StateVector::pair(const PureState& st) {
  st.validate();
  StateVector s(2);
  s[0] = std::sqrt(st.phi0);
  s[3] = std::sqrt(st.phi1);
  return s;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  StateVector out(a.n_qubits + b.n_qubits);
  const std::size_t nb = b.amplitudes.size();
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
    if (a.amplitudes[i] == Amplitude{}) continue;
    for (std::size_t j = 0; j < nb; ++j) out.amplitudes[i * nb + j] = a.amplitudes[i] * b.amplitudes[j];
  }
  return out;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.n_qubits != b.n_qubits) return 0.0;
  Amplitude overlap{};
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) overlap += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return std::norm(overlap);
}

StateVector apply_map(const StateVector& state, const std::vector<int>& qubits,
                      const std::vector<Amplitude>& matrix, int out_count) {
  const int n = state.n_qubits;
  const int k = static_cast<int>(qubits.size());
  if (out_count < 0 || out_count > k) throw QuantumDomainError("invalid output qubit count");
  const std::size_t in_dim = std::size_t{1} << k;
  const std::size_t out_dim = std::size_t{1} << out_count;
  if (matrix.size() != in_dim * out_dim) throw QuantumDomainError("matrix has the wrong shape");
  // role[q]: -1 keep, -2 drop, j >= 0 output j.
  std::vector<int> role(n, -1);
  for (int j = 0; j < k; ++j) {
    require_qubit(state, qubits[j], "qubit");
    if (role[qubits[j]] != -1) throw QuantumDomainError("repeated qubit");
    role[qubits[j]] = j < out_count ? j : -2;
  }
  const int n_out = n - k + out_count;
  StateVector out(n_out);
  for (std::uint64_t idx = 0; idx < state.amplitudes.size(); ++idx) {
    const Amplitude amp = state.amplitudes[idx];
    if (amp == Amplitude{}) continue;
    std::uint64_t v = 0;
    for (int j = 0; j < k; ++j) v = (v << 1) | static_cast<std::uint64_t>(bit_of(idx, n, qubits[j]));
    for (std::uint64_t o = 0; o < out_dim; ++o) {
      const Amplitude c = matrix[o * in_dim + v];
      if (c == Amplitude{}) continue;
      std::uint64_t target = 0;
      for (int q = 0; q < n; ++q) {
        if (role[q] == -2) continue;
        const int bit = role[q] >= 0 ? static_cast<int>((o >> (out_count - 1 - role[q])) & 1U)
                                     : bit_of(idx, n, q);
        target = (target << 1) | static_cast<std::uint64_t>(bit);
      }
      out.amplitudes[target] += c * amp;
    }
  }
  return out;
}

StateVector apply_x(const StateVector& state, int qubit) {
  require_qubit(state, qubit, "qubit");
  StateVector out(state.n_qubits);
  const std::uint64_t mask = std::uint64_t{1} << (state.n_qubits - 1 - qubit);
  for (std::uint64_t i = 0; i < state.amplitudes.size(); ++i) out.amplitudes[i ^ mask] = state.amplitudes[i];
  return out;
}

StateVector apply_z(const StateVector& state, int qubit) {
  require_qubit(state, qubit, "qubit");
  StateVector out = state;
  for (std::uint64_t i = 0; i < out.amplitudes.size(); ++i) {
    if (bit_of(i, state.n_qubits, qubit)) out.amplitudes[i] = -out.amplitudes[i];
  }
  return out;
}

double singlet_conversion_prob(const PureState& state) {
  state.validate();
  return std::min(1.0, 2.0 * state.phi1);
}

double ghz_success_prob(int n, const PureState& state) {
  if (n < 1) throw QuantumDomainError("need at least one link");
  state.validate();
  const double x = state.phi0 * state.phi1;
  double sum = 0.0;
  double power = 1.0;
  for (int k = 0; k <= (n - 1) / 2; ++k) {
    sum += binomial(2 * k, k) * power;
    power *= x;
  }
  return 1.0 - (state.phi0 - state.phi1) * sum;
}

StarMeasurement star_measurement(int n, const PureState& s) {
  if (n < 1 || n > 6) throw QuantumDomainError("star measurement supports 1 to 6 links");
  s.validate();
  StateVector links = StateVector::pair(s);
  for (int i = 1; i < n; ++i) links = tensor(links, StateVector::pair(s));
  std::vector<int> centre;
  for (int i = 0; i < n; ++i) centre.push_back(2 * i);

  const std::uint64_t dim = std::uint64_t{1} << n;
  StarMeasurement res;
  res.n = n;
  for (std::uint64_t m = 0; m < dim / 2; ++m) {
    const std::uint64_t mbar = (dim - 1) ^ m;
    std::vector<Amplitude> op(2 * dim);
    op[m] = 1.0;
    op[dim + mbar] = 1.0;
    const StateVector after = apply_map(links, centre, op, 1);
    std::vector<std::pair<std::uint64_t, double>> support;
    for (std::uint64_t i = 0; i < after.amplitudes.size(); ++i) {
      const double w = std::norm(after.amplitudes[i]);
      if (w > 0.0) support.emplace_back(i, w);
    }
    const std::uint64_t full = (std::uint64_t{1} << after.n_qubits) - 1;
    if (support.size() > 2 || (support.size() == 2 && (support[0].first ^ support[1].first) != full)) {
      throw QuantumContractError("measurement outcome is not GHZ-like");
    }
    StarOutcome out;
    out.m = m;
    for (const auto& entry : support) out.probability += entry.second;
    if (support.size() == 2 && out.probability > 0.0) {
      out.lambda_min = std::min(support[0].second, support[1].second) / out.probability;
    }
    out.conversion = std::min(1.0, 2.0 * out.lambda_min);
    res.total_probability += out.probability;
    res.success += out.probability * out.conversion;
    res.outcomes.push_back(out);
  }
  return res;
}

double star_measurement_oracle(int n, const PureState& state) {
  return star_measurement(n, state).success;
}

ProtocolResult merge_ghz(const StateVector& a, const StateVector& b, int shared_qubit_a,
                         int shared_qubit_b) {
  require_qubit(a, shared_qubit_a, "shared qubit");
  require_qubit(b, shared_qubit_b, "shared qubit");
  require_ghz(a, "first input");
  require_ghz(b, "second input");
  const StateVector joint = tensor(a.normalized(), b.normalized());
  const int na = a.n_qubits;
  const int nb = b.n_qubits;
  const std::vector<int> pair{shared_qubit_a, na + shared_qubit_b};
  const StateVector target = StateVector::ghz(na + nb - 1);
  // |0><01| + |1><10| and |0><00| + |1><11|
  const std::vector<std::vector<Amplitude>> ops{{0, 1, 0, 0, 0, 0, 1, 0}, {1, 0, 0, 0, 0, 0, 0, 1}};
  ProtocolResult res;
  for (int outcome = 0; outcome < 2; ++outcome) {
    StateVector s = apply_map(joint, pair, ops[outcome], 1);
    Branch br;
    br.outcome = {outcome};
    br.probability = s.weight();
    if (outcome == 0) {
      for (int q = na; q < na + nb - 1; ++q) s = apply_x(s, q);
    }
    br.state = s.normalized();
    br.fidelity = fidelity(br.state, target);
    if (br.fidelity > 1.0 - kGhzTolerance) res.success_probability += br.probability;
    res.branches.push_back(std::move(br));
  }
  return res;
}

ProtocolResult extract_bell(const StateVector& state, int keep_i, int keep_j) {
  if (state.n_qubits < 2) throw QuantumDomainError("need at least two qubits");
  require_qubit(state, keep_i, "kept qubit");
  require_qubit(state, keep_j, "kept qubit");
  if (keep_i == keep_j) throw QuantumDomainError("kept qubits must differ");
  std::vector<int> others;
  for (int q = 0; q < state.n_qubits; ++q) {
    if (q != keep_i && q != keep_j) others.push_back(q);
  }
  const int k = static_cast<int>(others.size());
  const std::uint64_t dim = std::uint64_t{1} << k;
  const StateVector input = state.normalized();
  const StateVector target = StateVector::ghz(2);
  const int z_on = keep_i < keep_j ? 0 : 1;
  const double h = 1.0 / std::sqrt(2.0);
  ProtocolResult res;
  for (std::uint64_t bits = 0; bits < dim; ++bits) {
    // Row vector <s_1| x ... x <s_k| with s = + for bit 0 and - for bit 1.
    std::vector<Amplitude> row(dim);
    int minus = 0;
    for (int j = 0; j < k; ++j) minus += static_cast<int>((bits >> (k - 1 - j)) & 1U);
    for (std::uint64_t v = 0; v < dim; ++v) {
      double c = 1.0;
      for (int j = 0; j < k; ++j) {
        const bool is_minus = (bits >> (k - 1 - j)) & 1U;
        const bool is_one = (v >> (k - 1 - j)) & 1U;
        c *= (is_minus && is_one) ? -h : h;
      }
      row[v] = c;
    }
    StateVector s = k > 0 ? apply_map(input, others, row, 0) : input;
    Branch br;
    for (int j = 0; j < k; ++j) br.outcome.push_back(static_cast<int>((bits >> (k - 1 - j)) & 1U));
    br.probability = s.weight();
    if (minus % 2 == 1) s = apply_z(s, z_on);
    br.state = s.normalized();
    br.fidelity = fidelity(br.state, target);
    if (br.fidelity > 1.0 - kGhzTolerance) res.success_probability += br.probability;
    res.branches.push_back(std::move(br));
  }
  return res;
}

}  // namespace perconet::quantum
