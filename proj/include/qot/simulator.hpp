#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qot/pauli.hpp"

namespace qot {

using cplx = std::complex<double>;

// Desk-scale cap on simulated qubits; override with QOT_SIM_CAP.
int sim_cap();

// Pure n-qubit state. Amplitude index convention: bit q of the index is the
// value of qubit q (qubit 0 is the least significant bit), matching the
// bitstring convention where character position = qubit index.
struct StateVector {
  int n = 0;
  std::vector<cplx> amplitudes;

  StateVector() = default;
  StateVector(int n_, std::vector<cplx> amps);  // validates norm and cap
};

// Named reference states: ghz, w, zero (any n >= 1), psi4 (n = 4 only).
StateVector make_state(const std::string& name, int n);

// Construct from a raw amplitude list, normalizing. Throws on a zero vector.
StateVector state_from_amplitudes(int n, std::vector<cplx> amps);

// Independent Haar-random single-qubit unitary on every qubit. Deterministic
// for a fixed seed.
StateVector apply_local_random(const StateVector& state, std::int64_t seed);

enum class RecordMode { Exact, Sampled };

// Outcome data for one parallel measurement setting: the full diagonal
// distribution (exact mode) or seeded shot counts keyed by bitstring.
struct MeasurementRecord {
  Setting setting;
  RecordMode mode = RecordMode::Exact;
  std::vector<double> distribution;             // exact mode, indexed like amplitudes
  std::map<std::string, std::int64_t> counts;   // sampled mode
  std::int64_t shots = 0;                       // sampled mode
  std::optional<std::int64_t> seed;             // sampled mode

  // Sum over outcomes of probability * parity on the support mask.
  double expectation(std::uint64_t support_mask) const;
};

// Rotates every qubit so the chosen axis maps onto the computational axis
// (X via the Hadamard rotation, Y via the phase-then-Hadamard rotation),
// then reads the diagonal. Sampled mode draws `shots` outcomes with a
// deterministic seeded generator.
MeasurementRecord measure_setting(const StateVector& state, const Setting& setting,
                                  RecordMode mode, std::int64_t shots = 0,
                                  std::int64_t seed = 0);

// Reduced density matrix on `subset` (sorted, unique) by partial trace.
Eigen::MatrixXcd rdm_oracle(const StateVector& state, const std::vector<int>& subset);

std::string bitstring_of(std::uint64_t index, int n);
std::uint64_t index_of_bitstring(const std::string& bits);

// Decorrelated per-record seed stream from a base seed.
std::int64_t derive_seed(std::int64_t base, std::int64_t index);

}  // namespace qot
