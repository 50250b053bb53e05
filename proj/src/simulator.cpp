#include "qot/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qot {

namespace {

constexpr double kNormTol = 1e-12;

double uniform01(std::mt19937_64& rng) {
  // 53-bit mantissa draw in (0,1); avoids the implementation-defined
  // std::uniform_real_distribution.
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

cplx gaussian_pair(std::mt19937_64& rng) {
  const double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

// Haar-distributed 2x2 unitary: Gram-Schmidt on a complex Ginibre matrix with
// a positive-real R diagonal.
Eigen::Matrix2cd haar_unitary(std::mt19937_64& rng) {
  Eigen::Vector2cd g1(gaussian_pair(rng), gaussian_pair(rng));
  Eigen::Vector2cd g2(gaussian_pair(rng), gaussian_pair(rng));
  Eigen::Vector2cd q1 = g1.normalized();
  Eigen::Vector2cd w = g2 - q1 * (q1.adjoint() * g2);
  Eigen::Vector2cd q2 = w.normalized();
  Eigen::Matrix2cd u;
  u.col(0) = q1;
  u.col(1) = q2;
  return u;
}

void apply_one_qubit(std::vector<cplx>& amps, int n, int qubit, const Eigen::Matrix2cd& u) {
  const std::uint64_t stride = std::uint64_t{1} << qubit;
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t base = 0; base < dim; ++base) {
    if (base & stride) continue;
    const cplx a0 = amps[base];
    const cplx a1 = amps[base | stride];
    amps[base] = u(0, 0) * a0 + u(0, 1) * a1;
    amps[base | stride] = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

double norm_sq(const std::vector<cplx>& amps) {
  double s = 0;
  for (const cplx& a : amps) s += std::norm(a);
  return s;
}

}  // namespace

int sim_cap() {
  if (const char* env = std::getenv("QOT_SIM_CAP")) {
    int cap = std::atoi(env);
    if (cap >= 1) return cap;
  }
  return 14;
}

StateVector::StateVector(int n_, std::vector<cplx> amps) : n(n_), amplitudes(std::move(amps)) {
  if (n < 1) throw std::invalid_argument("state needs n >= 1");
  if (n > sim_cap())
    throw std::invalid_argument("n = " + std::to_string(n) + " exceeds simulator cap " +
                                std::to_string(sim_cap()));
  if (amplitudes.size() != (std::uint64_t{1} << n))
    throw std::invalid_argument("amplitude count must be 2^n");
  if (std::abs(norm_sq(amplitudes) - 1.0) > kNormTol)
    throw std::invalid_argument("state vector is not normalized");
}

StateVector make_state(const std::string& name, int n) {
  if (n < 1) throw std::invalid_argument("state needs n >= 1");
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<cplx> amps(dim, cplx{0, 0});
  if (name == "zero") {
    amps[0] = 1.0;
  } else if (name == "ghz") {
    amps[0] = 1.0 / std::numbers::sqrt2;
    amps[dim - 1] = 1.0 / std::numbers::sqrt2;
  } else if (name == "w") {
    const double a = 1.0 / std::sqrt(static_cast<double>(n));
    for (int q = 0; q < n; ++q) amps[std::uint64_t{1} << q] = a;
  } else if (name == "psi4") {
    if (n != 4) throw std::invalid_argument("psi4 is a 4-qubit state");
    const double a = 1.0 / std::sqrt(5.0);
    for (std::uint64_t b : {0b0000ULL, 0b1111ULL, 0b1010ULL, 0b0101ULL, 0b0110ULL}) amps[b] = a;
  } else {
    throw std::invalid_argument("unknown state: " + name);
  }
  return StateVector(n, std::move(amps));
}

StateVector state_from_amplitudes(int n, std::vector<cplx> amps) {
  const double ns = norm_sq(amps);
  if (ns <= 0.0) throw std::invalid_argument("zero-norm amplitude vector");
  const double inv = 1.0 / std::sqrt(ns);
  for (cplx& a : amps) a *= inv;
  return StateVector(n, std::move(amps));
}

StateVector apply_local_random(const StateVector& state, std::int64_t seed) {
  std::mt19937_64 rng(splitmix64(static_cast<std::uint64_t>(seed)));
  std::vector<cplx> amps = state.amplitudes;
  for (int q = 0; q < state.n; ++q) apply_one_qubit(amps, state.n, q, haar_unitary(rng));
  // Unitarity keeps the norm; renormalize the residual rounding drift.
  const double inv = 1.0 / std::sqrt(norm_sq(amps));
  for (cplx& a : amps) a *= inv;
  return StateVector(state.n, std::move(amps));
}

double MeasurementRecord::expectation(std::uint64_t support_mask) const {
  double val = 0;
  if (mode == RecordMode::Exact) {
    for (std::uint64_t b = 0; b < distribution.size(); ++b)
      val += std::popcount(b & support_mask) % 2 ? -distribution[b] : distribution[b];
  } else {
    for (const auto& [bits, c] : counts) {
      const std::uint64_t b = index_of_bitstring(bits);
      val += std::popcount(b & support_mask) % 2 ? -static_cast<double>(c)
                                                 : static_cast<double>(c);
    }
    val /= static_cast<double>(shots);
  }
  return val;
}

MeasurementRecord measure_setting(const StateVector& state, const Setting& setting,
                                  RecordMode mode, std::int64_t shots, std::int64_t seed) {
  if (setting.size() != state.n)
    throw std::invalid_argument("setting length does not match state size");
  if (mode == RecordMode::Sampled && shots < 1)
    throw std::invalid_argument("sampled mode needs shots >= 1");

  // Basis rotations mapping the chosen axis onto Z: H for X, H * diag(1,-i)
  // for Y.
  static const double s = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix2cd hx;
  hx << s, s, s, -s;
  Eigen::Matrix2cd hy;
  hy << s, cplx(0, -s), s, cplx(0, s);

  std::vector<cplx> amps = state.amplitudes;
  for (int q = 0; q < state.n; ++q) {
    if (setting.axes[q] == Axis::X)
      apply_one_qubit(amps, state.n, q, hx);
    else if (setting.axes[q] == Axis::Y)
      apply_one_qubit(amps, state.n, q, hy);
  }

  const std::uint64_t dim = amps.size();
  std::vector<double> probs(dim);
  double total = 0;
  for (std::uint64_t b = 0; b < dim; ++b) {
    probs[b] = std::norm(amps[b]);
    total += probs[b];
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::logic_error("measurement probabilities do not sum to 1");

  MeasurementRecord rec;
  rec.setting = setting;
  rec.mode = mode;
  if (mode == RecordMode::Exact) {
    rec.distribution = std::move(probs);
    return rec;
  }

  std::vector<double> cdf(dim);
  double acc = 0;
  for (std::uint64_t b = 0; b < dim; ++b) {
    acc += probs[b];
    cdf[b] = acc;
  }
  cdf[dim - 1] = 1.0;

  std::mt19937_64 rng(splitmix64(static_cast<std::uint64_t>(seed)));
  for (std::int64_t s_i = 0; s_i < shots; ++s_i) {
    const double u = uniform01(rng);
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::uint64_t b = static_cast<std::uint64_t>(it - cdf.begin());
    ++rec.counts[bitstring_of(b, state.n)];
  }
  rec.shots = shots;
  rec.seed = seed;
  return rec;
}

Eigen::MatrixXcd rdm_oracle(const StateVector& state, const std::vector<int>& subset) {
  if (subset.empty()) throw std::invalid_argument("empty subset");
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 0 || subset[i] >= state.n)
      throw std::invalid_argument("subset qubit out of range");
    if (i > 0 && subset[i] <= subset[i - 1])
      throw std::invalid_argument("subset must be sorted with unique entries");
  }
  const int m = static_cast<int>(subset.size());
  std::vector<int> env;
  for (int q = 0; q < state.n; ++q)
    if (!std::binary_search(subset.begin(), subset.end(), q)) env.push_back(q);

  const std::uint64_t sys_dim = std::uint64_t{1} << m;
  const std::uint64_t env_dim = std::uint64_t{1} << env.size();
  auto full_index = [&](std::uint64_t sys, std::uint64_t e) {
    std::uint64_t b = 0;
    for (int j = 0; j < m; ++j) b |= ((sys >> j) & 1) << subset[j];
    for (std::size_t j = 0; j < env.size(); ++j) b |= ((e >> j) & 1) << env[j];
    return b;
  };

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(sys_dim, sys_dim);
  for (std::uint64_t r = 0; r < sys_dim; ++r)
    for (std::uint64_t c = 0; c < sys_dim; ++c) {
      cplx acc{0, 0};
      for (std::uint64_t e = 0; e < env_dim; ++e)
        acc += state.amplitudes[full_index(r, e)] * std::conj(state.amplitudes[full_index(c, e)]);
      rho(r, c) = acc;
    }
  return rho;
}

std::string bitstring_of(std::uint64_t index, int n) {
  std::string s(n, '0');
  for (int q = 0; q < n; ++q)
    if ((index >> q) & 1) s[q] = '1';
  return s;
}

std::uint64_t index_of_bitstring(const std::string& bits) {
  std::uint64_t b = 0;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q] == '1')
      b |= std::uint64_t{1} << q;
    else if (bits[q] != '0')
      throw std::invalid_argument("malformed bitstring: " + bits);
  }
  return b;
}

std::int64_t derive_seed(std::int64_t base, std::int64_t index) {
  return static_cast<std::int64_t>(splitmix64(static_cast<std::uint64_t>(base) ^
                                              (0x9E3779B97F4A7C15ULL *
                                               (static_cast<std::uint64_t>(index) + 1))));
}

}  // namespace qot
