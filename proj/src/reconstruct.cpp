#include "qot/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qot {

namespace {

constexpr double kHermTol = 1e-8;

void check_subset(const std::vector<int>& subset) {
  if (subset.empty()) throw std::invalid_argument("empty subset");
  for (std::size_t i = 1; i < subset.size(); ++i)
    if (subset[i] <= subset[i - 1])
      throw std::invalid_argument("subset must be sorted with unique entries");
}

// 2x2 Pauli matrices indexed 0..3 = I, X, Y, Z.
const Eigen::Matrix2cd& pauli_matrix(int p) {
  static const std::array<Eigen::Matrix2cd, 4> mats = [] {
    std::array<Eigen::Matrix2cd, 4> m;
    m[0] << 1, 0, 0, 1;
    m[1] << 0, 1, 1, 0;
    m[2] << 0, cplx(0, -1), cplx(0, 1), 0;
    m[3] << 1, 0, 0, -1;
    return m;
  }();
  return mats[p];
}

void check_density_like(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix is not square");
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw std::invalid_argument("matrix is not Hermitian");
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
  if (es.eigenvalues().minCoeff() < -kHermTol)
    throw std::invalid_argument("matrix is not positive semidefinite");
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

const ExpectationEntry& ExpectationTable::at(const LocalObservable& o) const {
  auto it = entries.find(o);
  if (it == entries.end())
    throw std::invalid_argument("expectation table is missing observable " + o.str());
  return it->second;
}

std::vector<LocalObservable> subset_words(const std::vector<int>& subset) {
  check_subset(subset);
  const int m = static_cast<int>(subset.size());
  std::uint64_t total = 1;
  for (int i = 0; i < m; ++i) total *= 4;
  std::vector<LocalObservable> words;
  words.reserve(total - 1);
  for (std::uint64_t code = 1; code < total; ++code) {
    std::vector<PauliTerm> terms;
    std::uint64_t rem = code;
    for (int j = m - 1; j >= 0; --j) {
      const int p = static_cast<int>(rem % 4);
      rem /= 4;
      if (p != 0) terms.push_back({subset[j], static_cast<Axis>(p - 1)});
    }
    std::reverse(terms.begin(), terms.end());
    words.push_back(LocalObservable(std::move(terms)));
  }
  return words;
}

ExpectationTable estimate_expectations(const std::vector<MeasurementRecord>& records,
                                       const Schedule& schedule, const TargetSpec& spec) {
  validate_schedule(schedule);
  if (records.size() != schedule.settings.size())
    throw std::invalid_argument("records must correspond one-to-one with schedule settings");
  for (std::size_t i = 0; i < records.size(); ++i)
    if (records[i].setting != schedule.settings[i])
      throw std::invalid_argument("record " + std::to_string(i) +
                                  " does not match its schedule setting");

  CoverUniverse uni = expand_universe(spec);
  CoverReport rep = verify_cover(schedule, uni);
  if (!rep.covered)
    throw UnverifiedSchedule("schedule leaves " + std::to_string(rep.uncovered_elements.size()) +
                             " target observables uncovered");

  ExpectationTable table;
  for (const auto& subset : spec.subsets) {
    for (LocalObservable& w : subset_words(subset)) {
      if (table.entries.count(w)) continue;
      std::uint64_t mask = 0;
      for (const PauliTerm& t : w.terms) mask |= std::uint64_t{1} << t.qubit;
      double sum = 0;
      int compat = 0;
      for (std::size_t i = 0; i < records.size(); ++i) {
        if (!qwc_compatible(w, schedule.settings[i])) continue;
        sum += records[i].expectation(mask);
        ++compat;
      }
      if (compat == 0)
        throw UnverifiedSchedule("no compatible setting for observable " + w.str());
      ExpectationEntry entry;
      entry.value = std::clamp(sum / compat, -1.0, 1.0);
      entry.n_compatible = compat;
      table.entries.emplace(std::move(w), entry);
    }
  }
  return table;
}

RdmEstimate assemble_rdm(const std::vector<int>& subset, const ExpectationTable& table) {
  check_subset(subset);
  const int m = static_cast<int>(subset.size());
  const std::uint64_t dim = std::uint64_t{1} << m;

  RdmEstimate est;
  est.subset = subset;
  est.matrix = Eigen::MatrixXcd::Identity(dim, dim);
  for (const LocalObservable& w : subset_words(subset)) {
    const double val = table.at(w).value;
    // Pauli digit per subset position (0 = identity off the support).
    std::vector<int> digit(m, 0);
    for (const PauliTerm& t : w.terms) {
      const auto pos = std::lower_bound(subset.begin(), subset.end(), t.qubit) - subset.begin();
      digit[pos] = static_cast<int>(t.axis) + 1;
    }
    for (std::uint64_t r = 0; r < dim; ++r)
      for (std::uint64_t c = 0; c < dim; ++c) {
        cplx prod{1, 0};
        for (int j = 0; j < m; ++j) prod *= pauli_matrix(digit[j])((r >> j) & 1, (c >> j) & 1);
        est.matrix(r, c) += val * prod;
      }
  }
  est.matrix /= static_cast<double>(dim);
  return est;
}

RdmEstimate project_psd(const RdmEstimate& est) {
  check_density_like(est.matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(est.matrix);
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
  const double total = vals.sum();
  if (total <= 1e-12)
    throw std::runtime_error("projection clipped the entire spectrum; data is unusable");
  vals /= total;
  RdmEstimate out;
  out.subset = est.subset;
  out.matrix = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
  out.projected = true;
  return out;
}

double lambda_of(const Schedule& schedule, const LocalObservable& o) {
  if (schedule.settings.empty()) throw std::invalid_argument("empty schedule");
  int compat = 0;
  for (const Setting& g : schedule.settings)
    if (qwc_compatible(o, g)) ++compat;
  return static_cast<double>(compat) / static_cast<double>(schedule.settings.size());
}

double one_shot_d(const Schedule& schedule, const ExpectationTable& table,
                  const std::vector<int>& subset) {
  check_subset(subset);
  double d2 = 0;
  for (const LocalObservable& w : subset_words(subset)) {
    const double lambda = lambda_of(schedule, w);
    if (lambda <= 0.0)
      throw UnverifiedSchedule("schedule never measures observable " + w.str());
    const double v = table.at(w).value;
    d2 += (1.0 - v * v) / lambda;
  }
  return std::sqrt(d2);
}

SampleRatioReport sample_ratio(const Schedule& sched_a, const Schedule& sched_b,
                               const ExpectationTable& table, const TargetSpec& spec) {
  validate_spec(spec);
  if (spec.subsets.empty()) throw std::invalid_argument("spec has no subsets");
  SampleRatioReport rep;
  double max_a = 0, max_b = 0, sum_a = 0, sum_b = 0;
  for (const auto& subset : spec.subsets) {
    const double da = one_shot_d(sched_a, table, subset);
    const double db = one_shot_d(sched_b, table, subset);
    rep.per_subset_d.push_back({da, db});
    max_a = std::max(max_a, da);
    max_b = std::max(max_b, db);
    sum_a += da;
    sum_b += db;
  }
  rep.worst_ratio = (max_a / max_b) * (max_a / max_b);
  rep.mean_ratio = (sum_a / sum_b) * (sum_a / sum_b);
  return rep;
}

double fidelity(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  check_density_like(a);
  check_density_like(b);
  if (a.rows() != b.rows()) throw std::invalid_argument("dimension mismatch");
  const Eigen::MatrixXcd sa = psd_sqrt(a);
  (void)psd_sqrt(b);  // validates PSD
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sa * b * sa);
  const double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(tr * tr, 0.0, 1.0);
}

double concurrence(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("concurrence needs a 4x4 density matrix");
  check_density_like(rho);
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      yy(r, c) = pauli_matrix(2)(r & 1, c & 1) * pauli_matrix(2)((r >> 1) & 1, (c >> 1) & 1);
  const Eigen::Matrix4cd flipped = yy * rho.conjugate() * yy;
  // The spectrum of rho * flipped equals that of the Hermitian
  // sqrt(rho) * flipped * sqrt(rho); the Hermitian solve keeps exact zero
  // eigenvalues at rounding level instead of sqrt(rounding).
  const Eigen::MatrixXcd sr = psd_sqrt(rho);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(sr * flipped * sr);
  Eigen::Vector4d vals = es.eigenvalues().cwiseMax(0.0);
  const double clip = vals.maxCoeff() * 1e-12;
  std::array<double, 4> lam;
  for (int i = 0; i < 4; ++i) lam[i] = vals[i] <= clip ? 0.0 : std::sqrt(vals[i]);
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double frobenius_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).norm();
}

}  // namespace qot
