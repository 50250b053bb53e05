#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "qot/cover.hpp"
#include "qot/simulator.hpp"

namespace qot {

// A schedule handed to reconstruction does not cover the target universe.
struct UnverifiedSchedule : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExpectationEntry {
  double value = 0.0;     // clamped to [-1, 1]
  int n_compatible = 0;   // settings the observable is qwc-compatible with
};

struct ExpectationTable {
  std::map<LocalObservable, ExpectationEntry> entries;

  const ExpectationEntry& at(const LocalObservable& o) const;
};

// Enumerates every non-identity Pauli word on every target subset (all
// 4^m - 1 of them, identity-containing marginals included) and estimates its
// expectation as the uniform average over compatible settings of the
// parity-weighted outcome distribution.
ExpectationTable estimate_expectations(const std::vector<MeasurementRecord>& records,
                                       const Schedule& schedule, const TargetSpec& spec);

struct RdmEstimate {
  std::vector<int> subset;
  Eigen::MatrixXcd matrix;
  bool projected = false;
};

// rho = (1/2^m) (I + sum_w <w> sigma_w) over the subset's non-identity words.
RdmEstimate assemble_rdm(const std::vector<int>& subset, const ExpectationTable& table);

// Clips negative eigenvalues to zero and renormalizes to unit trace.
// Idempotent. Throws if everything clips away.
RdmEstimate project_psd(const RdmEstimate& est);

// Fraction of the schedule's settings compatible with o: the probability a
// given shot informs o under equal shots per setting.
double lambda_of(const Schedule& schedule, const LocalObservable& o);

// One-shot norm distance d with d^2 = sum over the subset's non-identity
// words of (1 - <w>^2) / Lambda[w]; the identity word contributes zero.
double one_shot_d(const Schedule& schedule, const ExpectationTable& table,
                  const std::vector<int>& subset);

struct SampleRatioReport {
  double worst_ratio = 0.0;  // (max_subset d_a / max_subset d_b)^2
  double mean_ratio = 0.0;   // (mean_subset d_a / mean_subset d_b)^2
  std::vector<std::pair<double, double>> per_subset_d;  // (d_a, d_b) in spec order
};

// Sample-count ratio needed by schedule a relative to schedule b to reach the
// same reconstruction error, under the d^2 proportionality.
SampleRatioReport sample_ratio(const Schedule& sched_a, const Schedule& sched_b,
                               const ExpectationTable& table, const TargetSpec& spec);

// Uhlmann fidelity of two PSD trace-1 matrices.
double fidelity(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Wootters concurrence of a two-qubit density matrix.
double concurrence(const Eigen::MatrixXcd& rho);

double frobenius_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// All 4^m - 1 non-identity Pauli words supported inside `subset`, in
// ascending code order.
std::vector<LocalObservable> subset_words(const std::vector<int>& subset);

}  // namespace qot
