#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "qot/baselines.hpp"
#include "qot/reconstruct.hpp"

using namespace qot;
using doctest::Approx;

namespace {

std::vector<MeasurementRecord> exact_records(const StateVector& state, const Schedule& sched) {
  std::vector<MeasurementRecord> recs;
  for (const Setting& g : sched.settings) recs.push_back(measure_setting(state, g, RecordMode::Exact));
  return recs;
}

Schedule pair_schedule() {
  // All nine settings on a single pair of qubits.
  Schedule sched;
  sched.n = 2;
  for (Axis a : kAxes)
    for (Axis b : kAxes) sched.settings.push_back(Setting({a, b}));
  sched.method = Method::Exact;
  sched.optimal = Optimality::Proven;
  return sched;
}

}  // namespace

TEST_CASE("estimate_expectations reproduces simple marginals") {
  TargetSpec spec = all_k_subsets(4, 2);
  Schedule sched = exact_bnb(CoverInstance{expand_universe(spec)});
  StateVector ghz = make_state("ghz", 4);
  ExpectationTable table = estimate_expectations(exact_records(ghz, sched), sched, spec);
  CHECK(table.at(LocalObservable::from_string("Z0 Z1")).value == Approx(1.0));
  CHECK(table.at(LocalObservable::from_string("X0")).value == Approx(0.0).epsilon(1e-12));

  TargetSpec pair_spec;
  pair_spec.n = 2;
  pair_spec.subsets = {{0, 1}};
  Schedule pairs = pair_schedule();
  StateVector zero2 = make_state("zero", 2);
  ExpectationTable t2 = estimate_expectations(exact_records(zero2, pairs), pairs, pair_spec);
  CHECK(t2.at(LocalObservable::from_string("Z0")).value == Approx(1.0));
  CHECK(t2.at(LocalObservable::from_string("X0 X1")).value == Approx(0.0).epsilon(1e-12));
  // Weight-1 words see three compatible settings, weight-2 words one.
  CHECK(t2.at(LocalObservable::from_string("Z0")).n_compatible == 3);
  CHECK(t2.at(LocalObservable::from_string("X0 X1")).n_compatible == 1);
}

TEST_CASE("estimate_expectations rejects mismatched or uncovering input") {
  TargetSpec spec = all_k_subsets(4, 2);
  Schedule sched = exact_bnb(CoverInstance{expand_universe(spec)});
  StateVector ghz = make_state("ghz", 4);
  auto recs = exact_records(ghz, sched);
  recs.pop_back();
  CHECK_THROWS_AS(estimate_expectations(recs, sched, spec), std::invalid_argument);

  Schedule thin;
  thin.n = 4;
  thin.settings = {Setting::from_string("XXXX"), Setting::from_string("YYYY")};
  CHECK_THROWS_AS(estimate_expectations(exact_records(ghz, thin), thin, spec),
                  UnverifiedSchedule);
}

TEST_CASE("sampled estimates approach exact ones") {
  TargetSpec spec;
  spec.n = 2;
  spec.subsets = {{0, 1}};
  Schedule pairs = pair_schedule();
  StateVector state = apply_local_random(make_state("ghz", 2), 3);
  ExpectationTable exact = estimate_expectations(exact_records(state, pairs), pairs, spec);
  std::vector<MeasurementRecord> sampled;
  for (std::size_t i = 0; i < pairs.settings.size(); ++i)
    sampled.push_back(measure_setting(state, pairs.settings[i], RecordMode::Sampled, 1000000,
                                      derive_seed(5, static_cast<std::int64_t>(i))));
  ExpectationTable approx = estimate_expectations(sampled, pairs, spec);
  for (const auto& [obs, entry] : exact.entries)
    CHECK(std::abs(entry.value - approx.at(obs).value) < 5e-3);
}

TEST_CASE("assemble_rdm matches hand values and the oracle") {
  TargetSpec spec = all_k_subsets(4, 2);
  Schedule sched = exact_bnb(CoverInstance{expand_universe(spec)});

  StateVector ghz = make_state("ghz", 4);
  ExpectationTable t = estimate_expectations(exact_records(ghz, sched), sched, spec);
  RdmEstimate est = assemble_rdm({0, 1}, t);
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(4, 4);
  expect(0, 0) = 0.5;
  expect(3, 3) = 0.5;
  CHECK((est.matrix - expect).cwiseAbs().maxCoeff() < 1e-10);
  CHECK_FALSE(est.projected);

  // An all-zero table assembles to the maximally mixed state.
  ExpectationTable zeros;
  for (const LocalObservable& w : subset_words({0, 1})) zeros.entries[w] = {0.0, 1};
  RdmEstimate mixed = assemble_rdm({0, 1}, zeros);
  CHECK((mixed.matrix - Eigen::MatrixXcd::Identity(4, 4) * 0.25).cwiseAbs().maxCoeff() < 1e-14);

  StateVector psi4 = make_state("psi4", 4);
  ExpectationTable tp = estimate_expectations(exact_records(psi4, sched), sched, spec);
  CHECK(frobenius_distance(assemble_rdm({0, 2}, tp).matrix, rdm_oracle(psi4, {0, 2})) < 1e-10);

  ExpectationTable missing;
  CHECK_THROWS_AS(assemble_rdm({0, 1}, missing), std::invalid_argument);
}

TEST_CASE("oracle equivalence across states and sizes") {
  for (int n : {4, 6}) {
    TargetSpec spec = all_k_subsets(n, 2);
    CoverInstance inst{expand_universe(spec)};
    Schedule sched = greedy_density(inst, 0, 8);
    for (const char* name : {"ghz", "w", "psi4"}) {
      if (std::string(name) == "psi4" && n != 4) continue;
      StateVector state = make_state(name, n);
      ExpectationTable t = estimate_expectations(exact_records(state, sched), sched, spec);
      for (const auto& subset : spec.subsets)
        CHECK(frobenius_distance(assemble_rdm(subset, t).matrix, rdm_oracle(state, subset)) <
              1e-10);
    }
  }
}

TEST_CASE("project_psd clips, renormalizes, and is idempotent") {
  RdmEstimate psd;
  psd.subset = {0};
  psd.matrix = Eigen::MatrixXcd::Zero(2, 2);
  psd.matrix(0, 0) = 0.75;
  psd.matrix(1, 1) = 0.25;
  RdmEstimate out = project_psd(psd);
  CHECK((out.matrix - psd.matrix).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(out.projected);

  RdmEstimate neg;
  neg.subset = {0};
  neg.matrix = Eigen::MatrixXcd::Zero(2, 2);
  neg.matrix(0, 0) = 1.1;
  neg.matrix(1, 1) = -0.1;
  RdmEstimate clipped = project_psd(neg);
  CHECK(clipped.matrix(0, 0).real() == Approx(1.0));
  CHECK(std::abs(clipped.matrix(1, 1)) < 1e-14);

  // Random Hermitian trace-1 with a small negative eigenvalue.
  std::mt19937_64 rng(2024);
  auto unit = [&rng]() { return (static_cast<double>(rng() >> 11) * 0x1p-53) * 2.0 - 1.0; };
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(4, 4);
    for (int r = 0; r < 4; ++r)
      for (int c = r; c < 4; ++c) {
        if (r == c)
          h(r, c) = unit();
        else {
          h(r, c) = cplx(unit(), unit()) * 0.2;
          h(c, r) = std::conj(h(r, c));
        }
      }
    h /= h.trace().real() != 0 ? h.trace().real() : 1.0;
    RdmEstimate e;
    e.subset = {0, 1};
    e.matrix = h;
    RdmEstimate p = project_psd(e);
    CHECK(std::abs(p.matrix.trace().real() - 1.0) < 1e-10);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p.matrix);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
    RdmEstimate pp = project_psd(p);
    CHECK((pp.matrix - p.matrix).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("projection never hurts the exact-mode reconstructions") {
  TargetSpec spec = all_k_subsets(4, 2);
  Schedule sched = exact_bnb(CoverInstance{expand_universe(spec)});
  for (const char* name : {"ghz", "w", "psi4"}) {
    StateVector state = make_state(name, 4);
    ExpectationTable t = estimate_expectations(exact_records(state, sched), sched, spec);
    for (const auto& subset : spec.subsets) {
      RdmEstimate raw = assemble_rdm(subset, t);
      RdmEstimate proj = project_psd(raw);
      Eigen::MatrixXcd oracle = rdm_oracle(state, subset);
      CHECK(frobenius_distance(proj.matrix, oracle) <=
            frobenius_distance(raw.matrix, oracle) + 1e-12);
    }
  }
}

TEST_CASE("lambda_of counts compatible settings") {
  Schedule one;
  one.n = 2;
  one.settings = {Setting::from_string("XX")};
  CHECK(lambda_of(one, LocalObservable::from_string("X0 X1")) == Approx(1.0));

  Schedule pairs = pair_schedule();
  CHECK(lambda_of(pairs, LocalObservable::from_string("X0 X1")) == Approx(1.0 / 9));
  CHECK(lambda_of(pairs, LocalObservable::from_string("X0")) == Approx(1.0 / 3));
}

TEST_CASE("one_shot_d matches independent enumeration") {
  TargetSpec spec;
  spec.n = 2;
  spec.subsets = {{0, 1}};
  Schedule pairs = pair_schedule();

  // |00>: words Z0, Z1, Z0Z1 have expectation 1 and contribute nothing; the
  // other 4 weight-1 words contribute 3 each and the other 8 weight-2 words
  // contribute 9 each: d^2 = 12 + 72 = 84. Cross-checked by enumerating all
  // 15 words with hand-computed expectations.
  StateVector zero2 = make_state("zero", 2);
  ExpectationTable t = estimate_expectations(exact_records(zero2, pairs), pairs, spec);
  double d2 = 0;
  for (const LocalObservable& w : subset_words({0, 1})) {
    double v = 1.0;
    for (const PauliTerm& term : w.terms)
      if (term.axis != Axis::Z) v = 0.0;
    int compat = 0;
    for (const Setting& g : pairs.settings)
      if (qwc_compatible(w, g)) ++compat;
    d2 += (1.0 - v * v) * 9.0 / compat;
  }
  CHECK(d2 == Approx(84.0));
  CHECK(one_shot_d(pairs, t, {0, 1}) == Approx(std::sqrt(84.0)));

  // Maximally mixed marginal: nine weight-2 words at 1/9 and six weight-1
  // words at 1/3, all with zero expectation: d^2 = 81 + 18 = 99.
  ExpectationTable zeros;
  for (const LocalObservable& w : subset_words({0, 1})) zeros.entries[w] = {0.0, 1};
  CHECK(one_shot_d(pairs, zeros, {0, 1}) == Approx(std::sqrt(99.0)));

  // Doubling the schedule leaves d unchanged: Lambda is a ratio. Settings
  // must stay unique, so replicate on a spare qubit.
  Schedule base;
  base.n = 3;
  for (Axis a : kAxes)
    for (Axis b : kAxes) base.settings.push_back(Setting({a, b, Axis::X}));
  Schedule twice = base;
  for (Axis a : kAxes)
    for (Axis b : kAxes) twice.settings.push_back(Setting({a, b, Axis::Y}));
  CHECK(one_shot_d(base, zeros, {0, 1}) == Approx(one_shot_d(twice, zeros, {0, 1})));
}

TEST_CASE("sample_ratio compares schemes") {
  TargetSpec spec = all_k_subsets(4, 2);
  Schedule opt = exact_bnb(CoverInstance{expand_universe(spec)});
  Schedule binary = binary_hash_pairs(4);
  Schedule naive = naive_per_rdm(spec);
  StateVector psi4 = make_state("psi4", 4);
  ExpectationTable t = estimate_expectations(exact_records(psi4, opt), opt, spec);

  SampleRatioReport self = sample_ratio(opt, opt, t, spec);
  CHECK(self.worst_ratio == Approx(1.0));
  CHECK(self.mean_ratio == Approx(1.0));

  CHECK(sample_ratio(binary, opt, t, spec).worst_ratio > 1.0);
  CHECK(sample_ratio(naive, opt, t, spec).worst_ratio > 1.0);
}

TEST_CASE("fidelity matches closed forms") {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
  rho(0, 0) = 0.3;
  rho(1, 1) = 0.7;
  CHECK(fidelity(rho, rho) == Approx(1.0));

  Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(2, 2), one = Eigen::MatrixXcd::Zero(2, 2);
  zero(0, 0) = 1;
  one(1, 1) = 1;
  CHECK(fidelity(zero, one) == Approx(0.0).epsilon(1e-12));
  Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Identity(2, 2) * 0.5;
  CHECK(fidelity(mixed, zero) == Approx(0.5));

  Eigen::MatrixXcd notpsd = Eigen::MatrixXcd::Zero(2, 2);
  notpsd(0, 0) = 1.5;
  notpsd(1, 1) = -0.5;
  CHECK_THROWS_AS(fidelity(notpsd, zero), std::invalid_argument);
}

TEST_CASE("concurrence patterns of the reference states") {
  StateVector w4 = make_state("w", 4);
  StateVector ghz4 = make_state("ghz", 4);
  StateVector psi4 = make_state("psi4", 4);
  for (const auto& subset : all_k_subsets(4, 2).subsets) {
    CHECK(concurrence(rdm_oracle(w4, subset)) == Approx(0.5));
    CHECK(concurrence(rdm_oracle(ghz4, subset)) == Approx(0.0).epsilon(1e-9));
    const bool entangled = subset == std::vector<int>{0, 2} || subset == std::vector<int>{1, 3};
    // psi4 regression: 0.8 on the two entangled pairs (frozen from the
    // partial-trace + spin-flip oracle), zero elsewhere.
    CHECK(concurrence(rdm_oracle(psi4, subset)) == Approx(entangled ? 0.8 : 0.0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(concurrence(Eigen::MatrixXcd::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("estimates stay clamped for pathological counts") {
  TargetSpec spec;
  spec.n = 2;
  spec.subsets = {{0, 1}};
  Schedule pairs = pair_schedule();
  std::vector<MeasurementRecord> recs;
  for (const Setting& g : pairs.settings) {
    MeasurementRecord rec;
    rec.setting = g;
    rec.mode = RecordMode::Sampled;
    rec.counts["00"] = 3;  // heavily skewed tiny-shot data
    rec.shots = 3;
    recs.push_back(rec);
  }
  ExpectationTable t = estimate_expectations(recs, pairs, spec);
  for (const auto& [obs, entry] : t.entries) {
    CHECK(entry.value <= 1.0);
    CHECK(entry.value >= -1.0);
  }
}
