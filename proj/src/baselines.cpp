#include "qot/baselines.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qot {

namespace {

void assert_covers(const Schedule& sched, const CoverUniverse& uni) {
  CoverReport rep = verify_cover(sched, uni);
  if (!rep.covered)
    throw std::logic_error("baseline schedule fails verification (" +
                           std::to_string(rep.uncovered_elements.size()) + " uncovered)");
}

int ceil_log(int n, int base) {
  int t = 0;
  long long p = 1;
  while (p < n) {
    p *= base;
    ++t;
  }
  return t;
}

}  // namespace

Schedule naive_per_rdm(const TargetSpec& spec) {
  validate_spec(spec);
  CoverUniverse uni = expand_universe(spec);
  if (uni.size() == 0) throw std::invalid_argument("empty target spec");

  Schedule sched;
  sched.n = spec.n;
  std::set<std::vector<Axis>> seen;
  for (std::size_t j = 0; j < uni.subsets.size(); ++j) {
    for (std::size_t id : uni.subset_elements[j]) {
      std::vector<Axis> axes(spec.n, Axis::Z);
      for (const PauliTerm& t : uni.elements[id].terms) axes[t.qubit] = t.axis;
      if (seen.insert(axes).second) sched.settings.push_back(Setting(axes));
    }
  }
  sched.method = Method::Naive;
  sched.optimal = Optimality::NotApplicable;
  sched.target_hash = target_hash(spec);
  validate_schedule(sched);
  assert_covers(sched, uni);
  return sched;
}

Schedule binary_hash_pairs(int n) {
  if (n < 2) throw std::invalid_argument("binary_hash_pairs needs n >= 2");
  Schedule sched;
  sched.n = n;
  for (Axis a : kAxes) sched.settings.push_back(Setting(std::vector<Axis>(n, a)));
  const int levels = ceil_log(n, 2);
  for (int t = 0; t < levels; ++t) {
    for (Axis p : kAxes) {
      for (Axis q : kAxes) {
        if (p == q) continue;
        std::vector<Axis> axes(n);
        for (int i = 0; i < n; ++i) axes[i] = ((i >> t) & 1) ? q : p;
        sched.settings.push_back(Setting(std::move(axes)));
      }
    }
  }
  sched.method = Method::BaselineBinary;
  sched.optimal = Optimality::NotApplicable;
  TargetSpec pairs = all_k_subsets(n, 2);
  sched.target_hash = target_hash(pairs);
  validate_schedule(sched);
  assert_covers(sched, expand_universe(pairs));
  return sched;
}

Schedule ternary_hash_pairs(int n) {
  if (n < 2) throw std::invalid_argument("ternary_hash_pairs needs n >= 2");
  Schedule sched;
  sched.n = n;
  for (Axis a : kAxes) sched.settings.push_back(Setting(std::vector<Axis>(n, a)));
  const int levels = ceil_log(n, 3);
  // The six permutations of (X,Y,Z), applied by base-3 digit.
  static constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                       {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int t = 0; t < levels; ++t) {
    long long p = 1;
    for (int i = 0; i < t; ++i) p *= 3;
    for (const auto& perm : kPerms) {
      std::vector<Axis> axes(n);
      for (int i = 0; i < n; ++i) axes[i] = static_cast<Axis>(perm[(i / p) % 3]);
      sched.settings.push_back(Setting(std::move(axes)));
    }
  }
  sched.method = Method::BaselineTernary;
  sched.optimal = Optimality::NotApplicable;
  TargetSpec pairs = all_k_subsets(n, 2);
  sched.target_hash = target_hash(pairs);
  validate_schedule(sched);
  assert_covers(sched, expand_universe(pairs));
  return sched;
}

}  // namespace qot
