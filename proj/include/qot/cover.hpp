#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qot/targets.hpp"

namespace qot {

inline constexpr std::size_t kDefaultCandidateCap = 59049;  // 3^10

// One covering problem: find few settings such that every universe element is
// qwc-compatible with at least one of them.
struct CoverInstance {
  CoverUniverse universe;
  std::size_t candidate_cap = kDefaultCandidateCap;
  double time_limit_seconds = 60.0;
};

enum class Method {
  Exact,
  GreedyDensity,
  GreedyEnum,
  ChainPeriodic,
  BipartiteColoring,
  BaselineBinary,
  BaselineTernary,
  Naive,
};

std::string method_name(Method m);
Method method_from_name(const std::string& name);

enum class Optimality { Proven, Unknown, NotApplicable };

std::string optimality_name(Optimality o);
Optimality optimality_from_name(const std::string& name);

// An ordered, duplicate-free list of settings plus provenance.
struct Schedule {
  int n = 0;
  std::vector<Setting> settings;
  Method method = Method::GreedyDensity;
  std::optional<std::int64_t> seed;
  Optimality optimal = Optimality::Unknown;
  std::string target_hash;

  int size() const { return static_cast<int>(settings.size()); }
};

// Throws std::invalid_argument on empty, duplicated, or wrong-length settings.
void validate_schedule(const Schedule& sched);

struct CoverReport {
  bool covered = false;
  std::vector<std::size_t> uncovered_elements;  // universe element ids
};

// Requested candidate space exceeds the instance's enumeration cap.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The pair graph contains an odd cycle; use greedy or exact instead.
struct NonBipartiteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exhaustively checks every universe element against the schedule.
CoverReport verify_cover(const Schedule& sched, const CoverUniverse& universe);

// max(3^{max subset size}, size of a greedily built set of pairwise
// co-incompatible elements). Two elements are co-incompatible when no single
// setting can cover both, i.e. they demand different axes on a shared qubit.
int lower_bound(const CoverUniverse& universe);

// Density-guided constructive greedy. Builds settings one at a time, assigning
// axes qubit-by-qubit in decreasing order of uncovered-element degree and
// scoring each axis by the expected coverage it preserves. Restarts perturb
// the qubit order with a seeded permutation; the smallest schedule wins, ties
// by lexicographic setting list. Deterministic for fixed (seed, restarts)
// regardless of worker count.
Schedule greedy_density(const CoverInstance& instance, std::int64_t seed, int restarts,
                        int workers = 0);

// Classic set-cover greedy over all 3^n candidate settings: repeatedly pick
// the setting covering the most uncovered elements, ties by lexicographic
// setting string. Requires 3^n <= candidate_cap.
Schedule greedy_enum(const CoverInstance& instance);

// Branch-and-bound over footprint-deduplicated candidates, incumbent seeded
// from greedy_enum. Proves optimality when the search completes within the
// time limit. Requires 3^n <= candidate_cap.
Schedule exact_bnb(const CoverInstance& instance);

// The 3^k-setting periodic construction for contiguous chain windows:
// assignment a gives qubit q the axis a[q mod k]. Always proven optimal.
Schedule chain_periodic(int n, int k);

// For 2-local specs whose pair graph is 2-colorable: 9 settings, one per
// ordered axis pair (P,Q), assigning P to color-0 and Q to color-1 qubits.
// Proven optimal. Throws NonBipartiteError on an odd cycle.
Schedule bipartite_coloring(const TargetSpec& spec);

}  // namespace qot
