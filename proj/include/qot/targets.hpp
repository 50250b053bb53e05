#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qot/pauli.hpp"

namespace qot {

// The collection of qubit subsets whose reduced density matrices a schedule
// must determine. Qubit indices are 0-based everywhere.
struct TargetSpec {
  int n = 0;
  std::vector<std::vector<int>> subsets;  // each sorted, unique entries
  std::string topology_tag;
};

// Throws std::invalid_argument on malformed specs (n < 2, unsorted or
// out-of-range subsets, duplicates).
void validate_spec(const TargetSpec& spec);

// All C(n,k) k-subsets in lexicographic order.
TargetSpec all_k_subsets(int n, int k);

// The n-k+1 contiguous windows {i,...,i+k-1} of a 1-D chain.
TargetSpec chain_windows(int n, int k);

// Horizontal and vertical nearest-neighbor pairs of a rows x cols grid with
// row-major qubit indexing.
TargetSpec lattice_edges(int rows, int cols);

// Union of the parts' subsets with duplicates removed; subsets strictly
// contained in another retained subset are dropped, since covering the
// superset covers them. All parts must share the same n.
TargetSpec mixed_spec(const std::vector<TargetSpec>& parts);

// FNV-1a digest of (n, subsets) as a 16-char hex string. The free-form
// topology_tag is provenance, not content, and is excluded.
std::string target_hash(const TargetSpec& spec);

// Every full-weight axis assignment on every subset of a TargetSpec: the set
// of local observables a schedule must be qwc-compatible with. Covering these
// covers every identity-containing marginal as well.
struct CoverUniverse {
  int n = 0;
  std::vector<LocalObservable> elements;
  std::map<LocalObservable, std::size_t> element_index;

  // Mirror of the spec's subsets, plus per-subset element ids indexed by the
  // assignment code (base-3, lowest qubit = most significant digit).
  std::vector<std::vector<int>> subsets;
  std::vector<std::vector<std::size_t>> subset_elements;

  std::size_t size() const { return elements.size(); }
};

CoverUniverse expand_universe(const TargetSpec& spec);

}  // namespace qot
