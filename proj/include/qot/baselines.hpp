#pragma once

#include "qot/cover.hpp"

namespace qot {

// One Z-padded setting per universe element, duplicates removed. The
// individual-measurement strategy every overlapping scheme is compared
// against.
Schedule naive_per_rdm(const TargetSpec& spec);

// 3 uniform settings plus, per bit position t < ceil(log2 n), the six
// settings splitting qubits by bit t into an ordered pair of distinct axes.
// Total 3 + 6*ceil(log2 n); covers every 2-RDM.
Schedule binary_hash_pairs(int n);

// 3 uniform settings plus, per trit position t < ceil(log3 n), the six
// settings assigning a permutation of (X,Y,Z) by base-3 digit t. Total
// 3 + 6*ceil(log3 n); covers every 2-RDM.
Schedule ternary_hash_pairs(int n);

}  // namespace qot
