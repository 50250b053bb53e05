#include <doctest.h>

#include <set>
#include <stdexcept>

#include "qot/baselines.hpp"

using namespace qot;

namespace {

int ceil_log2(int n) {
  int t = 0;
  while ((1LL << t) < n) ++t;
  return t;
}

int ceil_log3(int n) {
  int t = 0;
  long long p = 1;
  while (p < n) {
    p *= 3;
    ++t;
  }
  return t;
}

}  // namespace

TEST_CASE("hash-scheme setting counts match the closed forms up to n=64") {
  for (int n = 2; n <= 64; ++n) {
    CHECK(binary_hash_pairs(n).size() == 3 + 6 * ceil_log2(n));
    CHECK(ternary_hash_pairs(n).size() == 3 + 6 * ceil_log3(n));
  }
  CHECK(binary_hash_pairs(4).size() == 15);
  CHECK(binary_hash_pairs(8).size() == 21);
  CHECK(binary_hash_pairs(2).size() == 9);
  CHECK(ternary_hash_pairs(9).size() == 15);
  CHECK(ternary_hash_pairs(3).size() == 9);
  CHECK(ternary_hash_pairs(10).size() == 21);
}

TEST_CASE("hash schemes cover all pairs for n = 2..16") {
  for (int n = 2; n <= 16; ++n) {
    CoverUniverse uni = expand_universe(all_k_subsets(n, 2));
    CHECK(verify_cover(binary_hash_pairs(n), uni).covered);
    CHECK(verify_cover(ternary_hash_pairs(n), uni).covered);
  }
}

TEST_CASE("binary n=2 is exactly the single-pair optimum") {
  Schedule s = binary_hash_pairs(2);
  std::set<std::string> strs;
  for (const auto& g : s.settings) strs.insert(g.str());
  CHECK(strs.size() == 9);
}

TEST_CASE("baselines reject n < 2") {
  CHECK_THROWS_AS(binary_hash_pairs(1), std::invalid_argument);
  CHECK_THROWS_AS(ternary_hash_pairs(1), std::invalid_argument);
}

TEST_CASE("naive_per_rdm pads with Z and deduplicates") {
  // Sum of 3^|s| before dedup is the universe size.
  CHECK(expand_universe(all_k_subsets(4, 2)).size() == 54);

  TargetSpec single;
  single.n = 2;
  single.subsets = {{0, 1}};
  CHECK(naive_per_rdm(single).size() == 9);

  // Brute-force dedup oracle for chain(3,2): window {0,1} gives (a,b,Z),
  // window {1,2} gives (Z,a,b); they collide exactly on the three (Z,b,Z).
  std::set<std::string> padded;
  for (Axis a : kAxes)
    for (Axis b : kAxes) {
      padded.insert(std::string{axis_char(a), axis_char(b), 'Z'});
      padded.insert(std::string{'Z', axis_char(a), axis_char(b)});
    }
  CHECK(padded.size() == 15);
  Schedule chain = naive_per_rdm(chain_windows(3, 2));
  CHECK(chain.size() == 15);
  std::set<std::string> got;
  for (const auto& g : chain.settings) got.insert(g.str());
  CHECK(got == padded);
}

TEST_CASE("naive always verifies against its own spec") {
  for (const TargetSpec& spec :
       {all_k_subsets(5, 2), chain_windows(6, 3), lattice_edges(2, 3)}) {
    CHECK(verify_cover(naive_per_rdm(spec), expand_universe(spec)).covered);
  }
}
