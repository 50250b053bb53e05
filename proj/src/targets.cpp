#include "qot/targets.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace qot {

void validate_spec(const TargetSpec& spec) {
  if (spec.n < 2) throw std::invalid_argument("target spec needs n >= 2");
  std::set<std::vector<int>> seen;
  for (const auto& s : spec.subsets) {
    if (s.empty()) throw std::invalid_argument("empty subset in target spec");
    if (s.size() > 12)
      throw std::invalid_argument("subset of " + std::to_string(s.size()) +
                                  " qubits would expand to over 3^12 observables");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 0 || s[i] >= spec.n)
        throw std::invalid_argument("subset qubit out of range: " + std::to_string(s[i]));
      if (i > 0 && s[i] <= s[i - 1])
        throw std::invalid_argument("subsets must be sorted with unique entries");
    }
    if (!seen.insert(s).second) throw std::invalid_argument("duplicate subset in target spec");
  }
}

TargetSpec all_k_subsets(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("all_k_subsets requires 1 <= k <= n");
  TargetSpec spec;
  spec.n = n;
  spec.topology_tag = "all:" + std::to_string(k);
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    spec.subsets.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  validate_spec(spec);
  return spec;
}

TargetSpec chain_windows(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("chain_windows requires 1 <= k <= n");
  TargetSpec spec;
  spec.n = n;
  spec.topology_tag = "chain:" + std::to_string(k);
  for (int i = 0; i + k <= n; ++i) {
    std::vector<int> s(k);
    for (int j = 0; j < k; ++j) s[j] = i + j;
    spec.subsets.push_back(std::move(s));
  }
  validate_spec(spec);
  return spec;
}

TargetSpec lattice_edges(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("lattice needs positive dimensions");
  if (rows * cols < 2) throw std::invalid_argument("degenerate 1x1 grid has no edges");
  TargetSpec spec;
  spec.n = rows * cols;
  spec.topology_tag = "lattice:" + std::to_string(rows) + "x" + std::to_string(cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int q = r * cols + c;
      if (c + 1 < cols) spec.subsets.push_back({q, q + 1});
      if (r + 1 < rows) spec.subsets.push_back({q, q + cols});
    }
  }
  std::sort(spec.subsets.begin(), spec.subsets.end());
  validate_spec(spec);
  return spec;
}

TargetSpec mixed_spec(const std::vector<TargetSpec>& parts) {
  if (parts.empty()) throw std::invalid_argument("mixed_spec needs at least one part");
  const int n = parts.front().n;
  for (const auto& p : parts) {
    validate_spec(p);
    if (p.n != n) throw std::invalid_argument("mixed_spec parts must share the same n");
  }
  std::set<std::vector<int>> pool;
  for (const auto& p : parts)
    for (const auto& s : p.subsets) pool.insert(s);

  auto contained_in = [](const std::vector<int>& a, const std::vector<int>& b) {
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
  };

  TargetSpec spec;
  spec.n = n;
  spec.topology_tag = "mixed";
  for (const auto& s : pool) {
    bool dominated = false;
    for (const auto& t : pool) {
      if (contained_in(s, t)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) spec.subsets.push_back(s);
  }
  std::sort(spec.subsets.begin(), spec.subsets.end());
  validate_spec(spec);
  return spec;
}

std::string target_hash(const TargetSpec& spec) {
  std::uint64_t h = 1469598103934665603ULL;
  auto fnv = [&h](std::uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  fnv(static_cast<std::uint64_t>(spec.n));
  for (const auto& s : spec.subsets) {
    fnv(0xfffffffffffffffeULL);  // subset delimiter
    for (int q : s) fnv(static_cast<std::uint64_t>(q));
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

CoverUniverse expand_universe(const TargetSpec& spec) {
  validate_spec(spec);
  CoverUniverse uni;
  uni.n = spec.n;
  uni.subsets = spec.subsets;
  uni.subset_elements.reserve(spec.subsets.size());
  for (const auto& s : spec.subsets) {
    const int m = static_cast<int>(s.size());
    std::size_t count = 1;
    for (int i = 0; i < m; ++i) count *= 3;
    std::vector<std::size_t> ids(count);
    for (std::size_t code = 0; code < count; ++code) {
      std::vector<PauliTerm> terms(m);
      std::size_t rem = code;
      for (int j = m - 1; j >= 0; --j) {
        terms[j] = {s[j], static_cast<Axis>(rem % 3)};
        rem /= 3;
      }
      LocalObservable obs(std::move(terms));
      auto it = uni.element_index.find(obs);
      if (it == uni.element_index.end()) {
        std::size_t id = uni.elements.size();
        uni.element_index.emplace(obs, id);
        uni.elements.push_back(std::move(obs));
        ids[code] = id;
      } else {
        ids[code] = it->second;
      }
    }
    uni.subset_elements.push_back(std::move(ids));
  }
  return uni;
}

}  // namespace qot
