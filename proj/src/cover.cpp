#include "qot/cover.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <limits>
#include <random>
#include <thread>
#include <unordered_map>

#include "qot/bitset.hpp"

namespace qot {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t pow3(int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= 3;
  return r;
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QOT_WORKERS")) {
    int w = std::atoi(env);
    if (w >= 1) return w;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return std::clamp<int>(static_cast<int>(hw), 1, 16);
}

// Candidate settings are indexed 0..3^n-1 in lexicographic string order
// (qubit 0 is the most significant base-3 digit).
Setting candidate_setting(std::uint64_t idx, int n) {
  std::vector<Axis> axes(n);
  for (int q = n - 1; q >= 0; --q) {
    axes[q] = static_cast<Axis>(idx % 3);
    idx /= 3;
  }
  return Setting(std::move(axes));
}

// Footprint of one candidate over the universe: each subset contributes the
// single assignment the setting restricts to.
Bitset candidate_footprint(const Setting& g, const CoverUniverse& uni) {
  Bitset fp(uni.size());
  for (std::size_t j = 0; j < uni.subsets.size(); ++j) {
    const auto& s = uni.subsets[j];
    std::size_t code = 0;
    for (int q : s) code = code * 3 + static_cast<std::size_t>(g.axes[q]);
    fp.set(uni.subset_elements[j][code]);
  }
  return fp;
}

void check_candidate_budget(const CoverInstance& inst) {
  if (inst.universe.size() == 0) throw std::invalid_argument("empty cover universe");
  const int n = inst.universe.n;
  if (n > 39) throw CapExceeded("candidate space 3^" + std::to_string(n) + " cannot be enumerated");
  const std::uint64_t cands = pow3(n);
  if (cands > inst.candidate_cap)
    throw CapExceeded("candidate space 3^" + std::to_string(n) + " = " + std::to_string(cands) +
                      " exceeds cap " + std::to_string(inst.candidate_cap));
  // Footprint storage would exceed 256 MiB.
  if (cands > (std::uint64_t{1} << 31) / inst.universe.size())
    throw CapExceeded("candidate footprints too large to enumerate for this universe");
}

bool elements_conflict(const LocalObservable& a, const LocalObservable& b) {
  auto ia = a.terms.begin();
  auto ib = b.terms.begin();
  while (ia != a.terms.end() && ib != b.terms.end()) {
    if (ia->qubit < ib->qubit) {
      ++ia;
    } else if (ib->qubit < ia->qubit) {
      ++ib;
    } else {
      if (ia->axis != ib->axis) return true;
      ++ia;
      ++ib;
    }
  }
  return false;
}

TargetSpec spec_of(const CoverUniverse& uni) {
  TargetSpec spec;
  spec.n = uni.n;
  spec.subsets = uni.subsets;
  return spec;
}

void assert_verified(const Schedule& sched, const CoverUniverse& uni) {
  CoverReport rep = verify_cover(sched, uni);
  if (!rep.covered)
    throw std::logic_error("constructed schedule fails verification (" +
                           std::to_string(rep.uncovered_elements.size()) + " uncovered)");
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::Exact: return "exact";
    case Method::GreedyDensity: return "greedy-density";
    case Method::GreedyEnum: return "greedy-enum";
    case Method::ChainPeriodic: return "chain-periodic";
    case Method::BipartiteColoring: return "bipartite-coloring";
    case Method::BaselineBinary: return "baseline-binary";
    case Method::BaselineTernary: return "baseline-ternary";
    case Method::Naive: return "naive";
  }
  throw std::logic_error("unreachable");
}

Method method_from_name(const std::string& name) {
  for (Method m : {Method::Exact, Method::GreedyDensity, Method::GreedyEnum,
                   Method::ChainPeriodic, Method::BipartiteColoring, Method::BaselineBinary,
                   Method::BaselineTernary, Method::Naive})
    if (method_name(m) == name) return m;
  throw std::invalid_argument("unknown method: " + name);
}

std::string optimality_name(Optimality o) {
  switch (o) {
    case Optimality::Proven: return "proven";
    case Optimality::Unknown: return "unknown";
    case Optimality::NotApplicable: return "not-applicable";
  }
  throw std::logic_error("unreachable");
}

Optimality optimality_from_name(const std::string& name) {
  for (Optimality o : {Optimality::Proven, Optimality::Unknown, Optimality::NotApplicable})
    if (optimality_name(o) == name) return o;
  throw std::invalid_argument("unknown optimality flag: " + name);
}

void validate_schedule(const Schedule& sched) {
  if (sched.settings.empty()) throw std::invalid_argument("schedule has no settings");
  std::vector<std::string> strs;
  strs.reserve(sched.settings.size());
  for (const Setting& g : sched.settings) {
    if (g.size() != sched.n)
      throw std::invalid_argument("setting length " + std::to_string(g.size()) +
                                  " does not match n = " + std::to_string(sched.n));
    strs.push_back(g.str());
  }
  std::sort(strs.begin(), strs.end());
  if (std::adjacent_find(strs.begin(), strs.end()) != strs.end())
    throw std::invalid_argument("duplicate setting in schedule");
}

CoverReport verify_cover(const Schedule& sched, const CoverUniverse& universe) {
  if (sched.n != universe.n)
    throw std::invalid_argument("schedule n does not match universe n");
  CoverReport rep;
  for (std::size_t e = 0; e < universe.size(); ++e) {
    bool hit = false;
    for (const Setting& g : sched.settings) {
      if (qwc_compatible(universe.elements[e], g)) {
        hit = true;
        break;
      }
    }
    if (!hit) rep.uncovered_elements.push_back(e);
  }
  rep.covered = rep.uncovered_elements.empty();
  return rep;
}

int lower_bound(const CoverUniverse& universe) {
  if (universe.size() == 0) return 0;
  std::size_t max_m = 0;
  for (const auto& s : universe.subsets) max_m = std::max(max_m, s.size());
  std::uint64_t base = pow3(static_cast<int>(max_m));

  // Greedy packing of pairwise co-incompatible elements in universe order.
  std::vector<std::size_t> chosen;
  for (std::size_t e = 0; e < universe.size(); ++e) {
    bool ok = true;
    for (std::size_t c : chosen) {
      if (!elements_conflict(universe.elements[e], universe.elements[c])) {
        ok = false;
        break;
      }
    }
    if (ok) chosen.push_back(e);
  }
  return static_cast<int>(std::max<std::uint64_t>(base, chosen.size()));
}

// ---------------------------------------------------------------------------
// greedy_density

namespace {

struct GreedyResult {
  std::vector<Setting> settings;
  std::vector<std::string> strings;

  bool better_than(const GreedyResult& o) const {
    if (settings.size() != o.settings.size()) return settings.size() < o.settings.size();
    return strings < o.strings;
  }
};

struct DensityContext {
  const CoverUniverse* uni;
  int n;
  int max_m;
  // Per qubit: (element id, required axis) incidences.
  std::vector<std::vector<std::pair<std::size_t, Axis>>> incident;
  std::vector<std::uint64_t> weight_by_remaining;  // 3^(max_m - u)
};

DensityContext make_density_context(const CoverUniverse& uni) {
  DensityContext ctx;
  ctx.uni = &uni;
  ctx.n = uni.n;
  ctx.incident.resize(uni.n);
  int max_m = 1;
  for (const auto& s : uni.subsets) max_m = std::max(max_m, static_cast<int>(s.size()));
  ctx.max_m = max_m;
  for (std::size_t e = 0; e < uni.size(); ++e)
    for (const PauliTerm& t : uni.elements[e].terms)
      ctx.incident[t.qubit].push_back({e, t.axis});
  ctx.weight_by_remaining.resize(max_m + 1);
  for (int u = 0; u <= max_m; ++u) ctx.weight_by_remaining[u] = pow3(max_m - u);
  return ctx;
}

// One full schedule construction for a fixed qubit-priority key.
GreedyResult run_density_once(const DensityContext& ctx, const std::vector<int>& qubit_key) {
  const CoverUniverse& uni = *ctx.uni;
  const std::size_t U = uni.size();
  std::vector<char> covered(U, 0);
  std::size_t remaining = U;
  std::vector<int> dead_stamp(U, -1);
  std::vector<int> unassigned(U, 0);
  GreedyResult res;

  int round = 0;
  while (remaining > 0) {
    // Degree of each qubit among uncovered elements.
    std::vector<int> degree(ctx.n, 0);
    for (std::size_t e = 0; e < U; ++e) {
      if (covered[e]) continue;
      unassigned[e] = uni.elements[e].weight();
      for (const PauliTerm& t : uni.elements[e].terms) ++degree[t.qubit];
    }
    std::vector<int> order(ctx.n);
    for (int q = 0; q < ctx.n; ++q) order[q] = q;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (degree[a] != degree[b]) return degree[a] > degree[b];
      return qubit_key[a] < qubit_key[b];
    });

    std::vector<Axis> axes(ctx.n, Axis::X);
    for (int q : order) {
      std::uint64_t score[3] = {0, 0, 0};
      for (const auto& [e, a] : ctx.incident[q]) {
        if (covered[e] || dead_stamp[e] == round) continue;
        score[static_cast<int>(a)] += ctx.weight_by_remaining[unassigned[e] - 1];
      }
      int best = 0;
      if (score[1] > score[best]) best = 1;
      if (score[2] > score[best]) best = 2;
      axes[q] = static_cast<Axis>(best);
      for (const auto& [e, a] : ctx.incident[q]) {
        if (covered[e] || dead_stamp[e] == round) continue;
        if (a != axes[q])
          dead_stamp[e] = round;
        else
          --unassigned[e];
      }
    }

    std::size_t newly = 0;
    for (std::size_t e = 0; e < U; ++e) {
      if (covered[e] || dead_stamp[e] == round) continue;
      assert(unassigned[e] == 0);
      covered[e] = 1;
      ++newly;
    }
    assert(newly > 0);
    remaining -= newly;
    Setting g(std::move(axes));
    res.strings.push_back(g.str());
    res.settings.push_back(std::move(g));
    ++round;
  }
  return res;
}

std::vector<int> restart_qubit_key(int n, std::int64_t seed, int restart) {
  std::vector<int> perm(n);
  for (int q = 0; q < n; ++q) perm[q] = q;
  if (restart > 0) {
    std::mt19937_64 rng(splitmix64(static_cast<std::uint64_t>(seed) ^
                                   (kGolden * static_cast<std::uint64_t>(restart))));
    // Hand-rolled Fisher-Yates: std::shuffle is not cross-platform stable.
    for (int i = n - 1; i >= 1; --i) {
      int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
      std::swap(perm[i], perm[j]);
    }
  }
  std::vector<int> key(n);
  for (int i = 0; i < n; ++i) key[perm[i]] = i;
  return key;
}

}  // namespace

Schedule greedy_density(const CoverInstance& instance, std::int64_t seed, int restarts,
                        int workers) {
  if (restarts < 1) throw std::invalid_argument("greedy_density needs restarts >= 1");
  if (instance.universe.size() == 0) throw std::invalid_argument("empty cover universe");
  const CoverUniverse& uni = instance.universe;
  DensityContext ctx = make_density_context(uni);

  std::vector<GreedyResult> results(restarts);
  const int nworkers = std::min(resolve_workers(workers), restarts);
  if (nworkers <= 1) {
    for (int r = 0; r < restarts; ++r)
      results[r] = run_density_once(ctx, restart_qubit_key(uni.n, seed, r));
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(nworkers);
    for (int w = 0; w < nworkers; ++w) {
      threads.emplace_back([&, w]() {
        try {
          for (int r = w; r < restarts; r += nworkers)
            results[r] = run_density_once(ctx, restart_qubit_key(uni.n, seed, r));
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

  // Deterministic reduction in restart order: smallest schedule, then
  // lexicographic setting list. Independent of the worker partition.
  int best = 0;
  for (int r = 1; r < restarts; ++r)
    if (results[r].better_than(results[best])) best = r;

  Schedule sched;
  sched.n = uni.n;
  sched.settings = std::move(results[best].settings);
  sched.method = Method::GreedyDensity;
  sched.seed = seed;
  sched.optimal = Optimality::Unknown;
  sched.target_hash = target_hash(spec_of(uni));
  validate_schedule(sched);
  assert_verified(sched, uni);
  return sched;
}

// ---------------------------------------------------------------------------
// greedy_enum and exact_bnb

namespace {

std::vector<Bitset> build_footprints(const CoverUniverse& uni, std::uint64_t count) {
  std::vector<Bitset> fps;
  fps.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i)
    fps.push_back(candidate_footprint(candidate_setting(i, uni.n), uni));
  return fps;
}

// Classic greedy over an explicit candidate list; ids must be in lexicographic
// setting order so that the first maximum is the lexicographic tie-winner.
std::vector<std::size_t> greedy_over(const std::vector<Bitset>& fps, std::size_t universe_size) {
  Bitset uncovered(universe_size);
  uncovered.set_all();
  std::vector<std::size_t> picks;
  while (uncovered.any()) {
    std::size_t best = fps.size();
    std::size_t best_count = 0;
    for (std::size_t i = 0; i < fps.size(); ++i) {
      std::size_t c = fps[i].and_count(uncovered);
      if (c > best_count) {
        best_count = c;
        best = i;
      }
    }
    assert(best < fps.size());
    picks.push_back(best);
    uncovered.subtract(fps[best]);
  }
  return picks;
}

struct BnbState {
  const CoverUniverse* uni;
  std::vector<std::uint64_t> cand_idx;  // original candidate indices, ascending
  std::vector<Bitset> fps;              // footprints, parallel to cand_idx
  std::vector<std::vector<std::size_t>> covers_of;
  std::vector<std::size_t> cover_count;
  std::vector<Bitset> subset_masks;
  std::vector<Bitset> coincompat;  // empty when universe too large
  std::size_t max_cov = 1;

  std::vector<std::size_t> best;
  std::size_t best_size = 0;
  std::vector<std::size_t> chosen;
  long root_break_child = -1;

  std::chrono::steady_clock::time_point deadline;
  std::uint64_t nodes = 0;
  bool timed_out = false;

  int bound(const Bitset& uncovered) const {
    const std::size_t unc = uncovered.count();
    std::size_t b = (unc + max_cov - 1) / max_cov;
    for (const Bitset& mask : subset_masks) b = std::max(b, uncovered.and_count(mask));
    if (!coincompat.empty()) {
      Bitset avail = uncovered;
      std::size_t pack = 0;
      while (avail.any()) {
        std::size_t e = avail.find_first();
        ++pack;
        avail &= coincompat[e];
      }
      b = std::max(b, pack);
    }
    return static_cast<int>(b);
  }

  void dfs(const Bitset& uncovered, int depth) {
    if (timed_out) return;
    if ((++nodes & 2047) == 0 && std::chrono::steady_clock::now() > deadline) {
      timed_out = true;
      return;
    }
    if (uncovered.none()) {
      if (chosen.size() < best_size) {
        best = chosen;
        best_size = chosen.size();
      }
      return;
    }
    if (chosen.size() + 1 >= best_size) return;
    if (chosen.size() + static_cast<std::size_t>(bound(uncovered)) >= best_size) return;

    // Branch on the uncovered element with the fewest covering candidates.
    std::size_t elem = uncovered.size();
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (std::size_t e = uncovered.find_first(); e < uncovered.size(); ++e) {
      if (!uncovered.test(e)) continue;
      if (cover_count[e] < fewest) {
        fewest = cover_count[e];
        elem = e;
      }
    }

    std::vector<std::pair<std::size_t, std::size_t>> children;  // (new coverage, cand)
    if (depth == 0 && root_break_child >= 0) {
      children.push_back({0, static_cast<std::size_t>(root_break_child)});
    } else {
      children.reserve(covers_of[elem].size());
      for (std::size_t c : covers_of[elem]) children.push_back({fps[c].and_count(uncovered), c});
      std::sort(children.begin(), children.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
      });
    }

    for (const auto& [_, c] : children) {
      chosen.push_back(c);
      Bitset next = uncovered;
      next.subtract(fps[c]);
      dfs(next, depth + 1);
      chosen.pop_back();
      if (timed_out) return;
    }
  }
};

constexpr std::size_t kPackingBitsetLimit = 4096;

}  // namespace

Schedule greedy_enum(const CoverInstance& instance) {
  check_candidate_budget(instance);
  const CoverUniverse& uni = instance.universe;
  const std::uint64_t count = pow3(uni.n);
  std::vector<Bitset> fps = build_footprints(uni, count);
  std::vector<std::size_t> picks = greedy_over(fps, uni.size());

  Schedule sched;
  sched.n = uni.n;
  for (std::size_t i : picks) sched.settings.push_back(candidate_setting(i, uni.n));
  sched.method = Method::GreedyEnum;
  sched.optimal = Optimality::Unknown;
  sched.target_hash = target_hash(spec_of(uni));
  validate_schedule(sched);
  assert_verified(sched, uni);
  return sched;
}

Schedule exact_bnb(const CoverInstance& instance) {
  check_candidate_budget(instance);
  const CoverUniverse& uni = instance.universe;
  const std::size_t U = uni.size();
  const std::uint64_t count = pow3(uni.n);
  std::vector<Bitset> all_fps = build_footprints(uni, count);

  // Merge candidates with identical coverage footprints, keeping the
  // lexicographically smallest representative.
  BnbState st;
  st.uni = &uni;
  {
    std::unordered_map<Bitset, std::size_t, BitsetHash> seen;
    for (std::uint64_t i = 0; i < count; ++i) {
      if (all_fps[i].none()) continue;
      if (seen.emplace(all_fps[i], st.cand_idx.size()).second) {
        st.cand_idx.push_back(i);
        st.fps.push_back(std::move(all_fps[i]));
      }
    }
  }
  all_fps.clear();
  all_fps.shrink_to_fit();

  st.covers_of.resize(U);
  st.cover_count.assign(U, 0);
  for (std::size_t c = 0; c < st.fps.size(); ++c) {
    st.max_cov = std::max(st.max_cov, st.fps[c].count());
    for (std::size_t e = 0; e < U; ++e)
      if (st.fps[c].test(e)) st.covers_of[e].push_back(c);
  }
  for (std::size_t e = 0; e < U; ++e) st.cover_count[e] = st.covers_of[e].size();

  for (std::size_t j = 0; j < uni.subsets.size(); ++j) {
    Bitset mask(U);
    for (std::size_t id : uni.subset_elements[j]) mask.set(id);
    st.subset_masks.push_back(std::move(mask));
  }
  if (U <= kPackingBitsetLimit) {
    st.coincompat.assign(U, Bitset(U));
    for (std::size_t a = 0; a < U; ++a)
      for (std::size_t b = a + 1; b < U; ++b)
        if (elements_conflict(uni.elements[a], uni.elements[b])) {
          st.coincompat[a].set(b);
          st.coincompat[b].set(a);
        }
  }

  // Incumbent from the classic greedy over the deduplicated candidates; same
  // result as greedy_enum since merged duplicates tie on coverage and the
  // lexicographically smallest wins.
  st.best = greedy_over(st.fps, U);
  st.best_size = st.best.size();

  // Root symmetry reduction: per-qubit axis relabelings outside the branch
  // element's support map the instance to itself and act transitively on the
  // candidates covering it, so a single canonical child (support axes padded
  // with X) suffices at the root.
  {
    std::size_t elem = 0;
    for (std::size_t e = 1; e < U; ++e)
      if (st.cover_count[e] < st.cover_count[elem]) elem = e;
    std::uint64_t canon = 0;
    Setting padded(std::vector<Axis>(uni.n, Axis::X));
    for (const PauliTerm& t : uni.elements[elem].terms) padded.axes[t.qubit] = t.axis;
    for (int q = 0; q < uni.n; ++q) canon = canon * 3 + static_cast<std::uint64_t>(padded.axes[q]);
    Bitset canon_fp = candidate_footprint(candidate_setting(canon, uni.n), uni);
    for (std::size_t c = 0; c < st.fps.size(); ++c)
      if (st.fps[c] == canon_fp) {
        st.root_break_child = static_cast<long>(c);
        break;
      }
    // Only valid when the root branch element is the canonical one.
    bool matches = st.root_break_child >= 0 && st.fps[st.root_break_child].test(elem);
    if (!matches) st.root_break_child = -1;
  }

  st.deadline = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(instance.time_limit_seconds));
  Bitset uncovered(U);
  uncovered.set_all();
  st.dfs(uncovered, 0);

  Schedule sched;
  sched.n = uni.n;
  for (std::size_t c : st.best) sched.settings.push_back(candidate_setting(st.cand_idx[c], uni.n));
  std::sort(sched.settings.begin(), sched.settings.end(),
            [](const Setting& a, const Setting& b) { return a.axes < b.axes; });
  sched.method = Method::Exact;
  sched.optimal = st.timed_out ? Optimality::Unknown : Optimality::Proven;
  sched.target_hash = target_hash(spec_of(uni));
  validate_schedule(sched);
  assert_verified(sched, uni);
  return sched;
}

Schedule chain_periodic(int n, int k) {
  TargetSpec spec = chain_windows(n, k);
  CoverUniverse uni = expand_universe(spec);
  Schedule sched;
  sched.n = n;
  const std::uint64_t count = pow3(k);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<Axis> pattern(k);
    std::uint64_t rem = code;
    for (int j = k - 1; j >= 0; --j) {
      pattern[j] = static_cast<Axis>(rem % 3);
      rem /= 3;
    }
    std::vector<Axis> axes(n);
    for (int q = 0; q < n; ++q) axes[q] = pattern[q % k];
    sched.settings.push_back(Setting(std::move(axes)));
  }
  sched.method = Method::ChainPeriodic;
  sched.optimal = Optimality::Proven;  // size 3^k matches the lower bound
  sched.target_hash = target_hash(spec);
  validate_schedule(sched);
  assert_verified(sched, uni);
  return sched;
}

Schedule bipartite_coloring(const TargetSpec& spec) {
  validate_spec(spec);
  if (spec.subsets.empty()) throw std::invalid_argument("bipartite_coloring needs at least one pair");
  for (const auto& s : spec.subsets)
    if (s.size() != 2)
      throw std::invalid_argument("bipartite_coloring requires all subsets of size 2");

  std::vector<std::vector<int>> adj(spec.n);
  for (const auto& s : spec.subsets) {
    adj[s[0]].push_back(s[1]);
    adj[s[1]].push_back(s[0]);
  }
  std::vector<int> color(spec.n, -1);
  std::vector<int> queue;
  for (int start = 0; start < spec.n; ++start) {
    if (color[start] != -1) continue;
    color[start] = 0;
    queue.assign(1, start);
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      for (int w : adj[v]) {
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          queue.push_back(w);
        } else if (color[w] == color[v]) {
          throw NonBipartiteError("pair graph contains an odd cycle; use greedy or exact instead");
        }
      }
    }
  }

  Schedule sched;
  sched.n = spec.n;
  for (Axis p : kAxes) {
    for (Axis q : kAxes) {
      std::vector<Axis> axes(spec.n);
      for (int v = 0; v < spec.n; ++v) axes[v] = color[v] == 1 ? q : p;
      sched.settings.push_back(Setting(std::move(axes)));
    }
  }
  sched.method = Method::BipartiteColoring;
  sched.optimal = Optimality::Proven;  // 9 = 3^2 lower bound
  sched.target_hash = target_hash(spec);
  validate_schedule(sched);
  assert_verified(sched, expand_universe(spec));
  return sched;
}

}  // namespace qot
