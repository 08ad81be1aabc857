#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chief_series.hpp"
#include "labeling.hpp"
#include "parallel.hpp"
#include "subgroup_lattice.hpp"

namespace sgel {

using IntervalPair = std::pair<NodeId, NodeId>;

inline constexpr std::size_t exhaustive_interval_limit = 64;
inline constexpr std::size_t sampled_interval_count = 500;
inline constexpr std::uint64_t interval_sample_seed = 0x5EED;

/// Intervals [W, Z] with W < Z in `view` to be checked. Lattices of at most
/// 64 nodes get every interval; larger ones get every [W, 1] and [0, Z]
/// plus 500 pseudo-random intervals drawn with a fixed seed. Sorted.
inline std::vector<IntervalPair> checked_intervals(const OrientedLattice &view) {
  const auto &L = view.lattice();
  std::vector<IntervalPair> all;
  for (NodeId a = 0; a < L.size(); ++a)
    for (NodeId b = 0; b < L.size(); ++b)
      if (view.less(a, b))
        all.emplace_back(a, b);
  if (L.size() <= exhaustive_interval_limit)
    return all;

  std::set<IntervalPair> picked;
  for (const auto &p : all)
    if (p.first == view.bottom() || p.second == view.top())
      picked.insert(p);
  std::mt19937_64 rng(interval_sample_seed);
  for (std::size_t t = 0; t < sampled_interval_count; ++t)
    picked.insert(all[rng() % all.size()]);
  return {picked.begin(), picked.end()};
}

struct CheckResult {
  bool pass = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;

  void fail(std::string why) {
    pass = false;
    if (failures.size() < 20)
      failures.push_back(std::move(why));
  }
};

inline std::string interval_name(NodeId lo, NodeId hi) {
  return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
}

struct ELIntervalRecord {
  NodeId lo = 0, hi = 0;
  std::size_t chains = 0;
  std::size_t increasing = 0;
  std::size_t lex_first = 0;  // enumeration index of the lexicographically least chain
  bool pass = false;
};

struct ELReport {
  std::vector<ELIntervalRecord> records;
  bool pass = true;
  double milliseconds = 0;

  std::size_t failures() const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [](const auto &r) { return !r.pass; }));
  }
};

inline bool weakly_increasing(const std::vector<EdgeLabel> &labels) {
  return std::is_sorted(labels.begin(), labels.end());
}

inline ELIntervalRecord check_el_interval(const LabeledLattice &labeled, NodeId lo, NodeId hi) {
  ELIntervalRecord r{lo, hi};
  std::vector<EdgeLabel> best;
  std::size_t best_ties = 0, increasing_index = 0;
  for_each_maximal_chain(labeled.view(), lo, hi, [&](const Chain &chain) {
    auto labels = labeled.labels_along(chain);
    if (weakly_increasing(labels)) {
      ++r.increasing;
      increasing_index = r.chains;
    }
    if (r.chains == 0 || labels < best) {
      best = std::move(labels);
      best_ties = 1;
      r.lex_first = r.chains;
    } else if (labels == best) {
      ++best_ties;
    }
    ++r.chains;
  });
  r.pass = r.increasing == 1 && best_ties == 1 && r.lex_first == increasing_index;
  return r;
}

/// On every checked interval: exactly one maximal chain has weakly
/// increasing labels, and it is strictly lexicographically first.
inline ELReport check_el(const LabeledLattice &labeled, std::span<const IntervalPair> intervals,
                         std::size_t threads = 1) {
  auto start = std::chrono::steady_clock::now();
  ELReport report;
  report.records.resize(intervals.size());
  parallel_for(intervals.size(), threads, [&](std::size_t t) {
    report.records[t] = check_el_interval(labeled, intervals[t].first, intervals[t].second);
  });
  report.pass = report.failures() == 0;
  report.milliseconds =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

inline ELReport check_el(const LabeledLattice &labeled, std::size_t threads = 1) {
  auto intervals = checked_intervals(labeled.view());
  return check_el(labeled, intervals, threads);
}

/// A chain listed from the trivial subgroup up to G, whatever the
/// orientation it was produced in.
inline Chain ascending(Chain chain, Orientation orientation) {
  if (orientation == Orientation::dual)
    std::reverse(chain.begin(), chain.end());
  return chain;
}

/// Maximal chains of the whole lattice whose labels strictly decrease,
/// listed from the bottom of the labeling orientation.
inline std::vector<Chain> descending_chains(const LabeledLattice &labeled) {
  std::vector<Chain> out;
  const auto &view = labeled.view();
  for_each_maximal_chain(view, view.bottom(), view.top(), [&](const Chain &chain) {
    auto labels = labeled.labels_along(chain);
    if (std::adjacent_find(labels.begin(), labels.end(), std::less_equal<>{}) == labels.end())
      out.push_back(chain);
  });
  return out;
}

/// Chains 1 = H_k < ... < H_0 = G with H_i a complement to N_i, listed
/// from H_k up to H_0. Found by descending search from G.
inline std::vector<Chain> chains_of_complements(const SubgroupLattice &L,
                                                const ChiefSeries &series) {
  const Group &G = L.group();
  const std::size_t k = series.length();
  std::vector<Chain> out;
  std::vector<NodeId> path{L.top()};
  auto is_complement = [&](NodeId H, NodeId N) {
    return L.meet(H, N) == L.bottom() &&
           product_set(G, L.node(H), L.node(N)).count() == G.order();
  };
  auto search = [&](auto &self, std::size_t i) -> void {
    if (i > k) {
      out.emplace_back(path.rbegin(), path.rend());
      return;
    }
    const NodeSet &below = L.lower_set(path.back());
    for (auto h = below.find_first(); h != NodeSet::npos; h = below.find_next(h)) {
      auto H = static_cast<NodeId>(h);
      if (H == path.back() || !is_complement(H, series[i]))
        continue;
      path.push_back(H);
      self(self, i + 1);
      path.pop_back();
    }
  };
  if (k == 0)
    out.push_back({L.top()});
  else
    search(search, 1);
  std::sort(out.begin(), out.end());
  return out;
}

struct DescentVerdict {
  bool pass = true;
  std::vector<Chain> descending;   // ascending form, sorted
  std::vector<Chain> complements;  // sorted
  bool complement_labels_ok = true;
};

/// Descending chains equal the chains of complements as sets of subgroup
/// chains, and every chain of complements carries coarse labels
/// k-1, ..., 1, 0.
inline DescentVerdict check_descending_equals_complements(const LabeledLattice &labeled) {
  DescentVerdict v;
  for (auto &c : descending_chains(labeled))
    v.descending.push_back(ascending(std::move(c), labeled.orientation()));
  std::sort(v.descending.begin(), v.descending.end());
  v.complements = chains_of_complements(labeled.lattice(), labeled.series());

  const std::size_t k = labeled.series().length();
  for (const auto &c : v.complements) {
    Chain oriented = ascending(c, labeled.orientation());
    auto labels = labeled.labels_along(oriented);
    for (std::size_t t = 0; t < labels.size(); ++t)
      if (labels[t].coarse != k - 1 - t)
        v.complement_labels_ok = false;
  }
  v.pass = v.descending == v.complements && v.complement_labels_ok;
  return v;
}

struct MoebiusVerdict {
  long long mu = 0;
  std::size_t k = 0;
  std::size_t complements = 0;
  long long signed_descending = 0;
  bool pass = false;
};

/// mu(0, 1) = (-1)^k * #chains of complements, with mu from the Moebius
/// recursion and also compared with the signed count of descending chains.
inline MoebiusVerdict check_moebius_identity(const SubgroupLattice &L, const LabeledLattice &labeled,
                                      const ChiefSeries &series) {
  MoebiusVerdict v;
  v.mu = moebius(L)[L.top()];
  v.k = series.length();
  v.complements = chains_of_complements(L, series).size();
  for (const auto &c : descending_chains(labeled))
    v.signed_descending += (c.size() - 1) % 2 == 0 ? 1 : -1;
  long long expected = (v.k % 2 == 0 ? 1 : -1) * static_cast<long long>(v.complements);
  v.pass = v.mu == expected && v.mu == v.signed_descending;
  return v;
}

namespace detail {

inline std::vector<NodeId> oriented_interval(const OrientedLattice &view, NodeId lo, NodeId hi) {
  std::vector<NodeId> out;
  NodeSet between = view.upper_set(lo) & view.lower_set(hi);
  for (auto x = between.find_first(); x != NodeSet::npos; x = between.find_next(x))
    out.push_back(static_cast<NodeId>(x));
  return out;
}

/// Checks that projecting [a, b] (every edge weakly separated by factor i)
/// is an order isomorphism onto [rho(a), rho(b)] of its section, with phi
/// inverting it on both sides.
inline void check_segment(const LabeledLattice &labeled, std::size_t i, NodeId a, NodeId b,
                          CheckResult &out) {
  const auto &view = labeled.view();
  const auto &L = labeled.lattice();
  auto chain = labeled.oriented_series();
  const std::string where = interval_name(a, b) + " factor " + std::to_string(i);
  ++out.checked;

  auto segment = oriented_interval(view, a, b);
  for (auto y : segment)
    for (auto z : view.up_covers(y))
      if (view.leq(z, b) && labeled.label(y, z).coarse != i)
        out.fail(where + ": edge " + interval_name(y, z) + " has another coarse label");

  Sublattice section = normalized_section(L, chain[i], chain[i + 1], a);
  NodeId ra = rho(view, chain, i, a), rb = rho(view, chain, i, b);
  std::vector<NodeId> target;
  for (auto t : section.members())
    if (view.leq(ra, t) && view.leq(t, rb))
      target.push_back(t);

  std::vector<NodeId> image;
  for (auto s : segment)
    image.push_back(rho(view, chain, i, s));
  auto sorted_image = image;
  std::sort(sorted_image.begin(), sorted_image.end());
  if (std::adjacent_find(sorted_image.begin(), sorted_image.end()) != sorted_image.end())
    out.fail(where + ": projection is not injective");
  if (sorted_image != target)
    out.fail(where + ": projection image differs from the section interval");

  for (std::size_t p = 0; p < segment.size(); ++p)
    for (std::size_t q = 0; q < segment.size(); ++q)
      if (view.leq(segment[p], segment[q]) != view.leq(image[p], image[q]))
        out.fail(where + ": projection does not preserve and reflect order");

  try {
    for (auto s : segment)
      if (phi(view, rho(view, chain, i, s), a, b) != s)
        out.fail(where + ": phi(rho(H)) != H for H = " + std::to_string(s));
    for (auto t : target)
      if (rho(view, chain, i, phi(view, t, a, b)) != t)
        out.fail(where + ": rho(phi(N)) != N for N = " + std::to_string(t));
  } catch (const ConsistencyError &e) {
    out.fail(where + ": " + e.what());
  }
}

} // namespace detail

/// The projection isomorphism on every skeleton segment of every given
/// interval and on every labeled cover edge; for edges additionally that
/// both endpoints give the same section and the projection is a section
/// cover.
inline CheckResult check_projection_isomorphisms(const LabeledLattice &labeled,
                                                 std::span<const IntervalPair> intervals) {
  CheckResult out;
  const auto &view = labeled.view();
  const auto &L = labeled.lattice();
  auto chain = labeled.oriented_series();
  for (const auto &[w, z] : intervals) {
    auto c = skeleton_chain(view, chain, w, z);
    for (std::size_t j = 0; j < c.indices.size(); ++j)
      detail::check_segment(labeled, c.indices[j], c.nodes[j], c.nodes[j + 1], out);
  }
  for (const auto &e : labeled.edges()) {
    std::size_t i = e.label.coarse;
    const Section &sec = labeled.sections()[e.section];
    Sublattice upper = normalized_section(L, chain[i], chain[i + 1], e.to);
    if (!std::ranges::equal(upper.members(), sec.sublattice.members()))
      out.fail("edge " + interval_name(e.from, e.to) + ": endpoints give different sections");
    bool cover = view.is_dual() ? sec.sublattice.is_cover(e.rho_to, e.rho_from)
                                : sec.sublattice.is_cover(e.rho_from, e.rho_to);
    if (!cover)
      out.fail("edge " + interval_name(e.from, e.to) + ": projection is not a section cover");
    detail::check_segment(labeled, i, e.from, e.to, out);
  }
  return out;
}

inline CheckResult check_projection_isomorphisms(const LabeledLattice &labeled) {
  auto intervals = checked_intervals(labeled.view());
  return check_projection_isomorphisms(labeled, intervals);
}

/// Coarse-label structure of each interval: chains with weakly increasing
/// coarse labels, extensions of the skeleton chain, and chains tied for
/// coarse-lexicographically first are one and the same set; no chain uses
/// a coarse label below i(0).
inline CheckResult check_coarse_skeleton(const LabeledLattice &labeled,
                                         std::span<const IntervalPair> intervals) {
  CheckResult out;
  const auto &view = labeled.view();
  for (const auto &[w, z] : intervals) {
    ++out.checked;
    auto skeleton = skeleton_chain(view, labeled.oriented_series(), w, z);
    std::set<Chain> increasing, extensions, lex_first;
    std::vector<std::uint32_t> best;
    bool dipped = false;
    for_each_maximal_chain(view, w, z, [&](const Chain &chain) {
      std::vector<std::uint32_t> coarse;
      for (const auto &l : labeled.labels_along(chain))
        coarse.push_back(l.coarse);
      if (std::is_sorted(coarse.begin(), coarse.end()))
        increasing.insert(chain);
      if (std::ranges::all_of(skeleton.nodes, [&](NodeId c) {
            return std::find(chain.begin(), chain.end(), c) != chain.end();
          }))
        extensions.insert(chain);
      if (lex_first.empty() || coarse < best) {
        lex_first = {chain};
        best = coarse;
      } else if (coarse == best) {
        lex_first.insert(chain);
      }
      for (auto c : coarse)
        if (c < skeleton.indices.front())
          dipped = true;
    });
    if (increasing != extensions)
      out.fail(interval_name(w, z) + ": increasing chains differ from skeleton extensions");
    if (lex_first != extensions)
      out.fail(interval_name(w, z) + ": lexicographically first chains differ from extensions");
    if (dipped)
      out.fail(interval_name(w, z) + ": a chain uses a coarse label below i(0)");
  }
  return out;
}

/// The three characterizations of left modularity agree on every subgroup,
/// and every normal subgroup is left modular.
inline CheckResult check_left_modular_equivalence(const SubgroupLattice &L) {
  CheckResult out;
  for (NodeId x = 0; x < L.size(); ++x) {
    ++out.checked;
    auto v = left_modular_equivalents(L, x);
    if (!v.agree())
      out.fail("subgroup " + std::to_string(x) + ": characterizations disagree");
    if (is_normal(L.group(), L.node(x)) && !v.identity)
      out.fail("normal subgroup " + std::to_string(x) + " is not left modular");
  }
  return out;
}

} // namespace sgel
