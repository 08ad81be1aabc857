#pragma once

#include <string>
#include <vector>

#include "errors.hpp"
#include "subgroup_lattice.hpp"

namespace sgel {

/// 1 = N_0 < N_1 < ... < N_k = G, stored as lattice node ids.
struct ChiefSeries {
  std::vector<NodeId> terms;

  std::size_t length() const { return terms.size() - 1; }
  NodeId operator[](std::size_t i) const { return terms[i]; }
  friend bool operator==(const ChiefSeries &, const ChiefSeries &) = default;
};

inline std::vector<NodeId> normal_subgroups(const SubgroupLattice &L) {
  std::vector<NodeId> out;
  for (NodeId id = 0; id < L.size(); ++id)
    if (is_normal(L.group(), L.node(id)))
      out.push_back(id);
  return out;
}

/// All commutators of `upper` lie in `lower`.
inline bool is_abelian_factor(const Group &G, const Subgroup &lower, const Subgroup &upper) {
  auto xs = upper.elements();
  for (auto a : xs)
    for (auto b : xs)
      if (!lower.contains(G.commutator(a, b)))
        return false;
  return true;
}

/// The canonical chief series: starting from 1, repeatedly step to the
/// canonically least normal subgroup strictly containing the current term.
/// Node ids follow the canonical order, and that least overgroup is
/// automatically minimal.
inline ChiefSeries chief_series(const SubgroupLattice &L) {
  if (!is_solvable(L.group()))
    throw NotSolvable();
  auto normals = normal_subgroups(L);
  ChiefSeries s{{L.bottom()}};
  while (s.terms.back() != L.top()) {
    NodeId cur = s.terms.back();
    for (auto n : normals) {
      if (L.less(cur, n)) {
        s.terms.push_back(n);
        break;
      }
    }
  }
  return s;
}

/// Every maximal chain in the poset of normal subgroups.
inline std::vector<ChiefSeries> all_chief_series(const SubgroupLattice &L) {
  if (!is_solvable(L.group()))
    throw NotSolvable();
  auto normals = normal_subgroups(L);
  std::vector<ChiefSeries> out;
  std::vector<NodeId> path{L.bottom()};
  auto covers_in_normals = [&](NodeId a) {
    std::vector<NodeId> up;
    for (auto b : normals) {
      if (!L.less(a, b))
        continue;
      bool minimal = true;
      for (auto c : normals)
        if (L.less(a, c) && L.less(c, b))
          minimal = false;
      if (minimal)
        up.push_back(b);
    }
    return up;
  };
  auto recurse = [&](auto &self) -> void {
    if (path.back() == L.top()) {
      out.push_back(ChiefSeries{path});
      return;
    }
    for (auto b : covers_in_normals(path.back())) {
      path.push_back(b);
      self(self);
      path.pop_back();
    }
  };
  recurse(recurse);
  return out;
}

/// Checks every chief-series invariant and returns the series, or throws
/// InvalidArgument naming the first violated condition.
inline ChiefSeries validate_chief_series(const SubgroupLattice &L, std::vector<NodeId> terms) {
  const Group &G = L.group();
  if (terms.empty() || terms.front() != L.bottom())
    throw InvalidArgument("series must start at the trivial subgroup");
  if (terms.back() != L.top())
    throw InvalidArgument("series must end at the whole group");
  if (!is_solvable(G))
    throw NotSolvable();
  auto normals = normal_subgroups(L);
  auto is_normal_id = [&](NodeId n) {
    return std::find(normals.begin(), normals.end(), n) != normals.end();
  };
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!is_normal_id(terms[i]))
      throw InvalidArgument("series term " + std::to_string(i) + " is not normal");
    if (i == 0)
      continue;
    if (!L.less(terms[i - 1], terms[i]))
      throw InvalidArgument("series is not strictly increasing at term " + std::to_string(i));
    for (auto n : normals)
      if (L.less(terms[i - 1], n) && L.less(n, terms[i]))
        throw InvalidArgument("a normal subgroup lies strictly between terms " +
                              std::to_string(i - 1) + " and " + std::to_string(i));
    if (!is_abelian_factor(G, L.node(terms[i - 1]), L.node(terms[i])))
      throw InvalidArgument("factor " + std::to_string(i) + " is not abelian");
  }
  return ChiefSeries{std::move(terms)};
}

/// Subgroups X with `a` <= X <= `b` (either argument order) that are
/// normalized by subgroup `H`.
inline Sublattice normalized_section(const SubgroupLattice &L, NodeId a, NodeId b, NodeId H) {
  NodeId lo = L.leq(a, b) ? a : b;
  NodeId hi = lo == a ? b : a;
  if (!L.leq(lo, hi))
    throw InvalidArgument("section bounds are not comparable");
  std::vector<NodeId> members;
  NodeSet between = L.upper_set(lo) & L.lower_set(hi);
  const Subgroup &h = L.node(H);
  for (auto x = between.find_first(); x != NodeSet::npos; x = between.find_next(x))
    if (normalizes(L.group(), h, L.node(static_cast<NodeId>(x))))
      members.push_back(static_cast<NodeId>(x));
  return Sublattice(L, std::move(members));
}

/// The section [N_i, N_{i+1}] of L(G) restricted to subgroups normalized by H.
inline Sublattice normalized_section(const SubgroupLattice &L, const ChiefSeries &series,
                                     std::size_t i, NodeId H) {
  if (i >= series.length())
    throw InvalidArgument("section index out of range");
  return normalized_section(L, series[i], series[i + 1], H);
}

} // namespace sgel
