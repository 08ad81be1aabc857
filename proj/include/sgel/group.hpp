#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "errors.hpp"
#include "permutation.hpp"

namespace sgel {

using ElementId = std::uint32_t;

/// Membership bitset over a group's element indices.
using ElementSet = boost::dynamic_bitset<std::uint64_t>;

inline constexpr std::size_t default_max_order = 384;

/// A finite permutation group stored as an explicit element list with
/// multiplication and inverse tables. Elements are sorted by their image
/// arrays, so the identity always has index 0.
class Group {
public:
  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }

  const std::vector<Permutation> &elements() const { return elements_; }
  const Permutation &element(ElementId e) const { return elements_[e]; }

  static constexpr ElementId identity() { return 0; }

  ElementId mul(ElementId a, ElementId b) const { return mul_[a * order() + b]; }
  ElementId inv(ElementId a) const { return inv_[a]; }
  ElementId conjugate(ElementId g, ElementId x) const { return mul(mul(g, x), inv(g)); }
  ElementId commutator(ElementId a, ElementId b) const {
    return mul(mul(inv(a), inv(b)), mul(a, b));
  }

  std::span<const ElementId> generators() const { return generators_; }

  std::optional<ElementId> index_of(const Permutation &p) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
    if (it == elements_.end() || *it != p)
      return std::nullopt;
    return static_cast<ElementId>(it - elements_.begin());
  }

  ElementSet empty_set() const { return ElementSet(order()); }

  ElementSet all_elements() const {
    ElementSet s(order());
    s.set();
    return s;
  }

private:
  friend Group generate_group(std::span<const Permutation>, std::size_t, std::size_t);

  std::size_t degree_ = 0;
  std::vector<Permutation> elements_;
  std::vector<ElementId> mul_;
  std::vector<ElementId> inv_;
  std::vector<ElementId> generators_;
};

/// Closes `gens` under composition. Throws CapExceeded once the group
/// grows past `max_order` elements.
inline Group generate_group(std::span<const Permutation> gens, std::size_t degree,
                            std::size_t max_order = default_max_order) {
  if (degree == 0)
    throw InvalidArgument("degree must be positive");
  for (const auto &g : gens)
    if (g.degree() != degree)
      throw InvalidArgument("generator " + g.to_cycles() + " has degree " +
                            std::to_string(g.degree()) + ", expected " + std::to_string(degree));

  std::map<Permutation, bool> seen;
  std::vector<Permutation> frontier{Permutation::identity(degree)};
  seen.emplace(frontier.front(), true);
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto &x : frontier) {
      for (const auto &g : gens) {
        auto y = x * g;
        if (seen.emplace(y, true).second) {
          if (seen.size() > max_order)
            throw CapExceeded("group order exceeds cap of " + std::to_string(max_order));
          next.push_back(std::move(y));
        }
      }
    }
    frontier = std::move(next);
  }

  Group G;
  G.degree_ = degree;
  G.elements_.reserve(seen.size());
  for (auto &[p, _] : seen)
    G.elements_.push_back(p);

  const std::size_t n = G.order();
  G.mul_.resize(n * n);
  G.inv_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto id = G.index_of(G.elements_[a] * G.elements_[b]);
      G.mul_[a * n + b] = *id;
      if (*id == Group::identity())
        G.inv_[a] = static_cast<ElementId>(b);
    }
  }
  for (const auto &g : gens) {
    auto id = *G.index_of(g);
    if (id != Group::identity() &&
        std::find(G.generators_.begin(), G.generators_.end(), id) == G.generators_.end())
      G.generators_.push_back(id);
  }
  return G;
}

inline std::vector<ElementId> to_indices(const ElementSet &s) {
  std::vector<ElementId> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i))
    out.push_back(static_cast<ElementId>(i));
  return out;
}

/// A subgroup as a membership bitset over the parent's element indices.
struct Subgroup {
  ElementSet members;
  std::size_t order = 0;

  bool contains(ElementId e) const { return members.test(e); }
  std::vector<ElementId> elements() const { return to_indices(members); }
  bool is_trivial() const { return order == 1; }
};

/// Canonical subgroup order: ascending order, then lexicographic on the
/// sorted list of member indices.
inline bool canonical_less(const ElementSet &a, const ElementSet &b) {
  auto ca = a.count(), cb = b.count();
  if (ca != cb)
    return ca < cb;
  auto i = a.find_first(), j = b.find_first();
  while (i != ElementSet::npos && j != ElementSet::npos) {
    if (i != j)
      return i < j;
    i = a.find_next(i);
    j = b.find_next(j);
  }
  return false;
}

/// Smallest subgroup containing every element of `seed`.
inline Subgroup subgroup_closure(const Group &G, std::span<const ElementId> seed) {
  std::vector<ElementId> gens;
  for (auto s : seed)
    if (s != Group::identity() && std::find(gens.begin(), gens.end(), s) == gens.end())
      gens.push_back(s);

  ElementSet members = G.empty_set();
  members.set(Group::identity());
  std::vector<ElementId> queue{Group::identity()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto g : gens) {
      auto y = G.mul(queue[head], g);
      if (!members.test(y)) {
        members.set(y);
        queue.push_back(y);
      }
    }
  }
  return Subgroup{std::move(members), queue.size()};
}

inline Subgroup subgroup_closure(const Group &G, const ElementSet &seed) {
  auto ids = to_indices(seed);
  return subgroup_closure(G, std::span<const ElementId>(ids));
}

/// Set product {hn : h in H, n in N}; generally not a subgroup.
inline ElementSet product_set(const Group &G, const Subgroup &H, const Subgroup &N) {
  ElementSet out = G.empty_set();
  auto hs = H.elements();
  auto ns = N.elements();
  for (auto h : hs)
    for (auto n : ns)
      out.set(G.mul(h, n));
  return out;
}

inline bool is_closed(const Group &G, const ElementSet &s) {
  if (!s.test(Group::identity()))
    return false;
  auto xs = to_indices(s);
  for (auto a : xs) {
    if (!s.test(G.inv(a)))
      return false;
    for (auto b : xs)
      if (!s.test(G.mul(a, b)))
        return false;
  }
  return true;
}

/// Whether every element of `by` conjugates `X` into itself.
inline bool normalizes(const Group &G, const Subgroup &by, const Subgroup &X) {
  auto xs = X.elements();
  for (auto h = by.members.find_first(); h != ElementSet::npos; h = by.members.find_next(h))
    for (auto x : xs)
      if (!X.contains(G.conjugate(static_cast<ElementId>(h), x)))
        return false;
  return true;
}

/// Normality tested by conjugating with the generators of G.
inline bool is_normal(const Group &G, const Subgroup &H) {
  auto hs = H.elements();
  for (auto g : G.generators())
    for (auto h : hs)
      if (!H.contains(G.conjugate(g, h)))
        return false;
  return true;
}

inline Subgroup derived_subgroup(const Group &G, const Subgroup &H) {
  auto hs = H.elements();
  ElementSet comms = G.empty_set();
  for (auto a : hs)
    for (auto b : hs)
      comms.set(G.commutator(a, b));
  return subgroup_closure(G, comms);
}

inline Subgroup whole_group(const Group &G) { return Subgroup{G.all_elements(), G.order()}; }

/// Derived series reaches the trivial subgroup.
inline bool is_solvable(const Group &G) {
  Subgroup D = whole_group(G);
  while (!D.is_trivial()) {
    Subgroup next = derived_subgroup(G, D);
    if (next.order == D.order)
      return false;
    D = std::move(next);
  }
  return true;
}

} // namespace sgel
