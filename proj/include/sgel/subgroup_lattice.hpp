#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "group.hpp"

namespace sgel {

using NodeId = std::uint32_t;
using NodeSet = boost::dynamic_bitset<std::uint64_t>;
using Chain = std::vector<NodeId>;
using GroupPtr = std::shared_ptr<const Group>;

inline constexpr std::size_t default_max_subgroups = 4096;

/// All subgroups of a group ordered by inclusion. Node ids follow the
/// canonical subgroup order, so id 0 is the trivial subgroup, the last id
/// is the whole group, and ids are a linear extension of inclusion.
class SubgroupLattice {
public:
  const Group &group() const { return *group_; }
  const GroupPtr &group_ptr() const { return group_; }

  std::size_t size() const { return nodes_.size(); }
  const Subgroup &node(NodeId id) const { return nodes_[id]; }
  std::span<const Subgroup> nodes() const { return nodes_; }

  NodeId bottom() const { return 0; }
  NodeId top() const { return static_cast<NodeId>(nodes_.size() - 1); }

  bool leq(NodeId a, NodeId b) const { return upper_[a].test(b); }
  bool less(NodeId a, NodeId b) const { return a != b && leq(a, b); }

  NodeId meet(NodeId a, NodeId b) const { return meet_[a * size() + b]; }
  NodeId join(NodeId a, NodeId b) const { return join_[a * size() + b]; }

  std::span<const NodeId> up_covers(NodeId a) const { return up_[a]; }
  std::span<const NodeId> down_covers(NodeId a) const { return down_[a]; }

  bool is_cover(NodeId a, NodeId b) const {
    auto ups = up_covers(a);
    return std::find(ups.begin(), ups.end(), b) != ups.end();
  }

  /// Nodes b with a <= b, and nodes b with b <= a.
  const NodeSet &upper_set(NodeId a) const { return upper_[a]; }
  const NodeSet &lower_set(NodeId a) const { return lower_[a]; }

  std::optional<NodeId> find(const ElementSet &members) const {
    auto it = index_.find(members);
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }

  NodeId id_of(const ElementSet &members) const {
    auto id = find(members);
    if (!id)
      throw InvalidArgument("element set is not a subgroup of the lattice");
    return *id;
  }

  std::size_t cover_count() const {
    std::size_t n = 0;
    for (const auto &u : up_)
      n += u.size();
    return n;
  }

private:
  friend SubgroupLattice enumerate_subgroups(GroupPtr, std::size_t);

  GroupPtr group_;
  std::vector<Subgroup> nodes_;
  std::unordered_map<ElementSet, NodeId> index_;
  std::vector<NodeSet> upper_, lower_;
  std::vector<std::vector<NodeId>> up_, down_;
  std::vector<std::uint16_t> meet_, join_;
};

/// Seeds with every cyclic subgroup and closes under joins with cyclic
/// subgroups; every subgroup is the join of its cyclic subgroups, so the
/// result is complete.
inline SubgroupLattice enumerate_subgroups(GroupPtr group,
                                           std::size_t max_subgroups = default_max_subgroups) {
  if (max_subgroups > 65535)
    throw InvalidArgument("subgroup cap above 65535 is not supported");
  const Group &G = *group;
  auto over_cap = [&] {
    return CapExceeded("subgroup count exceeds cap of " + std::to_string(max_subgroups));
  };

  struct Found {
    Subgroup sub;
    std::vector<ElementId> gens;
  };
  std::vector<Found> found;
  std::unordered_map<ElementSet, std::size_t> seen;

  std::vector<ElementId> cyclic_gens;
  for (ElementId g = 0; g < G.order(); ++g) {
    ElementId seed[] = {g};
    auto C = subgroup_closure(G, seed);
    if (seen.emplace(C.members, found.size()).second) {
      cyclic_gens.push_back(g);
      found.push_back({std::move(C), g == Group::identity() ? std::vector<ElementId>{}
                                                             : std::vector<ElementId>{g}});
      if (found.size() > max_subgroups)
        throw over_cap();
    }
  }

  for (std::size_t head = 0; head < found.size(); ++head) {
    for (auto c : cyclic_gens) {
      if (found[head].sub.contains(c))
        continue;
      auto gens = found[head].gens;
      gens.push_back(c);
      auto J = subgroup_closure(G, std::span<const ElementId>(gens));
      if (seen.emplace(J.members, found.size()).second) {
        found.push_back({std::move(J), std::move(gens)});
        if (found.size() > max_subgroups)
          throw over_cap();
      }
    }
  }

  std::sort(found.begin(), found.end(), [](const Found &a, const Found &b) {
    return canonical_less(a.sub.members, b.sub.members);
  });

  SubgroupLattice L;
  L.group_ = std::move(group);
  const std::size_t n = found.size();
  L.nodes_.reserve(n);
  for (auto &f : found)
    L.nodes_.push_back(std::move(f.sub));
  for (NodeId i = 0; i < n; ++i)
    L.index_.emplace(L.nodes_[i].members, i);

  L.upper_.assign(n, NodeSet(n));
  L.lower_.assign(n, NodeSet(n));
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a; b < n; ++b) {
      if (L.nodes_[a].members.is_subset_of(L.nodes_[b].members)) {
        L.upper_[a].set(b);
        L.lower_[b].set(a);
      }
    }
  }

  L.up_.assign(n, {});
  L.down_.assign(n, {});
  for (NodeId b = 0; b < n; ++b) {
    NodeSet strict = L.lower_[b];
    strict.reset(b);
    NodeSet covers = strict;
    for (auto c = strict.find_first(); c != NodeSet::npos; c = strict.find_next(c)) {
      NodeSet below = L.lower_[c];
      below.reset(c);
      covers -= below;
    }
    for (auto a = covers.find_first(); a != NodeSet::npos; a = covers.find_next(a)) {
      L.down_[b].push_back(static_cast<NodeId>(a));
      L.up_[a].push_back(b);
    }
  }

  // The join is the least common upper bound, which has the smallest
  // order and therefore the smallest id; dually for the meet.
  L.meet_.resize(n * n);
  L.join_.resize(n * n);
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a; b < n; ++b) {
      auto j = static_cast<std::uint16_t>((L.upper_[a] & L.upper_[b]).find_first());
      auto m = static_cast<std::uint16_t>(*L.find(L.nodes_[a].members & L.nodes_[b].members));
      L.join_[a * n + b] = L.join_[b * n + a] = j;
      L.meet_[a * n + b] = L.meet_[b * n + a] = m;
    }
  }
  return L;
}

inline SubgroupLattice enumerate_subgroups(const Group &G,
                                           std::size_t max_subgroups = default_max_subgroups) {
  return enumerate_subgroups(std::make_shared<const Group>(G), max_subgroups);
}

enum class Orientation { primal, dual };

/// Read-only view of a subgroup lattice or of its order dual. In the dual
/// view the order, covers, meet and join are all reversed, which lets the
/// labeling pipeline run unchanged on L(G)*.
class OrientedLattice {
public:
  OrientedLattice(const SubgroupLattice &lattice, Orientation orientation)
      : lattice_(&lattice), dual_(orientation == Orientation::dual) {}

  const SubgroupLattice &lattice() const { return *lattice_; }
  Orientation orientation() const { return dual_ ? Orientation::dual : Orientation::primal; }
  bool is_dual() const { return dual_; }

  NodeId bottom() const { return dual_ ? lattice_->top() : lattice_->bottom(); }
  NodeId top() const { return dual_ ? lattice_->bottom() : lattice_->top(); }

  bool leq(NodeId a, NodeId b) const { return dual_ ? lattice_->leq(b, a) : lattice_->leq(a, b); }
  bool less(NodeId a, NodeId b) const { return a != b && leq(a, b); }
  NodeId meet(NodeId a, NodeId b) const {
    return dual_ ? lattice_->join(a, b) : lattice_->meet(a, b);
  }
  NodeId join(NodeId a, NodeId b) const {
    return dual_ ? lattice_->meet(a, b) : lattice_->join(a, b);
  }
  std::span<const NodeId> up_covers(NodeId a) const {
    return dual_ ? lattice_->down_covers(a) : lattice_->up_covers(a);
  }
  std::span<const NodeId> down_covers(NodeId a) const {
    return dual_ ? lattice_->up_covers(a) : lattice_->down_covers(a);
  }
  bool is_cover(NodeId a, NodeId b) const {
    return dual_ ? lattice_->is_cover(b, a) : lattice_->is_cover(a, b);
  }
  const NodeSet &upper_set(NodeId a) const {
    return dual_ ? lattice_->lower_set(a) : lattice_->upper_set(a);
  }
  const NodeSet &lower_set(NodeId a) const {
    return dual_ ? lattice_->upper_set(a) : lattice_->lower_set(a);
  }

private:
  const SubgroupLattice *lattice_;
  bool dual_;
};

/// The closed interval [lo, hi] of L(G).
struct Interval {
  const SubgroupLattice *lattice = nullptr;
  NodeId lo = 0, hi = 0;
  std::vector<NodeId> members;
};

inline Interval interval(const SubgroupLattice &L, NodeId lo, NodeId hi) {
  if (!L.leq(lo, hi))
    throw InvalidArgument("interval endpoints are not comparable");
  Interval I{&L, lo, hi, {}};
  NodeSet between = L.upper_set(lo) & L.lower_set(hi);
  for (auto x = between.find_first(); x != NodeSet::npos; x = between.find_next(x))
    I.members.push_back(static_cast<NodeId>(x));
  return I;
}

/// Visits every maximal chain of [lo, hi] in `view`, in lexicographic order
/// of node-id sequences. The chain passed to `visit` includes both ends; a
/// degenerate interval yields the single chain (lo).
template <typename Visit>
void for_each_maximal_chain(const OrientedLattice &view, NodeId lo, NodeId hi, Visit &&visit) {
  if (!view.leq(lo, hi))
    return;
  Chain chain{lo};
  std::vector<std::size_t> cursor{0};
  const NodeSet &below_hi = view.lower_set(hi);
  if (lo == hi) {
    visit(std::as_const(chain));
    return;
  }
  while (!cursor.empty()) {
    NodeId cur = chain.back();
    auto ups = view.up_covers(cur);
    std::size_t &k = cursor.back();
    // up_covers lists are ascending by id in both orientations.
    while (k < ups.size() && !below_hi.test(ups[k]))
      ++k;
    if (k == ups.size()) {
      chain.pop_back();
      cursor.pop_back();
      continue;
    }
    NodeId next = ups[k++];
    chain.push_back(next);
    if (next == hi) {
      visit(std::as_const(chain));
      chain.pop_back();
    } else {
      cursor.push_back(0);
    }
  }
}

inline std::vector<Chain> maximal_chains(const OrientedLattice &view, NodeId lo, NodeId hi) {
  std::vector<Chain> out;
  for_each_maximal_chain(view, lo, hi, [&](const Chain &c) { out.push_back(c); });
  return out;
}

inline std::vector<Chain> maximal_chains(const Interval &I) {
  return maximal_chains(OrientedLattice(*I.lattice, Orientation::primal), I.lo, I.hi);
}

/// x is left modular when (y v x) ^ z = y v (x ^ z) for all y < z.
inline bool is_left_modular(const SubgroupLattice &L, NodeId x) {
  for (NodeId y = 0; y < L.size(); ++y) {
    const NodeSet &ups = L.upper_set(y);
    for (auto z = ups.find_next(y); z != NodeSet::npos; z = ups.find_next(z)) {
      auto zi = static_cast<NodeId>(z);
      if (L.meet(L.join(y, x), zi) != L.join(y, L.meet(x, zi)))
        return false;
    }
  }
  return true;
}

struct LeftModularVerdicts {
  bool identity = true;          // (y v x) ^ z = y v (x ^ z) for all y < z
  bool join_or_meet_differs = true;  // x v z != x v y or x ^ z != x ^ y for all y < z
  bool covers_exclusive = true;  // exactly one of the two equalities on every cover

  bool agree() const {
    return identity == join_or_meet_differs && join_or_meet_differs == covers_exclusive;
  }
  friend bool operator==(const LeftModularVerdicts &, const LeftModularVerdicts &) = default;
};

/// Evaluates the three equivalent characterizations of left modularity
/// independently.
inline LeftModularVerdicts left_modular_equivalents(const SubgroupLattice &L, NodeId x) {
  LeftModularVerdicts v;
  v.identity = is_left_modular(L, x);
  for (NodeId y = 0; y < L.size(); ++y) {
    const NodeSet &ups = L.upper_set(y);
    for (auto z = ups.find_next(y); z != NodeSet::npos; z = ups.find_next(z)) {
      auto zi = static_cast<NodeId>(z);
      if (L.join(x, zi) == L.join(x, y) && L.meet(x, zi) == L.meet(x, y))
        v.join_or_meet_differs = false;
    }
    for (auto z : L.up_covers(y)) {
      bool joins = L.join(x, z) == L.join(x, y);
      bool meets = L.meet(x, z) == L.meet(x, y);
      if (joins == meets)
        v.covers_exclusive = false;
    }
  }
  return v;
}

/// mu(0, x) for every node by the recursion sum_{y <= x} mu(0, y) = 0.
inline std::vector<long long> moebius(const SubgroupLattice &L) {
  std::vector<long long> mu(L.size(), 0);
  mu[L.bottom()] = 1;
  for (NodeId x = 1; x < L.size(); ++x) {
    long long sum = 0;
    const NodeSet &below = L.lower_set(x);
    for (auto y = below.find_first(); y != NodeSet::npos && y != x; y = below.find_next(y))
      sum += mu[y];
    mu[x] = -sum;
  }
  return mu;
}

/// A subset of L(G) closed under its meet and join, with cover relations
/// taken in the restricted order. Those covers need not be covers of L(G).
class Sublattice {
public:
  Sublattice(const SubgroupLattice &L, std::vector<NodeId> members)
      : lattice_(&L), members_(std::move(members)), in_(L.size()) {
    std::sort(members_.begin(), members_.end());
    for (auto m : members_)
      in_.set(m);
    up_.assign(members_.size(), {});
    down_.assign(members_.size(), {});
    for (std::size_t a = 0; a < members_.size(); ++a) {
      for (std::size_t b = a + 1; b < members_.size(); ++b) {
        if (!L.less(members_[a], members_[b]))
          continue;
        bool cover = true;
        for (std::size_t c = a + 1; c < b && cover; ++c)
          if (L.less(members_[a], members_[c]) && L.less(members_[c], members_[b]))
            cover = false;
        if (cover) {
          up_[a].push_back(members_[b]);
          down_[b].push_back(members_[a]);
        }
      }
    }
  }

  const SubgroupLattice &lattice() const { return *lattice_; }
  std::span<const NodeId> members() const { return members_; }
  const NodeSet &member_set() const { return in_; }
  std::size_t size() const { return members_.size(); }
  bool contains(NodeId x) const { return in_.test(x); }

  NodeId bottom() const { return members_.front(); }
  NodeId top() const { return members_.back(); }

  std::span<const NodeId> up_covers(NodeId x) const { return up_[position(x)]; }
  std::span<const NodeId> down_covers(NodeId x) const { return down_[position(x)]; }

  bool is_cover(NodeId a, NodeId b) const {
    if (!contains(a) || !contains(b))
      return false;
    auto ups = up_covers(a);
    return std::find(ups.begin(), ups.end(), b) != ups.end();
  }

  bool is_closed() const {
    for (auto a : members_)
      for (auto b : members_)
        if (!contains(lattice_->meet(a, b)) || !contains(lattice_->join(a, b)))
          return false;
    return true;
  }

  /// x v (y ^ z) = (x v y) ^ z for all x <= z in the sublattice.
  bool is_modular() const {
    const auto &L = *lattice_;
    for (auto x : members_)
      for (auto z : members_)
        if (L.leq(x, z))
          for (auto y : members_)
            if (L.join(x, L.meet(y, z)) != L.meet(L.join(x, y), z))
              return false;
    return true;
  }

private:
  std::size_t position(NodeId x) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), x);
    if (it == members_.end() || *it != x)
      throw InvalidArgument("node is not a member of the sublattice");
    return static_cast<std::size_t>(it - members_.begin());
  }

  const SubgroupLattice *lattice_;
  std::vector<NodeId> members_;
  NodeSet in_;
  std::vector<std::vector<NodeId>> up_, down_;
};

} // namespace sgel
