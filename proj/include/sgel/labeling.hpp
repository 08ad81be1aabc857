#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "chief_series.hpp"
#include "errors.hpp"
#include "subgroup_lattice.hpp"

namespace sgel {

/// Edge label (i, j): i is the chief factor that weakly separates the edge,
/// j the modular label of its projection into the section N_i. Compared
/// lexicographically with i dominant.
struct EdgeLabel {
  std::uint32_t coarse = 0;
  std::uint32_t fine = 0;

  friend auto operator<=>(const EdgeLabel &, const EdgeLabel &) = default;
  friend bool operator==(const EdgeLabel &, const EdgeLabel &) = default;
};

/// The unique t such that chain[t+1]/chain[t] weakly separates y < z, i.e.
/// chain[t] ^ z = chain[t] ^ y and chain[t+1] v z = chain[t+1] v y.
inline std::size_t weak_separation_index(const OrientedLattice &view,
                                         std::span<const NodeId> chain, NodeId y, NodeId z) {
  std::size_t found = 0, hits = 0;
  for (std::size_t t = 0; t + 1 < chain.size(); ++t) {
    if (view.meet(chain[t], z) == view.meet(chain[t], y) &&
        view.join(chain[t + 1], z) == view.join(chain[t + 1], y)) {
      found = t;
      ++hits;
    }
  }
  if (hits == 0)
    throw ConsistencyError(ConsistencyError::Kind::no_separation,
                           "no chain factor weakly separates edge " + std::to_string(y) + " < " +
                               std::to_string(z));
  if (hits > 1)
    throw ConsistencyError(ConsistencyError::Kind::multiple_separation,
                           "several chain factors weakly separate edge " + std::to_string(y) +
                               " < " + std::to_string(z));
  return found;
}

inline std::size_t weak_separation_index(const SubgroupLattice &L, const ChiefSeries &series,
                                         NodeId y, NodeId z) {
  return weak_separation_index(OrientedLattice(L, Orientation::primal), series.terms, y, z);
}

/// w = c_0 < c_1 < ... < c_m = z, where i(j) is the largest index with
/// (c_j v x_i(j)) ^ z = c_j and c_{j+1} = (c_j v x_{i(j)+1}) ^ z.
struct SkeletonChain {
  std::vector<NodeId> nodes;
  std::vector<std::size_t> indices;
};

inline SkeletonChain skeleton_chain(const OrientedLattice &view, std::span<const NodeId> chain,
                                    NodeId w, NodeId z) {
  if (!view.leq(w, z))
    throw InvalidArgument("skeleton chain needs w <= z");
  SkeletonChain c{{w}, {}};
  NodeId cur = w;
  while (cur != z) {
    std::size_t i = 0;
    while (i + 1 < chain.size() && view.meet(view.join(cur, chain[i + 1]), z) == cur)
      ++i;
    NodeId next = view.meet(view.join(cur, chain[i + 1]), z);
    c.indices.push_back(i);
    c.nodes.push_back(next);
    cur = next;
  }
  return c;
}

inline SkeletonChain skeleton_chain(const SubgroupLattice &L, const ChiefSeries &series, NodeId w,
                                    NodeId z) {
  return skeleton_chain(OrientedLattice(L, Orientation::primal), series.terms, w, z);
}

/// Projection H -> (x_i v H) ^ x_{i+1}; for subgroups, N_i H ∩ N_{i+1}.
inline NodeId rho(const OrientedLattice &view, std::span<const NodeId> chain, std::size_t i,
                  NodeId H) {
  return view.meet(view.join(chain[i], H), chain[i + 1]);
}

inline NodeId rho(const SubgroupLattice &L, const ChiefSeries &series, std::size_t i, NodeId H) {
  return rho(OrientedLattice(L, Orientation::primal), series.terms, i, H);
}

/// N -> (W v N) ^ Z; for subgroups, WN ∩ Z. In the primal orientation the
/// set product WN must itself be a subgroup, otherwise ProductNotSubgroup.
inline NodeId phi(const OrientedLattice &view, NodeId N, NodeId W, NodeId Z) {
  const auto &L = view.lattice();
  NodeId joined = view.join(W, N);
  if (!view.is_dual()) {
    auto product = product_set(L.group(), L.node(W), L.node(N));
    if (product.count() != L.node(joined).order)
      throw ConsistencyError(ConsistencyError::Kind::product_not_subgroup,
                             "product of subgroups " + std::to_string(W) + " and " +
                                 std::to_string(N) + " is not a subgroup");
  }
  return view.meet(joined, Z);
}

inline NodeId phi(const SubgroupLattice &L, NodeId N, NodeId W, NodeId Z) {
  return phi(OrientedLattice(L, Orientation::primal), N, W, Z);
}

/// A maximal chain of a section, bottom to top in the labeling orientation.
struct ModularChain {
  std::vector<NodeId> nodes;
};

/// Greedy from the section's bottom, always stepping to the cover with the
/// smallest node id. Depends only on the member set and orientation.
inline ModularChain canonical_modular_chain(const Sublattice &section,
                                            Orientation orientation = Orientation::primal) {
  bool dual = orientation == Orientation::dual;
  NodeId cur = dual ? section.top() : section.bottom();
  NodeId end = dual ? section.bottom() : section.top();
  ModularChain c{{cur}};
  while (cur != end) {
    auto next = dual ? section.down_covers(cur) : section.up_covers(cur);
    cur = *std::min_element(next.begin(), next.end());
    c.nodes.push_back(cur);
  }
  return c;
}

/// Modular EL label of a section edge y < z: its weak-separation index
/// against the section chain. Meets and joins are the parent lattice's,
/// which the section is closed under.
inline std::size_t modular_label(const OrientedLattice &view, const Sublattice &section,
                             const ModularChain &chain, NodeId y, NodeId z) {
  bool cover = view.is_dual() ? section.is_cover(z, y) : section.is_cover(y, z);
  if (!cover)
    throw ConsistencyError(ConsistencyError::Kind::not_a_cover,
                           "projected edge " + std::to_string(y) + " < " + std::to_string(z) +
                               " is not a cover of its section");
  return weak_separation_index(view, chain.nodes, y, z);
}

inline std::size_t modular_label(const Sublattice &section, const ModularChain &chain, NodeId y,
                             NodeId z) {
  return modular_label(OrientedLattice(section.lattice(), Orientation::primal), section, chain, y, z);
}

/// A labeled cover edge `from` < `to` in the labeling orientation, with the
/// projection it was labeled through.
struct LabeledEdge {
  NodeId from = 0, to = 0;
  EdgeLabel label;
  std::size_t section = 0;
  NodeId rho_from = 0, rho_to = 0;
};

struct Section {
  std::size_t coarse = 0;
  Sublattice sublattice;
  ModularChain chain;
};

class LabeledLattice {
public:
  const SubgroupLattice &lattice() const { return *lattice_; }
  const OrientedLattice &view() const { return view_; }
  Orientation orientation() const { return view_.orientation(); }

  /// The series in its primal form, 1 = N_0 < ... < N_k = G.
  const ChiefSeries &series() const { return series_; }

  /// The series as a chain from the bottom of the labeling orientation.
  std::span<const NodeId> oriented_series() const { return oriented_series_; }

  std::span<const LabeledEdge> edges() const { return edges_; }
  std::span<const Section> sections() const { return sections_; }

  const LabeledEdge &edge(NodeId from, NodeId to) const {
    auto ups = view_.up_covers(from);
    auto it = std::find(ups.begin(), ups.end(), to);
    if (it == ups.end())
      throw InvalidArgument("not a cover edge in the labeling orientation");
    return edges_[first_edge_[from] + static_cast<std::size_t>(it - ups.begin())];
  }

  EdgeLabel label(NodeId from, NodeId to) const { return edge(from, to).label; }

  /// Labels read along a chain listed from the bottom of the orientation.
  std::vector<EdgeLabel> labels_along(std::span<const NodeId> chain) const {
    std::vector<EdgeLabel> out;
    for (std::size_t t = 0; t + 1 < chain.size(); ++t)
      out.push_back(label(chain[t], chain[t + 1]));
    return out;
  }

private:
  friend LabeledLattice label_oriented(const SubgroupLattice &, const ChiefSeries &, Orientation);

  LabeledLattice(const SubgroupLattice &L, ChiefSeries series, Orientation o)
      : lattice_(&L), view_(L, o), series_(std::move(series)) {}

  const SubgroupLattice *lattice_;
  OrientedLattice view_;
  ChiefSeries series_;
  std::vector<NodeId> oriented_series_;
  std::vector<LabeledEdge> edges_;
  std::vector<std::size_t> first_edge_;
  std::vector<Section> sections_;
};

/// Labels every cover edge (in the given orientation) with (i, j). Sections
/// are taken at the lower endpoint of each edge and their canonical chains
/// are shared between all edges whose sections have equal member sets.
inline LabeledLattice label_oriented(const SubgroupLattice &L, const ChiefSeries &series,
                                     Orientation orientation) {
  if (!is_solvable(L.group()))
    throw NotSolvable();
  LabeledLattice out(L, series, orientation);
  out.oriented_series_ = series.terms;
  if (orientation == Orientation::dual)
    std::reverse(out.oriented_series_.begin(), out.oriented_series_.end());
  const auto &view = out.view_;
  std::span<const NodeId> chain = out.oriented_series_;

  std::map<std::vector<NodeId>, std::size_t> section_index;
  out.first_edge_.assign(L.size(), 0);

  for (NodeId from = 0; from < L.size(); ++from) {
    out.first_edge_[from] = out.edges_.size();
    for (NodeId to : view.up_covers(from)) {
      std::size_t i = weak_separation_index(view, chain, from, to);
      Sublattice sub = normalized_section(L, chain[i], chain[i + 1], from);
      std::vector<NodeId> key(sub.members().begin(), sub.members().end());
      auto [it, inserted] = section_index.emplace(std::move(key), out.sections_.size());
      if (inserted) {
        ModularChain mc = canonical_modular_chain(sub, orientation);
        out.sections_.push_back(Section{i, std::move(sub), std::move(mc)});
      }
      const Section &sec = out.sections_[it->second];
      LabeledEdge e;
      e.from = from;
      e.to = to;
      e.section = it->second;
      e.rho_from = rho(view, chain, i, from);
      e.rho_to = rho(view, chain, i, to);
      e.label.coarse = static_cast<std::uint32_t>(i);
      e.label.fine =
          static_cast<std::uint32_t>(modular_label(view, sec.sublattice, sec.chain, e.rho_from, e.rho_to));
      out.edges_.push_back(e);
    }
  }
  return out;
}

inline LabeledLattice label_lattice(const SubgroupLattice &L, const ChiefSeries &series) {
  return label_oriented(L, series, Orientation::primal);
}

/// The same pipeline on the order dual of L(G), with the series read from
/// G down to 1.
inline LabeledLattice label_lattice_dual(const SubgroupLattice &L, const ChiefSeries &series) {
  return label_oriented(L, series, Orientation::dual);
}

} // namespace sgel
