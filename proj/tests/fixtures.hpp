#pragma once

#include <initializer_list>
#include <memory>
#include <string_view>

#include "oracles.hpp"
#include "sgel/sgel.hpp"

namespace fixture {

struct Built {
  sgel::GroupSpec spec;
  std::shared_ptr<const sgel::SubgroupLattice> lattice;

  const sgel::SubgroupLattice &L() const { return *lattice; }
  const sgel::Group &G() const { return lattice->group(); }

  /// Node id of the subgroup generated by the given cycles.
  sgel::NodeId sub(std::initializer_list<const char *> gens) const {
    std::vector<sgel::ElementId> seed;
    for (auto g : gens)
      seed.push_back(*G().index_of(sgel::parse_permutation(g, G().degree())));
    return L().id_of(sgel::subgroup_closure(G(), std::span<const sgel::ElementId>(seed)).members);
  }
};

inline Built build(std::string_view spec_text) {
  auto spec = sgel::parse_group_spec(spec_text);
  auto group = std::make_shared<const sgel::Group>(sgel::build_group(spec));
  return {spec, std::make_shared<const sgel::SubgroupLattice>(sgel::enumerate_subgroups(group))};
}

inline oracle::Table table(const sgel::GroupSpec &spec) {
  std::vector<oracle::Images> gens;
  for (const auto &g : spec.generators) {
    auto p = sgel::parse_permutation(g, spec.degree);
    gens.emplace_back(p.images().begin(), p.images().end());
  }
  return oracle::closure(gens, static_cast<int>(spec.degree));
}

inline oracle::Mask mask(const sgel::Subgroup &H) {
  oracle::Mask m = 0;
  for (auto e : H.elements())
    m |= oracle::Mask{1} << e;
  return m;
}

} // namespace fixture
