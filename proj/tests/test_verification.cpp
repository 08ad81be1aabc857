#include <numeric>
#include <optional>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace sgel;

namespace {

const char *const solvable_catalog[] = {"C6", "C12", "E8", "S3", "D4", "D6", "Q8", "A4", "SL23", "S4"};

std::set<std::vector<oracle::Mask>> as_masks(const SubgroupLattice &L, const std::vector<Chain> &chains) {
  std::set<std::vector<oracle::Mask>> out;
  for (const auto &c : chains) {
    std::vector<oracle::Mask> m;
    for (auto id : c)
      m.push_back(fixture::mask(L.node(id)));
    out.insert(m);
  }
  return out;
}

} // namespace

TEST(CheckedIntervals, SmallLatticesGetEveryInterval) {
  auto s3 = fixture::build("S3");
  OrientedLattice view(s3.L(), Orientation::primal);
  auto all = checked_intervals(view);
  EXPECT_EQ(all.size(), 9u);
  for (auto [w, z] : all)
    EXPECT_TRUE(s3.L().less(w, z));
  OrientedLattice dual(s3.L(), Orientation::dual);
  for (auto [w, z] : checked_intervals(dual))
    EXPECT_TRUE(s3.L().less(z, w));
}

TEST(CheckedIntervals, LargeLatticesAreSampledDeterministically) {
  auto f = fixture::build("degree=8; gens=(1 2),(3 4),(5 6),(7 8)");
  const auto &L = f.L();
  ASSERT_EQ(L.size(), 67u);
  OrientedLattice view(L, Orientation::primal);
  auto picked = checked_intervals(view);
  EXPECT_EQ(picked, checked_intervals(view));
  EXPECT_TRUE(std::is_sorted(picked.begin(), picked.end()));
  EXPECT_EQ(std::adjacent_find(picked.begin(), picked.end()), picked.end());
  std::set<IntervalPair> s(picked.begin(), picked.end());
  for (NodeId x = 1; x < L.size(); ++x)
    EXPECT_TRUE(s.count({L.bottom(), x}));
  for (NodeId x = 0; x + 1 < L.size(); ++x)
    EXPECT_TRUE(s.count({x, L.top()}));
  EXPECT_GT(picked.size(), 2 * (L.size() - 1) - 1);
  EXPECT_LE(picked.size(), 2 * (L.size() - 1) - 1 + sampled_interval_count);

  auto labeled = label_lattice(L, chief_series(L));
  auto report = check_el(labeled, picked, 2);
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.records.size(), picked.size());
}

TEST(ELCheck, S3Intervals) {
  auto s3 = fixture::build("S3");
  auto labeled = label_lattice(s3.L(), chief_series(s3.L()));
  auto report = check_el(labeled);
  ASSERT_EQ(report.records.size(), 9u);
  EXPECT_TRUE(report.pass);
  for (const auto &r : report.records) {
    EXPECT_EQ(r.increasing, 1u);
    EXPECT_TRUE(r.pass);
  }
  auto whole = check_el_interval(labeled, s3.L().bottom(), s3.L().top());
  EXPECT_EQ(whole.chains, 4u);
}

TEST(ELCheck, CatalogBothOrientations) {
  for (auto name : solvable_catalog) {
    SCOPED_TRACE(name);
    auto f = fixture::build(name);
    auto series = chief_series(f.L());
    auto primal = check_el(label_lattice(f.L(), series), 2);
    auto dual = check_el(label_lattice_dual(f.L(), series), 2);
    EXPECT_TRUE(primal.pass);
    EXPECT_TRUE(dual.pass);
    EXPECT_EQ(primal.failures(), 0u);
    EXPECT_EQ(primal.records.size(), dual.records.size());
    for (const auto *report : {&primal, &dual})
      for (const auto &r : report->records) {
        EXPECT_EQ(r.increasing, 1u);
        EXPECT_LT(r.lex_first, r.chains);
      }
  }
}

TEST(ELCheck, ThreadCountDoesNotChangeRecords) {
  auto f = fixture::build("S4");
  auto labeled = label_lattice(f.L(), chief_series(f.L()));
  auto one = check_el(labeled, 1), four = check_el(labeled, 4);
  ASSERT_EQ(one.records.size(), four.records.size());
  for (std::size_t t = 0; t < one.records.size(); ++t) {
    EXPECT_EQ(one.records[t].chains, four.records[t].chains);
    EXPECT_EQ(one.records[t].lex_first, four.records[t].lex_first);
  }
}

TEST(DescendingChains, FrozenCounts) {
  const std::pair<const char *, std::size_t> cases[] = {
      {"S3", 3}, {"Q8", 0}, {"C7", 1}, {"A4", 4}, {"C6", 1}, {"S4", 12}, {"E8", 8}};
  for (auto [name, expected] : cases) {
    SCOPED_TRACE(name);
    auto f = fixture::build(name);
    auto series = chief_series(f.L());
    EXPECT_EQ(descending_chains(label_lattice(f.L(), series)).size(), expected);
    EXPECT_EQ(descending_chains(label_lattice_dual(f.L(), series)).size(), expected);
  }
}

TEST(ComplementChains, MatchOracle) {
  // Frozen counts, confirmed by oracle::complement_chains.
  const std::pair<const char *, std::size_t> cases[] = {
      {"C6", 1}, {"A4", 4}, {"Q8", 0}, {"S3", 3}, {"D4", 0}, {"S4", 12}, {"C12", 0}, {"D6", 6}};
  for (auto [name, expected] : cases) {
    SCOPED_TRACE(name);
    auto f = fixture::build(name);
    const auto &L = f.L();
    auto series = chief_series(L);
    auto t = fixture::table(f.spec);
    auto subs = oracle::subset_subgroups(t);
    std::vector<oracle::Mask> series_masks;
    for (auto n : series.terms)
      series_masks.push_back(fixture::mask(L.node(n)));
    auto expect = oracle::complement_chains(t, subs, series_masks);
    EXPECT_EQ(expect.size(), expected);
    auto got = chains_of_complements(L, series);
    EXPECT_EQ(got.size(), expected);
    EXPECT_EQ(as_masks(L, got), std::set<std::vector<oracle::Mask>>(expect.begin(), expect.end()));
  }
}

TEST(DescendingChains, EqualComplementChains) {
  for (auto name : solvable_catalog)
    for (auto o : {Orientation::primal, Orientation::dual}) {
      SCOPED_TRACE(name);
      auto f = fixture::build(name);
      auto v = check_descending_equals_complements(label_oriented(f.L(), chief_series(f.L()), o));
      EXPECT_TRUE(v.pass);
      EXPECT_TRUE(v.complement_labels_ok);
      EXPECT_EQ(v.descending, v.complements);
      for (const auto &c : v.descending) {
        EXPECT_EQ(c.front(), f.L().bottom());
        EXPECT_EQ(c.back(), f.L().top());
      }
    }
}

TEST(DescendingChains, CountDoesNotDependOnTheChiefSeries) {
  for (auto name : {"C6", "E8", "D6"}) {
    SCOPED_TRACE(name);
    auto f = fixture::build(name);
    const auto &L = f.L();
    long long mu = moebius(L)[L.top()];
    auto all = all_chief_series(L);
    EXPECT_GT(all.size(), 1u);
    for (const auto &s : all) {
      auto d = descending_chains(label_lattice(L, s));
      EXPECT_EQ(static_cast<long long>(d.size()), mu < 0 ? -mu : mu);
      EXPECT_TRUE(check_descending_equals_complements(label_lattice(L, s)).pass);
      EXPECT_TRUE(check_el(label_lattice(L, s)).pass);
    }
  }
}

TEST(MoebiusIdentity, Catalog) {
  const std::pair<const char *, long long> cases[] = {
      {"S3", 3}, {"A4", 4}, {"Q8", 0}, {"C6", 1}, {"S4", -12}, {"E8", -8}, {"D6", -6}};
  for (auto [name, mu] : cases) {
    SCOPED_TRACE(name);
    auto f = fixture::build(name);
    auto series = chief_series(f.L());
    auto v = check_moebius_identity(f.L(), label_lattice(f.L(), series), series);
    EXPECT_TRUE(v.pass);
    EXPECT_EQ(v.mu, mu);
    EXPECT_EQ(v.signed_descending, mu);
    EXPECT_EQ(v.k, series.length());
  }
}

TEST(Projections, Catalog) {
  for (auto name : solvable_catalog)
    for (auto o : {Orientation::primal, Orientation::dual}) {
      SCOPED_TRACE(name);
      auto f = fixture::build(name);
      auto r = check_projection_isomorphisms(label_oriented(f.L(), chief_series(f.L()), o));
      EXPECT_TRUE(r.pass) << (r.failures.empty() ? "" : r.failures.front());
      EXPECT_GT(r.checked, 0u);
    }
}

TEST(Projections, SegmentExample) {
  // [<(1 2 3)>, A4] is a single factor-0 segment, carried onto [1, V4]
  // of the section normalized by A4.
  auto a4 = fixture::build("A4");
  const auto &L = a4.L();
  auto series = chief_series(L);
  auto C3 = a4.sub({"(1 2 3)"});
  auto c = skeleton_chain(L, series, C3, L.top());
  ASSERT_EQ(c.indices, std::vector<std::size_t>{0});
  EXPECT_EQ(interval(L, C3, L.top()).members.size(), 2u);
  EXPECT_EQ(rho(L, series, 0, C3), L.bottom());
  EXPECT_EQ(rho(L, series, 0, L.top()), series[1]);
  EXPECT_EQ(phi(L, series[1], C3, L.top()), L.top());
}

TEST(CoarseSkeleton, AllIntervals) {
  for (auto name : {"S4", "A4", "SL23", "D6", "E8"})
    for (auto o : {Orientation::primal, Orientation::dual}) {
      SCOPED_TRACE(name);
      auto f = fixture::build(name);
      auto labeled = label_oriented(f.L(), chief_series(f.L()), o);
      auto r = check_coarse_skeleton(labeled, checked_intervals(labeled.view()));
      EXPECT_TRUE(r.pass) << (r.failures.empty() ? "" : r.failures.front());
    }
}

TEST(LeftModularEquivalence, Catalog) {
  for (auto name : solvable_catalog) {
    auto f = fixture::build(name);
    auto r = check_left_modular_equivalence(f.L());
    EXPECT_TRUE(r.pass) << name;
    EXPECT_EQ(r.checked, f.L().size());
  }
}

TEST(Property, RandomSolvableGroups) {
  // Two random permutations of small degree; keep solvable groups of
  // moderate order and run every check in both orientations.
  std::mt19937_64 rng(20261016);
  std::size_t tried = 0, kept = 0;
  while (kept < 30 && tried < 2000) {
    ++tried;
    std::size_t n = 3 + rng() % 6;
    std::vector<Permutation> gens;
    for (int g = 0; g < 2; ++g) {
      std::vector<std::uint32_t> img(n);
      std::iota(img.begin(), img.end(), 0u);
      std::shuffle(img.begin(), img.end(), rng);
      gens.emplace_back(img);
    }
    std::optional<Group> G;
    try {
      G = generate_group(gens, n, 96);
    } catch (const CapExceeded &) {
      continue;
    }
    if (!is_solvable(*G) || G->order() < 2)
      continue;
    ++kept;
    GroupSpec spec{"random", n, {gens[0].to_cycles(), gens[1].to_cycles()}};
    SCOPED_TRACE(spec.generators[0] + " " + spec.generators[1]);
    AnalyzeOptions options;
    options.dual = true;
    auto a = analyze(spec, options);
    ASSERT_TRUE(a.verdicts);
    EXPECT_TRUE(a.pass());
    long long signed_count = (a.series.length() % 2 == 0 ? 1 : -1) *
                             static_cast<long long>(a.complements.size());
    EXPECT_EQ(a.mu, signed_count);
    EXPECT_EQ(a.descending, a.dual_descending);
  }
  EXPECT_EQ(kept, 30u);
}
