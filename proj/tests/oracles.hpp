#pragma once

// Brute-force reference computations for the test suite. Nothing here uses
// the library's group tables, lattice, or labeling code: groups are closed
// over raw image vectors, subgroups are found by testing every element
// subset for closure, and lattice quantities are computed from masks.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Images = std::vector<int>;
using Mask = std::uint64_t;

inline Images compose(const Images &a, const Images &b) {
  Images r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = b[a[i]];
  return r;
}

struct Table {
  std::vector<Images> elements;  // sorted
  std::vector<std::vector<int>> mul;
  int identity = 0;

  int size() const { return static_cast<int>(elements.size()); }
};

/// Closure of the generators by repeated multiplication until no new
/// element appears.
inline Table closure(const std::vector<Images> &gens, int degree) {
  Images id(degree);
  for (int i = 0; i < degree; ++i)
    id[i] = i;
  std::set<Images> all{id};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Images> snapshot(all.begin(), all.end());
    for (const auto &x : snapshot)
      for (const auto &g : gens)
        if (all.insert(compose(x, g)).second)
          grew = true;
  }
  Table t;
  t.elements.assign(all.begin(), all.end());
  std::map<Images, int> index;
  for (int i = 0; i < t.size(); ++i)
    index[t.elements[i]] = i;
  t.identity = index[id];
  t.mul.assign(t.size(), std::vector<int>(t.size()));
  for (int a = 0; a < t.size(); ++a)
    for (int b = 0; b < t.size(); ++b)
      t.mul[a][b] = index[compose(t.elements[a], t.elements[b])];
  return t;
}

inline bool closed(const Table &t, Mask m) {
  for (int a = 0; a < t.size(); ++a) {
    if (!(m >> a & 1))
      continue;
    for (int b = 0; b < t.size(); ++b)
      if ((m >> b & 1) && !(m >> t.mul[a][b] & 1))
        return false;
  }
  return true;
}

/// Every subset of the group that contains the identity and is closed
/// under multiplication (finite, so closed under inverses). Only for
/// groups of order <= 24.
inline std::vector<Mask> subset_subgroups(const Table &t) {
  const int n = t.size();
  std::vector<Mask> out;
  std::vector<int> others;
  for (int i = 0; i < n; ++i)
    if (i != t.identity)
      others.push_back(i);
  const Mask limit = Mask{1} << others.size();
  for (Mask bits = 0; bits < limit; ++bits) {
    int order = std::popcount(bits) + 1;
    if (n % order != 0)
      continue;
    Mask m = Mask{1} << t.identity;
    for (std::size_t j = 0; j < others.size(); ++j)
      if (bits >> j & 1)
        m |= Mask{1} << others[j];
    if (closed(t, m))
      out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

inline std::size_t cover_count(const std::vector<Mask> &subs) {
  std::size_t n = 0;
  for (auto a : subs)
    for (auto b : subs) {
      if (a == b || !subset(a, b))
        continue;
      bool cover = true;
      for (auto c : subs)
        if (c != a && c != b && subset(a, c) && subset(c, b))
          cover = false;
      n += cover;
    }
  return n;
}

/// Philip Hall: mu(0, 1) = sum over strict chains 0 = x_0 < ... < x_r = 1
/// of (-1)^r, by explicit enumeration of the chains.
inline long long hall_moebius(const std::vector<Mask> &subs) {
  Mask bottom = subs.front(), top = subs.front();
  for (auto s : subs) {
    if (std::popcount(s) < std::popcount(bottom))
      bottom = s;
    if (std::popcount(s) > std::popcount(top))
      top = s;
  }
  if (bottom == top)
    return 1;
  long long total = 0;
  auto walk = [&](auto &self, Mask cur, int len) -> void {
    if (cur == top) {
      total += len % 2 == 0 ? 1 : -1;
      return;
    }
    for (auto s : subs)
      if (s != cur && subset(cur, s))
        self(self, s, len + 1);
  };
  walk(walk, bottom, 0);
  return total;
}

inline Mask join(const Table &t, Mask a, Mask b) {
  Mask m = a | b;
  for (;;) {
    Mask next = m;
    for (int x = 0; x < t.size(); ++x)
      if (m >> x & 1)
        for (int y = 0; y < t.size(); ++y)
          if (m >> y & 1)
            next |= Mask{1} << t.mul[x][y];
    if (next == m)
      return m;
    m = next;
  }
}

inline bool normal(const Table &t, Mask h) {
  for (int g = 0; g < t.size(); ++g) {
    int ginv = 0;
    while (t.mul[g][ginv] != t.identity)
      ++ginv;
    for (int x = 0; x < t.size(); ++x)
      if ((h >> x & 1) && !(h >> t.mul[t.mul[g][x]][ginv] & 1))
        return false;
  }
  return true;
}

/// H complements N when H ∩ N = 1 and |H| |N| = |G|.
inline bool complement(const Table &t, Mask h, Mask n) {
  return std::popcount(h & n) == 1 && std::popcount(h) * std::popcount(n) == t.size();
}

/// All chains 1 = H_k < ... < H_0 = G with H_i complementing series[i],
/// each listed from H_k up to H_0.
inline std::vector<std::vector<Mask>> complement_chains(const Table &t,
                                                        const std::vector<Mask> &subs,
                                                        const std::vector<Mask> &series) {
  const std::size_t k = series.size() - 1;
  std::vector<std::vector<Mask>> out;
  std::vector<std::vector<Mask>> candidates(k + 1);
  for (std::size_t i = 0; i <= k; ++i)
    for (auto h : subs)
      if (complement(t, h, series[i]))
        candidates[i].push_back(h);
  std::vector<Mask> path;
  auto pick = [&](auto &self, std::size_t i) -> void {
    if (i > k) {
      out.emplace_back(path.rbegin(), path.rend());
      return;
    }
    for (auto h : candidates[i])
      if (path.empty() || (subset(h, path.back()) && h != path.back())) {
        path.push_back(h);
        self(self, i + 1);
        path.pop_back();
      }
  };
  pick(pick, 0);
  return out;
}

} // namespace oracle
