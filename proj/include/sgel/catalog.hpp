#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "group.hpp"
#include "permutation.hpp"

namespace sgel {

/// A group given by degree and generators in cycle notation (1-based).
/// `name` is the catalog identifier, or the raw spec text.
struct GroupSpec {
  std::string name;
  std::size_t degree = 1;
  std::vector<std::string> generators;
};

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::string cycle(std::size_t first, std::size_t last) {
  std::string out = "(";
  for (auto p = first; p <= last; ++p) {
    if (p != first)
      out += ' ';
    out += std::to_string(p);
  }
  return out + ")";
}

/// Splits on commas that are not inside parentheses or brackets.
inline std::vector<std::string> split_top_level(std::string_view text) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char ch : text) {
    if (ch == '(' || ch == '[')
      ++depth;
    else if (ch == ')' || ch == ']')
      --depth;
    if (depth < 0)
      throw ParseError("unbalanced brackets in \"" + std::string(text) + "\"");
    if (ch == ',' && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0)
    throw ParseError("unbalanced brackets in \"" + std::string(text) + "\"");
  parts.push_back(trim(cur));
  return parts;
}

inline std::size_t parse_count(std::string_view digits, std::string_view context) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size())
    throw ParseError("expected a number in \"" + std::string(context) + "\"");
  return value;
}

} // namespace detail

/// Comma-separated generators, e.g. "(1 2),(1 2 3 4)". Empty text gives
/// no generators.
inline std::vector<Permutation> parse_generators(std::string_view text, std::size_t degree) {
  std::vector<Permutation> out;
  if (detail::trim(text).empty())
    return out;
  for (const auto &part : detail::split_top_level(text))
    out.push_back(parse_permutation(part, degree));
  return out;
}

/// Catalog: C<n>, D<n> (dihedral of order 2n), S<n>, A<n>, Q8, V4,
/// E8 (= C2^3) and SL23 (SL(2,3) acting on the 8 nonzero vectors of F_3^2).
inline GroupSpec resolve_catalog(std::string_view name) {
  const std::string n(name);
  if (n == "Q8")
    return {n, 8, {"(1 3 2 4)(5 7 6 8)", "(1 5 2 6)(3 8 4 7)"}};
  if (n == "V4")
    return {n, 4, {"(1 2)(3 4)", "(1 3)(2 4)"}};
  if (n == "E8")
    return {n, 6, {"(1 2)", "(3 4)", "(5 6)"}};
  if (n == "SL23")
    return {n, 8, {"(1 4 7)(2 8 5)", "(3 4 5)(6 8 7)"}};
  if (n.size() < 2)
    throw InvalidArgument("unknown catalog group \"" + n + "\"");

  char family = n.front();
  std::size_t p = 0;
  try {
    p = detail::parse_count(std::string_view(n).substr(1), n);
  } catch (const ParseError &) {
    throw InvalidArgument("unknown catalog group \"" + n + "\"");
  }
  auto out_of_range = [&](const char *range) {
    return InvalidArgument("parameter of \"" + n + "\" outside supported range " + range);
  };

  switch (family) {
  case 'C':
    if (p < 1 || p > 4096)
      throw out_of_range("1..4096");
    if (p == 1)
      return {n, 1, {}};
    return {n, p, {detail::cycle(1, p)}};
  case 'D':
    if (p < 2 || p > 2048)
      throw out_of_range("2..2048");
    if (p == 2)
      return {n, 4, {"(1 2)(3 4)", "(1 3)(2 4)"}};
    {
      std::string reflection;
      for (std::size_t a = 1, b = p; a < b; ++a, --b)
        reflection += "(" + std::to_string(a) + " " + std::to_string(b) + ")";
      return {n, p, {detail::cycle(1, p), reflection}};
    }
  case 'S':
    if (p < 1 || p > 10)
      throw out_of_range("1..10");
    if (p == 1)
      return {n, 1, {}};
    if (p == 2)
      return {n, 2, {"(1 2)"}};
    return {n, p, {"(1 2)", detail::cycle(1, p)}};
  case 'A':
    if (p < 1 || p > 10)
      throw out_of_range("1..10");
    if (p < 3)
      return {n, p, {}};
    {
      GroupSpec s{n, p, {}};
      for (std::size_t k = 3; k <= p; ++k)
        s.generators.push_back("(1 2 " + std::to_string(k) + ")");
      return s;
    }
  default:
    throw InvalidArgument("unknown catalog group \"" + n + "\"");
  }
}

/// Either a catalog name or raw text "degree=<n>; gens=<perm>,<perm>,...".
inline GroupSpec parse_group_spec(std::string_view text) {
  std::string t = detail::trim(text);
  if (t.rfind("degree", 0) != 0)
    return resolve_catalog(t);

  auto semi = t.find(';');
  if (semi == std::string::npos)
    throw ParseError("expected \"degree=<n>; gens=...\" in \"" + t + "\"");
  std::string left = detail::trim(std::string_view(t).substr(0, semi));
  std::string right = detail::trim(std::string_view(t).substr(semi + 1));
  auto eq = left.find('=');
  if (eq == std::string::npos || detail::trim(std::string_view(left).substr(0, eq)) != "degree")
    throw ParseError("expected \"degree=<n>\" in \"" + t + "\"");
  std::size_t degree = detail::parse_count(detail::trim(std::string_view(left).substr(eq + 1)), t);
  if (degree == 0)
    throw ParseError("degree must be positive in \"" + t + "\"");
  auto geq = right.find('=');
  if (geq == std::string::npos || detail::trim(std::string_view(right).substr(0, geq)) != "gens")
    throw ParseError("expected \"gens=...\" in \"" + t + "\"");

  GroupSpec spec{t, degree, {}};
  for (const auto &g : parse_generators(std::string_view(right).substr(geq + 1), degree))
    spec.generators.push_back(g.to_cycles());
  return spec;
}

inline Group build_group(const GroupSpec &spec, std::size_t max_order = default_max_order) {
  std::vector<Permutation> gens;
  for (const auto &g : spec.generators)
    gens.push_back(parse_permutation(g, spec.degree));
  return generate_group(gens, spec.degree, max_order);
}

} // namespace sgel
