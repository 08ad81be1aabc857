#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace sgel {

/// A bijection on {0, ..., degree-1}. Points are 0-based internally and
/// 1-based in every textual form.
class Permutation {
public:
  using point_type = std::uint32_t;

  Permutation() = default;

  explicit Permutation(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), point_type{0});
  }

  /// Throws InvalidArgument unless `images` is a bijection.
  explicit Permutation(std::vector<point_type> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (auto p : images_) {
      if (p >= images_.size() || seen[p])
        throw InvalidArgument("image list is not a bijection");
      seen[p] = true;
    }
  }

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  std::size_t degree() const { return images_.size(); }
  point_type operator[](std::size_t point) const { return images_[point]; }
  const std::vector<point_type> &images() const { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        return false;
    return true;
  }

  /// Left-to-right product: `(a * b)` applies `a` first, then `b`.
  friend Permutation operator*(const Permutation &a, const Permutation &b) {
    Permutation r;
    r.images_.resize(a.degree());
    for (std::size_t i = 0; i < a.degree(); ++i)
      r.images_[i] = b.images_[a.images_[i]];
    return r;
  }

  Permutation inverse() const {
    Permutation r;
    r.images_.resize(degree());
    for (std::size_t i = 0; i < degree(); ++i)
      r.images_[images_[i]] = static_cast<point_type>(i);
    return r;
  }

  std::size_t order() const {
    Permutation p = *this;
    std::size_t n = 1;
    while (!p.is_identity()) {
      p = p * *this;
      ++n;
    }
    return n;
  }

  /// Disjoint-cycle notation with 1-based points, "()" for the identity.
  std::string to_cycles() const {
    std::string out;
    std::vector<bool> seen(degree(), false);
    for (std::size_t start = 0; start < degree(); ++start) {
      if (seen[start] || images_[start] == start)
        continue;
      out += '(';
      for (auto p = static_cast<point_type>(start); !seen[p]; p = images_[p]) {
        if (p != start)
          out += ' ';
        out += std::to_string(p + 1);
        seen[p] = true;
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  friend auto operator<=>(const Permutation &, const Permutation &) = default;
  friend bool operator==(const Permutation &, const Permutation &) = default;

private:
  std::vector<point_type> images_;
};

/// Parses disjoint-cycle notation such as "(1 2 3)(4 5)" over points
/// 1..degree. Points inside a cycle may be separated by spaces or commas.
inline Permutation parse_permutation(std::string_view text, std::size_t degree) {
  if (degree == 0)
    throw ParseError("degree must be positive");
  std::vector<Permutation::point_type> images(degree);
  std::iota(images.begin(), images.end(), Permutation::point_type{0});
  std::vector<bool> used(degree, false);

  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t'))
      ++pos;
  };

  skip_space();
  if (pos == text.size())
    throw ParseError("empty permutation text");

  while (pos < text.size()) {
    if (text[pos] != '(')
      throw ParseError("expected '(' in \"" + std::string(text) + "\"");
    ++pos;
    std::vector<Permutation::point_type> cycle;
    for (;;) {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == ',' || text[pos] == '\t'))
        ++pos;
      if (pos == text.size())
        throw ParseError("unterminated cycle in \"" + std::string(text) + "\"");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] < '0' || text[pos] > '9')
        throw ParseError("unexpected character '" + std::string(1, text[pos]) + "' in \"" +
                         std::string(text) + "\"");
      std::size_t value = 0;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        value = value * 10 + static_cast<std::size_t>(text[pos] - '0');
        if (value > degree)
          break;
        ++pos;
      }
      if (value == 0 || value > degree)
        throw ParseError("point out of range 1.." + std::to_string(degree) + " in \"" +
                         std::string(text) + "\"");
      auto point = static_cast<Permutation::point_type>(value - 1);
      if (used[point])
        throw ParseError("point " + std::to_string(value) + " repeated in \"" +
                         std::string(text) + "\"");
      used[point] = true;
      cycle.push_back(point);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
      images[cycle[i]] = cycle[(i + 1) % cycle.size()];
    skip_space();
  }
  return Permutation(std::move(images));
}

} // namespace sgel
