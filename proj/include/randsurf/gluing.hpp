#pragma once
// The sample space of random surfaces: perfect matchings of the 6N side labels
// of 2N ideal triangles, navigation inside a gluing, and its topology.

#include "randsurf/common.hpp"
#include "randsurf/rng.hpp"
#include "randsurf/word_algebra.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

namespace randsurf {

/// Side label in {1, ..., 6N}; labels 3i-2, 3i-1, 3i bound triangle i.
struct Side {
  std::uint32_t label;

  constexpr std::uint32_t triangle() const noexcept { return (label + 2) / 3; }
  friend constexpr auto operator<=>(Side, Side) = default;
};

using Turn = Letter;

/// Which cyclic neighbour inside a triangle counts as a left turn.
enum class TurnConvention { left_is_successor, left_is_predecessor };

constexpr std::uint32_t successor_label(std::uint32_t s) noexcept { return s % 3 == 0 ? s - 2 : s + 1; }
constexpr std::uint32_t predecessor_label(std::uint32_t s) noexcept { return s % 3 == 1 ? s + 2 : s - 1; }

constexpr std::uint32_t next_label(std::uint32_t s, Turn turn,
                                   TurnConvention conv = TurnConvention::left_is_successor) noexcept {
  const bool successor = (turn == Letter::L) == (conv == TurnConvention::left_is_successor);
  return successor ? successor_label(s) : predecessor_label(s);
}

/// Side through which a path entering by s leaves its triangle after the turn.
constexpr Side next_side(Side s, Turn turn,
                         TurnConvention conv = TurnConvention::left_is_successor) noexcept {
  return Side{next_label(s.label, turn, conv)};
}

/// A perfect matching of {1, ..., 6N}, stored as a flat involution.
class Gluing {
 public:
  /// partner[0] is unused; partner[s] is the side glued to s.
  Gluing(std::uint32_t n_half, std::vector<std::uint32_t> partner)
      : n_half_(n_half), partner_(std::move(partner)) {
    require(n_half_ >= 1, "N must be at least 1");
    require(partner_.size() == label_count() + 1, "partner table must have 6N + 1 entries");
    for (std::uint32_t s = 1; s <= label_count(); ++s) {
      const std::uint32_t p = partner_[s];
      require(p >= 1 && p <= label_count() && p != s && partner_[p] == s,
              "partner table is not a fixed-point-free involution at label " + std::to_string(s));
    }
  }

  static Gluing from_pairs(std::uint32_t n_half,
                           std::span<const std::pair<std::uint32_t, std::uint32_t>> pairs) {
    require(n_half >= 1, "N must be at least 1");
    std::vector<std::uint32_t> partner(6 * static_cast<std::size_t>(n_half) + 1, 0);
    require(pairs.size() == 3 * static_cast<std::size_t>(n_half), "a gluing has exactly 3N pairs");
    for (auto [a, b] : pairs) {
      require(a >= 1 && b >= 1 && a <= 6 * n_half && b <= 6 * n_half && a != b, "invalid pair");
      require(partner[a] == 0 && partner[b] == 0, "label used twice");
      partner[a] = b;
      partner[b] = a;
    }
    return Gluing(n_half, std::move(partner));
  }

  static Gluing from_pairs(std::uint32_t n_half,
                           std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> pairs) {
    return from_pairs(n_half, std::span<const std::pair<std::uint32_t, std::uint32_t>>(pairs.begin(), pairs.size()));
  }

  std::uint32_t n_half() const noexcept { return n_half_; }
  std::uint32_t label_count() const noexcept { return 6 * n_half_; }
  std::uint32_t triangle_count() const noexcept { return 2 * n_half_; }

  Side partner(Side s) const noexcept { return Side{partner_[s.label]}; }
  std::span<const std::uint32_t> partner_table() const noexcept { return partner_; }

  /// Pairs (a, b) with a < b, sorted by a.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    out.reserve(3 * n_half_);
    for (std::uint32_t s = 1; s <= label_count(); ++s)
      if (s < partner_[s]) out.emplace_back(s, partner_[s]);
    return out;
  }

  friend bool operator==(const Gluing&, const Gluing&) = default;

 private:
  std::uint32_t n_half_;
  std::vector<std::uint32_t> partner_;
};

/// partner(next_side(s, turn)): the side by which the next triangle is entered.
inline Side step(const Gluing& g, Side s, Turn turn,
                 TurnConvention conv = TurnConvention::left_is_successor) noexcept {
  return g.partner(next_side(s, turn, conv));
}

/// Uniform over all (6N-1)!! matchings: shuffle the labels, pair neighbours.
/// Fully determined by (seed, index).
inline Gluing sample_uniform_gluing(std::uint32_t n_half, std::uint64_t seed, std::uint64_t index) {
  require(n_half >= 1, "N must be at least 1");
  const std::uint32_t labels = 6 * n_half;
  std::vector<std::uint32_t> perm(labels);
  std::iota(perm.begin(), perm.end(), 1u);
  auto engine = make_stream(seed, index);
  for (std::uint32_t i = labels - 1; i > 0; --i) {
    const auto j = static_cast<std::uint32_t>(uniform_below(engine, i + 1));
    std::swap(perm[i], perm[j]);
  }
  std::vector<std::uint32_t> partner(labels + 1, 0);
  for (std::uint32_t i = 0; i < labels; i += 2) {
    partner[perm[i]] = perm[i + 1];
    partner[perm[i + 1]] = perm[i];
  }
  return Gluing(n_half, std::move(partner));
}

struct ComponentTopology {
  std::uint32_t triangles;
  std::uint32_t cusps;
  std::int64_t euler_characteristic;
  std::int64_t genus;
};

struct TopologyReport {
  bool connected;
  std::uint32_t component_count;
  std::uint32_t cusp_count;
  std::int64_t euler_characteristic;
  std::int64_t total_genus;
  std::vector<std::uint32_t> cusp_degrees;  // sorted ascending
  std::vector<ComponentTopology> components;
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Cusps are the orbits of v(s) = next_side(partner(s), Left); every component
/// is a closed orientable surface with V - E + F = 2 - 2g.
inline TopologyReport topology(const Gluing& g) {
  const std::uint32_t labels = g.label_count();
  const std::uint32_t tris = g.triangle_count();
  const auto partner = g.partner_table();

  detail::UnionFind uf(tris + 1);
  for (std::uint32_t s = 1; s <= labels; ++s) uf.unite(Side{s}.triangle(), Side{partner[s]}.triangle());

  std::vector<std::int64_t> component_of(tris + 1, -1);
  std::vector<ComponentTopology> comps;
  for (std::uint32_t t = 1; t <= tris; ++t) {
    const std::size_t root = uf.find(t);
    if (component_of[root] < 0) {
      component_of[root] = static_cast<std::int64_t>(comps.size());
      comps.push_back({0, 0, 0, 0});
    }
    ++comps[static_cast<std::size_t>(component_of[root])].triangles;
  }

  TopologyReport report{};
  std::vector<bool> seen(labels + 1, false);
  for (std::uint32_t s = 1; s <= labels; ++s) {
    if (seen[s]) continue;
    std::uint32_t degree = 0;
    for (std::uint32_t x = s; !seen[x]; x = successor_label(partner[x])) {
      seen[x] = true;
      ++degree;
    }
    report.cusp_degrees.push_back(degree);
    ++comps[static_cast<std::size_t>(component_of[uf.find(Side{s}.triangle())])].cusps;
  }
  std::sort(report.cusp_degrees.begin(), report.cusp_degrees.end());

  for (auto& c : comps) {
    // each triangle has 3 sides and each edge joins 2 sides
    const std::int64_t faces = c.triangles;
    const std::int64_t edges = 3 * static_cast<std::int64_t>(c.triangles) / 2;
    c.euler_characteristic = static_cast<std::int64_t>(c.cusps) - edges + faces;
    c.genus = (2 - c.euler_characteristic) / 2;
    report.euler_characteristic += c.euler_characteristic;
    report.total_genus += c.genus;
  }
  report.component_count = static_cast<std::uint32_t>(comps.size());
  report.connected = comps.size() == 1;
  report.cusp_count = static_cast<std::uint32_t>(report.cusp_degrees.size());
  report.components = std::move(comps);
  return report;
}

}  // namespace randsurf
