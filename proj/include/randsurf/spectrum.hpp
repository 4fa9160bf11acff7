#pragma once
// Closed traversal cycles of a gluing and the class counts Z_[w](omega).

#include "randsurf/common.hpp"
#include "randsurf/gluing.hpp"
#include "randsurf/word_algebra.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace randsurf {

inline constexpr std::size_t kMaxCycleLength = 16;

/// A closed sequence of (entered side, turn) pairs: entering triangle j by
/// entered_sides[j] and turning turns[j] leads into entered_sides[j + 1].
struct TraversalCycle {
  std::vector<Side> entered_sides;
  std::vector<Turn> turns;

  Word word() const { return Word(turns); }
  std::size_t size() const noexcept { return turns.size(); }
};

struct SpectrumReport {
  std::uint32_t n_half;
  std::size_t max_word_length;
  std::map<WordClass, std::uint64_t> counts;  // classes with a positive count
  std::optional<double> shortest_geodesic_length;
  TopologyReport topology;

  std::uint64_t count(const WordClass& cls) const {
    const auto it = counts.find(cls);
    return it == counts.end() ? 0 : it->second;
  }
};

namespace detail {

// Pair (s, t) is encoded as 2s + [t == R]; cycles are compared through these codes.
inline std::uint32_t pair_code(std::uint32_t side, Turn t) noexcept {
  return 2 * side + (t == Letter::R ? 1u : 0u);
}

// Depth-first search over closed traversal cycles of length <= max_len. Only
// the lexicographically least member of each rotation/reversal orbit of a cycle
// is reported, so every cycle class is seen exactly once. A partial sequence is
// abandoned as soon as one of its codes (or reversed codes) undercuts the first.
class CycleSearch {
 public:
  CycleSearch(const Gluing& g, std::size_t max_len, TurnConvention conv)
      : partner_(g.partner_table()), labels_(g.label_count()), max_len_(max_len), conv_(conv) {}

  // Guide: guide.allow(node, turn) -> optional next node; guide.accept(node) -> bool.
  // on_cycle(sides, turns, length, node) is called for each canonical closed cycle.
  template <class Guide, class OnCycle>
  void run(const Guide& guide, OnCycle&& on_cycle) {
    for (std::uint32_t s = 1; s <= labels_; ++s) {
      start_ = s;
      for (Turn t : {Letter::L, Letter::R}) {
        start_code_ = pair_code(s, t);
        extend(0, s, t, guide, guide.root(), on_cycle);
      }
    }
  }

 private:
  template <class Guide, class OnCycle>
  void extend(std::size_t depth, std::uint32_t side, Turn t, const Guide& guide, std::int32_t node,
              OnCycle& on_cycle) {
    const auto next_node = guide.allow(node, t);
    if (!next_node) return;
    const std::uint32_t exit = next_label(side, t, conv_);
    const std::uint32_t code = pair_code(side, t);
    const std::uint32_t back = pair_code(exit, swapped(t));
    if (code < start_code_ || back < start_code_) return;
    sides_[depth] = side;
    turns_[depth] = t;
    codes_[depth] = code;
    back_codes_[depth] = back;
    const std::size_t len = depth + 1;
    const std::uint32_t entered = partner_[exit];
    if (entered == start_ && guide.accept(*next_node) && is_canonical(len))
      on_cycle(sides_, turns_, len, *next_node);
    if (len < max_len_) {
      extend(len, entered, Letter::L, guide, *next_node, on_cycle);
      extend(len, entered, Letter::R, guide, *next_node, on_cycle);
    }
  }

  // codes_[0..len) must not exceed any rotation of itself or of its reversal.
  bool is_canonical(std::size_t len) const {
    for (std::size_t r = 1; r < len; ++r)
      if (compare_rotation(codes_.data(), len, r, false) > 0) return false;
    for (std::size_t r = 0; r < len; ++r)
      if (compare_rotation(back_codes_.data(), len, r, true) > 0) return false;
    return true;
  }

  // Compares codes_ against rotation r of seq (read backwards when reversed).
  int compare_rotation(const std::uint32_t* seq, std::size_t len, std::size_t r, bool reversed) const {
    for (std::size_t i = 0; i < len; ++i) {
      const std::size_t j = (r + i) % len;
      const std::uint32_t other = reversed ? seq[len - 1 - j] : seq[j];
      if (codes_[i] != other) return codes_[i] < other ? -1 : 1;
    }
    return 0;
  }

  std::span<const std::uint32_t> partner_;
  std::uint32_t labels_;
  std::size_t max_len_;
  TurnConvention conv_;
  std::uint32_t start_ = 0;
  std::uint32_t start_code_ = 0;
  std::array<std::uint32_t, kMaxCycleLength> sides_{};
  std::array<Turn, kMaxCycleLength> turns_{};
  std::array<std::uint32_t, kMaxCycleLength> codes_{};
  std::array<std::uint32_t, kMaxCycleLength> back_codes_{};
};

struct Unrestricted {
  std::int32_t root() const { return 0; }
  std::optional<std::int32_t> allow(std::int32_t, Turn) const { return 0; }
  bool accept(std::int32_t) const { return true; }
};

// Prefix tree over every orbit member of the requested classes.
class OrbitTrie {
 public:
  explicit OrbitTrie(const std::vector<WordClass>& classes) {
    nodes_.push_back({});
    for (std::size_t idx = 0; idx < classes.size(); ++idx) {
      const Word& w = classes[idx].canonical;
      const Word back = w.reverse_swapped();
      for (std::size_t r = 0; r < w.size(); ++r) {
        insert(w.rotated(r), static_cast<std::int32_t>(idx));
        insert(back.rotated(r), static_cast<std::int32_t>(idx));
      }
    }
  }

  std::int32_t root() const { return 0; }
  std::optional<std::int32_t> allow(std::int32_t node, Turn t) const {
    const std::int32_t child = nodes_[static_cast<std::size_t>(node)].child[t == Letter::R];
    if (child < 0) return std::nullopt;
    return child;
  }
  bool accept(std::int32_t node) const { return nodes_[static_cast<std::size_t>(node)].class_index >= 0; }
  std::size_t class_index(std::int32_t node) const {
    return static_cast<std::size_t>(nodes_[static_cast<std::size_t>(node)].class_index);
  }

 private:
  struct Node {
    std::array<std::int32_t, 2> child{-1, -1};
    std::int32_t class_index = -1;
  };

  void insert(const Word& w, std::int32_t idx) {
    std::size_t node = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::size_t slot = w[i] == Letter::R ? 1 : 0;
      if (nodes_[node].child[slot] < 0) {
        nodes_[node].child[slot] = static_cast<std::int32_t>(nodes_.size());
        nodes_.push_back({});
      }
      node = static_cast<std::size_t>(nodes_[node].child[slot]);
    }
    nodes_[node].class_index = idx;
  }

  std::vector<Node> nodes_;
};

}  // namespace detail

/// One representative per class of closed traversal cycles of length <= m.
inline std::vector<TraversalCycle> enumerate_cycles(const Gluing& g, std::size_t m,
                                                    TurnConvention conv = TurnConvention::left_is_successor) {
  require(m >= 1 && m <= kMaxCycleLength, "max word length must lie in [1, 16]");
  std::vector<TraversalCycle> out;
  detail::CycleSearch search(g, m, conv);
  search.run(detail::Unrestricted{}, [&](const auto& sides, const auto& turns, std::size_t len, std::int32_t) {
    TraversalCycle c;
    for (std::size_t i = 0; i < len; ++i) {
      c.entered_sides.push_back(Side{sides[i]});
      c.turns.push_back(turns[i]);
    }
    out.push_back(std::move(c));
  });
  return out;
}

/// Z_[w](omega) for every class of length <= m, plus topology and the shortest
/// geodesic length among the classes found.
inline SpectrumReport count_cycles(const Gluing& g, std::size_t m,
                                   TurnConvention conv = TurnConvention::left_is_successor) {
  require(m >= 1 && m <= kMaxCycleLength, "max word length must lie in [1, 16], got " + std::to_string(m));
  SpectrumReport report{g.n_half(), m, {}, std::nullopt, topology(g)};
  std::unordered_map<std::string, std::uint64_t> raw;
  detail::CycleSearch search(g, m, conv);
  search.run(detail::Unrestricted{}, [&](const auto&, const auto& turns, std::size_t len, std::int32_t) {
    std::string w(len, 'L');
    for (std::size_t i = 0; i < len; ++i) w[i] = static_cast<char>(turns[i]);
    ++raw[w];
  });
  for (const auto& [letters, n] : raw) report.counts[canonicalize(Word(letters))] += n;
  for (const auto& [cls, n] : report.counts) {
    if (cls.parabolic() || n == 0) continue;
    const double len = cls.length();
    if (!report.shortest_geodesic_length || len < *report.shortest_geodesic_length)
      report.shortest_geodesic_length = len;
  }
  return report;
}

/// Z_W(omega) in the order of `classes`; only turn sequences that can still
/// spell a member of one of the classes are explored.
inline std::vector<std::uint64_t> count_vector(const Gluing& g, const std::vector<WordClass>& classes,
                                               TurnConvention conv = TurnConvention::left_is_successor) {
  std::vector<std::uint64_t> out(classes.size(), 0);
  if (classes.empty()) return out;
  const std::size_t m = max_word_length(classes);
  require(m <= kMaxCycleLength, "classes longer than 16 letters are not countable");
  const detail::OrbitTrie trie(classes);
  detail::CycleSearch search(g, m, conv);
  search.run(trie, [&](const auto&, const auto&, std::size_t, std::int32_t node) { ++out[trie.class_index(node)]; });
  return out;
}

}  // namespace randsurf
