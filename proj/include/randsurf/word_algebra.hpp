#pragma once
// Words in the letters L and R, their SL(2,Z) matrices, traces, lengths and
// equivalence classes under rotation and reverse-with-swap.

#include "randsurf/common.hpp"

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace randsurf {

enum class Letter : char { L = 'L', R = 'R' };

constexpr Letter swapped(Letter x) noexcept { return x == Letter::L ? Letter::R : Letter::L; }

/// Nonempty string over {L, R}. Ordered lexicographically with L < R.
class Word {
 public:
  Word() = delete;

  explicit Word(std::string_view letters) : letters_(letters) {
    require(!letters_.empty(), "word must be nonempty");
    for (char c : letters_)
      require(c == 'L' || c == 'R', "word letters must be L or R, got '" + letters_ + "'");
  }

  explicit Word(const std::vector<Letter>& letters) {
    require(!letters.empty(), "word must be nonempty");
    letters_.reserve(letters.size());
    for (Letter x : letters) letters_.push_back(static_cast<char>(x));
  }

  std::size_t size() const noexcept { return letters_.size(); }
  Letter operator[](std::size_t i) const noexcept { return static_cast<Letter>(letters_[i]); }
  const std::string& str() const noexcept { return letters_; }

  bool uses_one_letter() const noexcept {
    return letters_.find_first_not_of(letters_.front()) == std::string::npos;
  }

  Word rotated(std::size_t shift) const {
    shift %= size();
    return Word(unchecked, letters_.substr(shift) + letters_.substr(0, shift));
  }

  /// Reads the word backwards with L and R interchanged (reversed traversal).
  Word reverse_swapped() const {
    std::string out(letters_.rbegin(), letters_.rend());
    for (char& c : out) c = (c == 'L') ? 'R' : 'L';
    return Word(unchecked, std::move(out));
  }

  /// Letterwise L <-> R, keeping the order.
  Word mirrored() const {
    std::string out = letters_;
    for (char& c : out) c = (c == 'L') ? 'R' : 'L';
    return Word(unchecked, std::move(out));
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.letters_ <=> b.letters_; }

 private:
  struct Unchecked {};
  static constexpr Unchecked unchecked{};
  Word(Unchecked, std::string letters) : letters_(std::move(letters)) {}

  std::string letters_;
};

/// 2x2 matrix [[a, b], [c, d]] with arbitrary-precision entries.
struct WordMatrix {
  BigInt a, b, c, d;

  BigInt trace() const { return a + d; }
  BigInt determinant() const { return a * d - b * c; }
  friend bool operator==(const WordMatrix&, const WordMatrix&) = default;
};

/// Ordered product of L = [[1,1],[0,1]] and R = [[1,0],[1,1]].
inline WordMatrix matrix_of_word(const Word& w) {
  WordMatrix m{1, 0, 0, 1};
  for (std::size_t i = 0; i < w.size(); ++i) {
    // right-multiplication by L adds column 1 to column 2, by R column 2 to column 1
    if (w[i] == Letter::L) {
      m.b += m.a;
      m.d += m.c;
    } else {
      m.a += m.b;
      m.c += m.d;
    }
  }
  return m;
}

namespace detail {

// Entries of a length-n word matrix are bounded by Fibonacci(n + 1), which fits
// 64 bits for n <= 91.
inline constexpr std::size_t kFastTraceMaxLength = 88;

inline std::uint64_t fast_trace(std::string_view letters) {
  std::uint64_t a = 1, b = 0, c = 0, d = 1;
  for (char x : letters) {
    if (x == 'L') {
      b += a;
      d += c;
    } else {
      a += b;
      c += d;
    }
  }
  return a + d;
}

}  // namespace detail

inline BigInt trace_of_word(const Word& w) {
  if (w.size() <= detail::kFastTraceMaxLength) return BigInt(detail::fast_trace(w.str()));
  return matrix_of_word(w).trace();
}

struct HyperbolicLength {
  double length;
  bool parabolic;
};

/// 2 arccosh(tr / 2); parabolic exactly when tr = 2.
inline HyperbolicLength length_from_trace(const BigInt& trace) {
  if (trace == 2) return {0.0, true};
  const std::size_t bits = boost::multiprecision::msb(trace) + 1;
  if (bits < 1000) {
    const double t = trace.convert_to<double>();
    return {2.0 * std::acosh(t / 2.0), false};
  }
  // 2 arccosh(t/2) = 2 log t - O(1/t^2); t is far beyond double range here.
  const std::size_t drop = bits - 60;
  const double top = BigInt(trace >> drop).convert_to<double>();
  return {2.0 * (std::log(top) + static_cast<double>(drop) * std::log(2.0)), false};
}

inline HyperbolicLength hyperbolic_length(const Word& w) { return length_from_trace(trace_of_word(w)); }

/// Equivalence class [w] with its canonical (lexicographically least) member.
struct WordClass {
  Word canonical;
  std::size_t class_size;
  std::size_t word_length;
  BigInt trace;
  Rational lambda;  // class_size / (2 * word_length)

  bool parabolic() const { return trace == 2; }
  double length() const { return length_from_trace(trace).length; }

  friend bool operator==(const WordClass& a, const WordClass& b) { return a.canonical == b.canonical; }
  friend auto operator<=>(const WordClass& a, const WordClass& b) {
    if (auto c = a.word_length <=> b.word_length; c != 0) return c;
    return a.canonical <=> b.canonical;
  }
};

inline WordClass make_class(Word canonical, std::size_t class_size, BigInt trace) {
  const std::size_t n = canonical.size();
  return WordClass{std::move(canonical), class_size, n, std::move(trace),
                   Rational(BigInt(class_size), BigInt(2 * n))};
}

/// Lists the orbit explicitly: every rotation of w and of reverse_swapped(w).
inline WordClass canonicalize(const Word& w) {
  std::set<Word> orbit;
  const Word back = w.reverse_swapped();
  for (std::size_t i = 0; i < w.size(); ++i) {
    orbit.insert(w.rotated(i));
    orbit.insert(back.rotated(i));
  }
  return make_class(*orbit.begin(), orbit.size(), trace_of_word(w));
}

namespace detail {

// Start index of the lexicographically least rotation, O(n).
inline std::size_t least_rotation(std::string_view s) {
  const std::size_t n = s.size();
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    const char a = s[(i + k) % n];
    const char b = s[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b)
      i += k + 1;
    else
      j += k + 1;
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

inline std::string least_rotation_of(std::string_view s) {
  const std::size_t r = least_rotation(s);
  std::string out;
  out.reserve(s.size());
  out.append(s.substr(r));
  out.append(s.substr(0, r));
  return out;
}

// Calls visit(letters, period) for each binary necklace of length n in
// lexicographic order (FKM algorithm); period is the length of its primitive root.
template <class Visit>
void for_each_necklace(std::size_t n, Visit&& visit) {
  std::string a(n + 1, 'L');  // a[0] unused
  std::function<void(std::size_t, std::size_t)> gen = [&](std::size_t t, std::size_t p) {
    if (t > n) {
      if (n % p == 0) visit(std::string_view(a).substr(1), p);
      return;
    }
    a[t] = a[t - p];
    gen(t + 1, p);
    if (a[t - p] == 'L') {
      a[t] = 'R';
      gen(t + 1, t);
    }
  };
  gen(1, 1);
}

// Visits every class of words of length n exactly once, via its canonical member.
template <class Visit>
void for_each_class_of_length(std::size_t n, Visit&& visit) {
  for_each_necklace(n, [&](std::string_view necklace, std::size_t period) {
    std::string back(necklace.rbegin(), necklace.rend());
    for (char& c : back) c = (c == 'L') ? 'R' : 'L';
    const std::string back_min = least_rotation_of(back);
    const auto cmp = std::string_view(necklace) <=> std::string_view(back_min);
    if (cmp > 0) return;
    visit(necklace, cmp == 0 ? period : 2 * period);
  });
}

}  // namespace detail

inline constexpr std::size_t kMaxEnumerationLength = 30;
inline constexpr std::size_t kMaxCensusTrace = 25;

/// All classes of length <= m_max, sorted by (word_length, canonical).
inline std::vector<WordClass> enumerate_classes_by_length(std::size_t m_max) {
  require(m_max >= 1 && m_max <= kMaxEnumerationLength,
          "max word length must lie in [1, 30], got " + std::to_string(m_max));
  std::vector<WordClass> out;
  for (std::size_t n = 1; n <= m_max; ++n) {
    detail::for_each_class_of_length(n, [&](std::string_view letters, std::size_t size) {
      Word w(letters);
      BigInt tr = trace_of_word(w);
      out.push_back(make_class(std::move(w), size, std::move(tr)));
    });
  }
  return out;
}

/// W(k): geodesic classes (trace >= 3) with trace <= k.
struct TraceCensus {
  std::uint64_t max_trace;
  std::vector<WordClass> classes;
  std::size_t count;

  std::size_t max_word_length() const {
    std::size_t m = 0;
    for (const auto& c : classes) m = std::max(m, c.word_length);
    return m;
  }
};

/// Words of trace <= k have length <= k - 1, since tr >= |w| + 1 once both
/// letters occur; the parabolic classes [L^n] are left out.
inline TraceCensus enumerate_classes_by_trace(std::uint64_t k) {
  require(k >= 3 && k <= kMaxCensusTrace, "max trace must lie in [3, 25], got " + std::to_string(k));
  TraceCensus census{k, {}, 0};
  for (std::size_t n = 2; n + 1 <= k; ++n) {
    detail::for_each_class_of_length(n, [&](std::string_view letters, std::size_t size) {
      const std::uint64_t tr = detail::fast_trace(letters);
      if (tr < 3 || tr > k) return;
      census.classes.push_back(make_class(Word(letters), size, BigInt(tr)));
    });
  }
  census.count = census.classes.size();
  return census;
}

inline std::size_t max_word_length(const std::vector<WordClass>& classes) {
  std::size_t m = 0;
  for (const auto& c : classes) m = std::max(m, c.word_length);
  return m;
}

inline std::size_t max_class_size(const std::vector<WordClass>& classes) {
  std::size_t c = 0;
  for (const auto& x : classes) c = std::max(c, x.class_size);
  return c;
}

/// Parses a comma-separated list of words into their (deduplicated) classes,
/// preserving first-seen order.
inline std::vector<WordClass> parse_class_list(std::string_view text) {
  std::vector<WordClass> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    std::string_view item = text.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    WordClass cls = canonicalize(Word(item));
    if (std::find(out.begin(), out.end(), cls) == out.end()) out.push_back(std::move(cls));
    start = end + 1;
  }
  return out;
}

}  // namespace randsurf
