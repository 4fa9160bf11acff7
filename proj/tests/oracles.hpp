#pragma once
// Slow, independent reference implementations used only by the tests. Nothing
// here calls the optimized routines it is compared against.

#include "randsurf/common.hpp"
#include "randsurf/gluing.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using randsurf::BigInt;
using randsurf::Rational;

struct Mat {
  BigInt a, b, c, d;
};

inline Mat multiply(const Mat& x, const Mat& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

inline Mat matrix(const std::string& w) {
  Mat m{1, 0, 0, 1};
  for (char ch : w) m = multiply(m, ch == 'L' ? Mat{1, 1, 0, 1} : Mat{1, 0, 1, 1});
  return m;
}

inline BigInt trace(const std::string& w) {
  const Mat m = matrix(w);
  return m.a + m.d;
}

inline std::string rotate(const std::string& w, std::size_t i) { return w.substr(i) + w.substr(0, i); }

inline std::string reverse_swap(const std::string& w) {
  std::string out(w.rbegin(), w.rend());
  for (char& ch : out) ch = ch == 'L' ? 'R' : 'L';
  return out;
}

inline std::string mirror(std::string w) {
  for (char& ch : w) ch = ch == 'L' ? 'R' : 'L';
  return w;
}

inline std::set<std::string> orbit(const std::string& w) {
  std::set<std::string> out;
  const std::string back = reverse_swap(w);
  for (std::size_t i = 0; i < w.size(); ++i) {
    out.insert(rotate(w, i));
    out.insert(rotate(back, i));
  }
  return out;
}

inline std::string canonical(const std::string& w) { return *orbit(w).begin(); }

inline std::vector<std::string> all_words(std::size_t n) {
  std::vector<std::string> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    std::string w(n, 'L');
    for (std::size_t i = 0; i < n; ++i)
      if (bits >> i & 1) w[i] = 'R';
    out.push_back(w);
  }
  return out;
}

/// Canonical words of every class of length 1..m, by brute force.
inline std::set<std::pair<std::size_t, std::string>> classes_up_to(std::size_t m) {
  std::set<std::pair<std::size_t, std::string>> out;
  for (std::size_t n = 1; n <= m; ++n)
    for (const auto& w : all_words(n)) out.emplace(n, canonical(w));
  return out;
}

/// Class counts of closed traversal cycles of length <= m. Every start side and
/// every turn sequence is walked; closed ones are grouped by listing the full
/// rotation/reversal orbit of their (entered side, turn) sequence.
inline std::map<std::string, std::uint64_t> brute_counts(const randsurf::Gluing& g, std::size_t m,
                                                          bool left_is_successor = true) {
  using Seq = std::vector<std::pair<std::uint32_t, char>>;
  const std::uint32_t labels = g.label_count();
  auto succ = [](std::uint32_t s) { return s % 3 == 0 ? s - 2 : s + 1; };
  auto pred = [](std::uint32_t s) { return s % 3 == 1 ? s + 2 : s - 1; };
  auto exit_side = [&](std::uint32_t s, char t) { return (t == 'L') == left_is_successor ? succ(s) : pred(s); };
  const auto partner = g.partner_table();

  std::set<Seq> seen;
  std::map<std::string, std::uint64_t> out;
  for (std::size_t k = 1; k <= m; ++k) {
    for (const auto& w : all_words(k)) {
      for (std::uint32_t start = 1; start <= labels; ++start) {
        Seq seq;
        std::uint32_t s = start;
        for (char t : w) {
          seq.emplace_back(s, t);
          s = partner[exit_side(s, t)];
        }
        if (s != start) continue;
        Seq rev;
        for (auto it = seq.rbegin(); it != seq.rend(); ++it)
          rev.emplace_back(exit_side(it->first, it->second), it->second == 'L' ? 'R' : 'L');
        Seq best = seq;
        for (std::size_t i = 0; i < k; ++i) {
          Seq a(seq.begin() + i, seq.end()), b(rev.begin() + i, rev.end());
          a.insert(a.end(), seq.begin(), seq.begin() + i);
          b.insert(b.end(), rev.begin(), rev.begin() + i);
          best = std::min({best, a, b});
        }
        if (seen.insert(best).second) ++out[canonical(w)];
      }
    }
  }
  return out;
}

/// (2n - 1)!! products and the bound symbols, straight from their definitions.
inline Rational p_kN(std::uint64_t k, std::uint64_t n) {
  BigInt den = 1;
  for (std::uint64_t i = 0; i < k; ++i) den *= BigInt(6 * n - 1 - 2 * i);
  return Rational(BigInt(1), den);
}

inline Rational a_kN(std::uint64_t k, std::uint64_t n) {
  BigInt out = 1;
  for (std::uint64_t i = 0; i < k; ++i) out *= BigInt(3) * BigInt(2 * n - i);
  return Rational(out);
}

inline Rational main_bound(std::uint64_t count, std::uint64_t m, const BigInt& n) {
  BigInt num = 18;
  num *= BigInt(count) * count * count;
  BigInt base = 6 * m, p = 1;
  for (std::uint64_t i = 0; i < 3 * m + 4; ++i) p *= base;
  return Rational(num * p, n);
}

inline std::vector<randsurf::Gluing> all_gluings(std::uint32_t n_half) {
  std::vector<randsurf::Gluing> out;
  const std::uint32_t labels = 6 * n_half;
  std::vector<std::uint32_t> partner(labels + 1, 0);
  auto rec = [&](auto&& self) -> void {
    std::uint32_t first = 0;
    for (std::uint32_t s = 1; s <= labels; ++s)
      if (partner[s] == 0) {
        first = s;
        break;
      }
    if (first == 0) {
      out.emplace_back(n_half, partner);
      return;
    }
    for (std::uint32_t o = labels; o > first; --o) {
      if (partner[o] != 0) continue;
      partner[first] = o;
      partner[o] = first;
      self(self);
      partner[first] = partner[o] = 0;
    }
  };
  rec(rec);
  return out;
}

}  // namespace oracle
