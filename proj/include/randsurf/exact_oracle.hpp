#pragma once
// Ground truth by exhausting the sample space for very small N: exact joint
// laws of class counts, exact means, exact distance to the Poisson limit, and
// the labelled-sequence representation of Z_[w].

#include "randsurf/common.hpp"
#include "randsurf/gluing.hpp"
#include "randsurf/parallel.hpp"
#include "randsurf/poisson.hpp"
#include "randsurf/spectrum.hpp"
#include "randsurf/word_algebra.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace randsurf {

/// (6N - 1)!!, the number of perfect matchings of 6N labels.
inline BigInt gluing_count(std::uint32_t n_half) {
  BigInt out = 1;
  for (std::uint64_t f = 6ull * n_half - 1; f > 1; f -= 2) out *= f;
  return out;
}

namespace detail {

template <class Visit>
void complete_matching(std::uint32_t n_half, std::vector<std::uint32_t>& partner, Visit& visit) {
  const std::uint32_t labels = 6 * n_half;
  std::uint32_t first = 1;
  while (first <= labels && partner[first] != 0) ++first;
  if (first > labels) {
    visit(static_cast<const std::vector<std::uint32_t>&>(partner));
    return;
  }
  for (std::uint32_t other = first + 1; other <= labels; ++other) {
    if (partner[other] != 0) continue;
    partner[first] = other;
    partner[other] = first;
    complete_matching(n_half, partner, visit);
    partner[first] = 0;
    partner[other] = 0;
  }
}

inline void require_oracle_size(std::uint32_t n_half) {
  require(n_half >= 1 && n_half <= 3, "exhaustive enumeration supports N in {1, 2, 3}");
}

}  // namespace detail

/// Visits the gluings in which label 1 is paired with `first_partner`
/// (one of the 6N - 1 partitions of the sample space), in deterministic order.
template <class Visit>
void for_each_gluing_in_partition(std::uint32_t n_half, std::uint32_t first_partner, Visit&& visit) {
  detail::require_oracle_size(n_half);
  require(first_partner >= 2 && first_partner <= 6 * n_half, "partition index out of range");
  std::vector<std::uint32_t> partner(6 * n_half + 1, 0);
  partner[1] = first_partner;
  partner[first_partner] = 1;
  auto emit = [&](const std::vector<std::uint32_t>& table) { visit(Gluing(n_half, table)); };
  detail::complete_matching(n_half, partner, emit);
}

/// Every gluing exactly once: the smallest unmatched label is paired with each
/// larger free label in turn.
template <class Visit>
void for_each_gluing(std::uint32_t n_half, Visit&& visit) {
  detail::require_oracle_size(n_half);
  for (std::uint32_t p = 2; p <= 6 * n_half; ++p) for_each_gluing_in_partition(n_half, p, visit);
}

inline std::vector<Gluing> enumerate_all_gluings(std::uint32_t n_half) {
  require(n_half >= 1 && n_half <= 2, "materialized enumeration supports N in {1, 2}; use for_each_gluing for N = 3");
  std::vector<Gluing> out;
  for_each_gluing(n_half, [&](const Gluing& g) { out.push_back(g); });
  return out;
}

struct ExactSystem {
  std::uint32_t n_half;
  BigInt gluing_count;
  std::vector<WordClass> classes;
  std::map<CountVector, BigInt> tallies;  // gluings per count vector
  FiniteDistribution<Rational> joint_law;
  std::vector<Rational> exact_means;
  HighFloat exact_mtv;  // against independent Poissons with the class lambdas
};

inline constexpr std::size_t kMaxOracleWordLength = 6;

/// Enumerates all gluings (partition-parallel over `workers` threads) and tallies
/// the class count vectors. N = 3 takes minutes and must be requested explicitly.
inline ExactSystem exact_joint_distribution(const std::vector<WordClass>& classes, std::uint32_t n_half,
                                            std::size_t workers = 1, bool allow_n3 = false) {
  require(n_half >= 1 && (n_half <= 2 || (n_half == 3 && allow_n3)),
          "exact joint distribution supports N in {1, 2} (N = 3 needs explicit opt-in)");
  require(!classes.empty(), "class list must be nonempty");
  require(max_word_length(classes) <= kMaxOracleWordLength, "exact oracle supports words of length <= 6");

  const std::uint32_t partitions = 6 * n_half - 1;
  std::vector<std::map<CountVector, std::uint64_t>> partial(partitions);
  parallel_for(partitions, workers, [&](std::size_t i) {
    for_each_gluing_in_partition(n_half, static_cast<std::uint32_t>(i + 2), [&](const Gluing& g) {
      ++partial[i][CountVector{count_vector(g, classes)}];
    });
  });

  ExactSystem sys;
  sys.n_half = n_half;
  sys.gluing_count = gluing_count(n_half);
  sys.classes = classes;
  for (const auto& part : partial)
    for (const auto& [v, c] : part) sys.tallies[v] += c;

  sys.joint_law.dimension = classes.size();
  sys.exact_means.assign(classes.size(), Rational(0));
  for (const auto& [v, c] : sys.tallies) {
    const Rational prob(BigInt(c), sys.gluing_count);
    sys.joint_law.atoms.emplace(v, prob);
    for (std::size_t i = 0; i < v.dimension(); ++i) sys.exact_means[i] += prob * BigInt(v.values[i]);
  }
  std::vector<Rational> lambdas;
  for (const auto& c : classes) lambdas.push_back(c.lambda);
  sys.exact_mtv = tv_to_product_poisson(sys.joint_law, PoissonSpec(std::move(lambdas)));
  return sys;
}

struct RepresentationReport {
  Word word;
  std::uint32_t n_half;
  Rational direct_mean;          // E[Z_[w]] by class counting over all gluings
  Rational sequence_sum;         // sum over Gamma_w of P[alpha in omega], by counting over gluings
  Rational sequence_sum_formula; // the same sum from per-sequence matching counts
  Rational representation_mean;  // lambda_[w] * sequence_sum
  Rational difference;           // direct_mean - representation_mean
  std::uint64_t sequence_count;           // |Gamma_w| = (6N)^|w|
  std::uint64_t distinct_triangle_count;  // |Gamma_{w,d}|
  bool distinct_triangle_probability_ok;  // every such alpha has P = p_{|w|,N}
};

namespace detail {

// Walks from `start` spelling w; true when the walk is back at start.
inline bool closes(const Gluing& g, std::uint32_t start, const Word& w) {
  std::uint32_t s = start;
  for (std::size_t i = 0; i < w.size(); ++i) s = step(g, Side{s}, w[i]).label;
  return s == start;
}

// Matchings of 6N labels containing r fixed disjoint pairs: (6N - 2r - 1)!!.
inline BigInt matchings_containing(std::uint32_t n_half, std::uint64_t r) {
  BigInt out = 1;
  for (std::int64_t f = 6ll * n_half - 2 * static_cast<std::int64_t>(r) - 1; f > 1; f -= 2) out *= f;
  return out;
}

}  // namespace detail

/// Compares E[Z_[w]] with lambda_[w] * sum_{alpha in Gamma_w} P[alpha in omega].
/// Gamma_w is listed explicitly: alpha picks the entered side u_j of each letter,
/// the exit side v_j follows from the turn, and alpha lies in omega exactly when
/// every {v_j, u_{j+1}} is a pair of omega.
inline RepresentationReport representation_check(const Word& w, std::uint32_t n_half) {
  require(n_half >= 1 && n_half <= 2, "representation check supports N in {1, 2}");
  require(w.size() <= 5, "representation check supports |w| <= 5");
  const WordClass cls = canonicalize(w);
  const BigInt total = gluing_count(n_half);
  const std::uint32_t labels = 6 * n_half;
  const std::size_t k = w.size();

  BigInt class_total = 0, closing_total = 0;
  for_each_gluing(n_half, [&](const Gluing& g) {
    class_total += count_vector(g, {cls})[0];
    for (std::uint32_t s = 1; s <= labels; ++s)
      if (detail::closes(g, s, w)) ++closing_total;
  });

  RepresentationReport r{w, n_half, Rational(class_total, total), Rational(closing_total, total), 0, 0, 0, 0, 0,
                         true};

  const Rational p_k = Rational(detail::matchings_containing(n_half, k), total);
  BigInt formula_total = 0;
  std::vector<std::uint32_t> entered(k, 1);
  std::vector<std::uint32_t> match(labels + 1, 0);
  for (;;) {
    ++r.sequence_count;
    // required pairs {v_j, u_{j+1}}
    std::fill(match.begin(), match.end(), 0);
    bool consistent = true;
    std::uint64_t pairs = 0;
    for (std::size_t j = 0; j < k && consistent; ++j) {
      const std::uint32_t v = next_label(entered[j], w[j]);
      const std::uint32_t u = entered[(j + 1) % k];
      if (v == u) {
        consistent = false;
      } else if (match[v] == 0 && match[u] == 0) {
        match[v] = u;
        match[u] = v;
        ++pairs;
      } else if (match[v] != u || match[u] != v) {
        consistent = false;
      }
    }
    if (consistent) formula_total += detail::matchings_containing(n_half, pairs);

    std::vector<std::uint32_t> tris;
    for (auto u : entered) tris.push_back(Side{u}.triangle());
    std::sort(tris.begin(), tris.end());
    if (std::adjacent_find(tris.begin(), tris.end()) == tris.end()) {
      ++r.distinct_triangle_count;
      if (!consistent || pairs != k || Rational(detail::matchings_containing(n_half, pairs), total) != p_k)
        r.distinct_triangle_probability_ok = false;
    }

    std::size_t pos = 0;
    while (pos < k && entered[pos] == labels) entered[pos++] = 1;
    if (pos == k) break;
    ++entered[pos];
  }

  r.sequence_sum_formula = Rational(formula_total, total);
  r.representation_mean = cls.lambda * r.sequence_sum;
  r.difference = r.direct_mean - r.representation_mean;
  return r;
}

}  // namespace randsurf
