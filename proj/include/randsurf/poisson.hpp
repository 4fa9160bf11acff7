#pragma once
// Poisson reference laws, finite distributions over count vectors and total
// variation distances between them.

#include "randsurf/common.hpp"

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace randsurf {

/// Counts (Z_1, ..., Z_d) for an ordered list of classes.
struct CountVector {
  std::vector<std::uint64_t> values;

  std::size_t dimension() const noexcept { return values.size(); }
  friend bool operator==(const CountVector&, const CountVector&) = default;
  friend auto operator<=>(const CountVector&, const CountVector&) = default;
};

/// Law on count vectors. P is double, Rational or HighFloat. tail_mass is
/// probability known to exist but not attached to any listed atom.
template <class P>
struct FiniteDistribution {
  std::size_t dimension = 0;
  std::map<CountVector, P> atoms;
  P tail_mass = 0;
  std::uint64_t sample_count = 0;  // nonzero for empirical laws

  P probability(const CountVector& v) const {
    const auto it = atoms.find(v);
    return it == atoms.end() ? P(0) : it->second;
  }

  P total_mass() const {
    P sum = tail_mass;
    for (const auto& [v, p] : atoms) sum += p;
    return sum;
  }
};

/// Means of independent Poisson coordinates; all strictly positive.
struct PoissonSpec {
  std::vector<Rational> lambdas;

  explicit PoissonSpec(std::vector<Rational> l) : lambdas(std::move(l)) {
    for (const auto& x : lambdas) require(x > 0, "Poisson means must be positive");
  }
  std::size_t dimension() const noexcept { return lambdas.size(); }
};

inline double poisson_pmf(double lambda, std::uint64_t k) {
  require(lambda > 0, "Poisson mean must be positive");
  const double kk = static_cast<double>(k);
  return std::exp(kk * std::log(lambda) - lambda - std::lgamma(kk + 1.0));
}

inline HighFloat poisson_pmf_high(const HighFloat& lambda, std::uint64_t k) {
  require(lambda > 0, "Poisson mean must be positive");
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  using boost::multiprecision::lgamma;
  const HighFloat kk(k);
  return exp(kk * log(lambda) - lambda - lgamma(kk + 1));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline HighFloat to_high(const Rational& r) {
  return HighFloat(boost::multiprecision::numerator(r)) / HighFloat(boost::multiprecision::denominator(r));
}

/// Joint pmf of independent Poissons at k.
inline double product_pmf(const PoissonSpec& spec, const CountVector& k) {
  require(spec.dimension() == k.dimension(), "dimension mismatch");
  double p = 1.0;
  for (std::size_t i = 0; i < k.dimension(); ++i) p *= poisson_pmf(to_double(spec.lambdas[i]), k.values[i]);
  return p;
}

inline HighFloat product_pmf_high(const PoissonSpec& spec, const CountVector& k) {
  require(spec.dimension() == k.dimension(), "dimension mismatch");
  HighFloat p = 1;
  for (std::size_t i = 0; i < k.dimension(); ++i) p *= poisson_pmf_high(to_high(spec.lambdas[i]), k.values[i]);
  return p;
}

inline constexpr double kMaxTailMass = 1e-10;

/// Product law on {0, ..., truncation}^d with the omitted mass recorded.
inline FiniteDistribution<double> product_poisson(const PoissonSpec& spec, std::uint64_t truncation) {
  const std::size_t d = spec.dimension();
  std::vector<std::vector<double>> marginals(d);
  double tail_bound = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double lambda = to_double(spec.lambdas[i]);
    for (std::uint64_t k = 0; k <= truncation; ++k) marginals[i].push_back(poisson_pmf(lambda, k));
    // Upper tail by the ratio bound P[Z > T] <= pmf(T+1) / (1 - lambda/(T+2)).
    const double next = poisson_pmf(lambda, truncation + 1);
    const double ratio = lambda / static_cast<double>(truncation + 2);
    const double tail = ratio < 1 ? next / (1 - ratio) : 1.0;
    tail_bound += tail;
  }
  require(tail_bound < kMaxTailMass, "truncation too small: omitted Poisson tail mass exceeds 1e-10");

  FiniteDistribution<double> out;
  out.dimension = d;
  std::vector<std::uint64_t> idx(d, 0);
  for (;;) {
    double p = 1.0;
    for (std::size_t i = 0; i < d; ++i) p *= marginals[i][idx[i]];
    out.atoms.emplace(CountVector{idx}, p);
    std::size_t pos = 0;
    while (pos < d && idx[pos] == truncation) idx[pos++] = 0;
    if (pos == d) break;
    ++idx[pos];
  }
  out.tail_mass = tail_bound;
  return out;
}

/// Half the L1 distance over the union of supports; tail masses count in full
/// (worst case), so the result is an upper estimate clipped to [0, 1].
template <class P>
P tv_distance(const FiniteDistribution<P>& p, const FiniteDistribution<P>& q) {
  require(p.dimension == q.dimension, "tv_distance: dimension mismatch");
  using std::abs;
  P l1 = 0;
  auto a = p.atoms.begin();
  auto b = q.atoms.begin();
  while (a != p.atoms.end() || b != q.atoms.end()) {
    if (b == q.atoms.end() || (a != p.atoms.end() && a->first < b->first)) {
      l1 += abs(a->second);
      ++a;
    } else if (a == p.atoms.end() || b->first < a->first) {
      l1 += abs(b->second);
      ++b;
    } else {
      l1 += abs(a->second - b->second);
      ++a;
      ++b;
    }
  }
  P tv = (l1 + p.tail_mass + q.tail_mass) / 2;
  if (tv > P(1)) tv = 1;
  if (tv < P(0)) tv = 0;
  return tv;
}

/// Exact TV against a product Poisson without truncation: atoms off the support
/// of p contribute their Poisson mass, which is 1 - (Poisson mass on supp p).
inline double tv_to_product_poisson(const FiniteDistribution<double>& p, const PoissonSpec& spec) {
  require(p.dimension == spec.dimension(), "tv: dimension mismatch");
  double l1 = 0, covered = 0;
  for (const auto& [v, prob] : p.atoms) {
    const double q = product_pmf(spec, v);
    l1 += std::abs(prob - q);
    covered += q;
  }
  return std::clamp((l1 + std::max(0.0, 1.0 - covered)) / 2, 0.0, 1.0);
}

inline HighFloat tv_to_product_poisson(const FiniteDistribution<Rational>& p, const PoissonSpec& spec) {
  require(p.dimension == spec.dimension(), "tv: dimension mismatch");
  HighFloat l1 = 0, covered = 0;
  for (const auto& [v, prob] : p.atoms) {
    const HighFloat q = product_pmf_high(spec, v);
    l1 += boost::multiprecision::abs(to_high(prob) - q);
    covered += q;
  }
  HighFloat rest = 1 - covered;
  if (rest < 0) rest = 0;
  HighFloat tv = (l1 + rest) / 2;
  return tv > 1 ? HighFloat(1) : tv;
}

/// Delta-method standard error of the plug-in TV estimate: the estimate is
/// the empirical mass of {x : p(x) > q(x)} minus a constant.
inline double tv_standard_error(const FiniteDistribution<double>& p, const PoissonSpec& spec) {
  if (p.sample_count == 0) return 0.0;
  double excess = 0;
  for (const auto& [v, prob] : p.atoms)
    if (prob > product_pmf(spec, v)) excess += prob;
  return std::sqrt(excess * (1 - excess) / static_cast<double>(p.sample_count));
}

inline FiniteDistribution<double> empirical_distribution(std::span<const CountVector> samples) {
  require(!samples.empty(), "empirical distribution needs at least one sample");
  FiniteDistribution<double> out;
  out.dimension = samples.front().dimension();
  std::map<CountVector, std::uint64_t> freq;
  for (const auto& v : samples) {
    require(v.dimension() == out.dimension, "samples have mixed dimensions");
    ++freq[v];
  }
  const double n = static_cast<double>(samples.size());
  for (const auto& [v, c] : freq) out.atoms.emplace(v, static_cast<double>(c) / n);
  out.sample_count = samples.size();
  return out;
}

/// Marginal law of coordinate `keep`.
template <class P>
FiniteDistribution<P> marginal(const FiniteDistribution<P>& p, std::size_t keep) {
  require(keep < p.dimension, "marginal: coordinate out of range");
  FiniteDistribution<P> out;
  out.dimension = 1;
  out.tail_mass = p.tail_mass;
  out.sample_count = p.sample_count;
  for (const auto& [v, prob] : p.atoms) out.atoms[CountVector{{v.values[keep]}}] += prob;
  return out;
}

/// Drops coordinate `drop`, summing it out.
template <class P>
FiniteDistribution<P> sum_out(const FiniteDistribution<P>& p, std::size_t drop) {
  require(drop < p.dimension, "sum_out: coordinate out of range");
  FiniteDistribution<P> out;
  out.dimension = p.dimension - 1;
  out.tail_mass = p.tail_mass;
  out.sample_count = p.sample_count;
  for (const auto& [v, prob] : p.atoms) {
    CountVector w = v;
    w.values.erase(w.values.begin() + static_cast<std::ptrdiff_t>(drop));
    out.atoms[w] += prob;
  }
  return out;
}

struct ProbabilityInterval {
  double low;
  double high;
};

/// |P[W = k] - P[Z = k]| <= 2 d_TV(W, Z), clipped to [0, 1].
inline ProbabilityInterval individual_probability_bound(double tv, const CountVector& k, const PoissonSpec& spec) {
  require(tv >= 0 && tv <= 1, "tv must lie in [0, 1]");
  const double center = product_pmf(spec, k);
  return {std::max(0.0, center - 2 * tv), std::min(1.0, center + 2 * tv)};
}

}  // namespace randsurf
