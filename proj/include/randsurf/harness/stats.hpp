#pragma once
// Seeded Monte Carlo over Omega_N. Sample i always uses stream (seed, i) and
// results are reduced in index order, so output does not depend on workers.

#include "randsurf/chen_stein.hpp"
#include "randsurf/gluing.hpp"
#include "randsurf/parallel.hpp"
#include "randsurf/poisson.hpp"
#include "randsurf/spectrum.hpp"
#include "randsurf/word_algebra.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace randsurf::harness {

struct Estimate {
  double value = 0;
  double standard_error = 0;
};

struct ClassStats {
  WordClass cls;
  double lambda;
  Estimate mean;
  double variance;
  Estimate tv;  // marginal law vs Po(lambda)
};

struct CovarianceStats {
  std::size_t first;
  std::size_t second;
  Estimate covariance;
};

struct TopologySummary {
  Estimate connected_fraction;
  Estimate mean_genus;
  Estimate mean_cusps;
};

struct StatsReport {
  std::uint32_t n_half;
  std::uint64_t sample_count;
  std::uint64_t seed;
  std::vector<ClassStats> classes;
  std::vector<CovarianceStats> covariances;
  Estimate joint_tv;  // joint law vs product Poisson
  std::optional<BoundReport> bounds;  // absent when m_W > N
  TopologySummary topology;
  std::vector<CountVector> samples;  // per-index count vectors
};

namespace detail {

struct SampleResult {
  CountVector counts;
  bool connected;
  std::int64_t genus;
  std::uint64_t cusps;
};

inline Estimate mean_estimate(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double sum = 0;
  for (double x : xs) sum += x;
  const double mean = sum / n;
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = xs.size() > 1 ? ss / (n - 1) : 0.0;
  return {mean, std::sqrt(var / n)};
}

}  // namespace detail

inline StatsReport run_stats(std::uint32_t n_half, std::uint64_t samples, std::uint64_t seed,
                             const std::vector<WordClass>& classes, std::size_t workers) {
  require(n_half >= 1, "N must be at least 1");
  require(samples >= 1, "sample count must be at least 1");
  require(!classes.empty(), "class list must be nonempty");
  require(max_word_length(classes) <= kMaxCycleLength, "classes longer than 16 letters are not countable");

  std::vector<detail::SampleResult> results(samples);
  parallel_for(samples, workers, [&](std::size_t i) {
    const Gluing g = sample_uniform_gluing(n_half, seed, i);
    const TopologyReport t = topology(g);
    results[i] = {CountVector{count_vector(g, classes)}, t.connected, t.total_genus, t.cusp_count};
  });

  const std::size_t d = classes.size();
  const double m = static_cast<double>(samples);
  StatsReport r;
  r.n_half = n_half;
  r.sample_count = samples;
  r.seed = seed;
  r.samples.reserve(samples);
  for (auto& s : results) r.samples.push_back(s.counts);

  std::vector<std::vector<double>> column(d, std::vector<double>(samples));
  for (std::size_t i = 0; i < samples; ++i)
    for (std::size_t c = 0; c < d; ++c) column[c][i] = static_cast<double>(r.samples[i].values[c]);

  const FiniteDistribution<double> joint = empirical_distribution(r.samples);
  std::vector<Rational> lambdas;
  for (std::size_t c = 0; c < d; ++c) {
    const Estimate mean = detail::mean_estimate(column[c]);
    const double var = mean.standard_error * mean.standard_error * m;
    const FiniteDistribution<double> marg = marginal(joint, c);
    const PoissonSpec spec({classes[c].lambda});
    r.classes.push_back({classes[c], to_double(classes[c].lambda), mean, var,
                         {tv_to_product_poisson(marg, spec), tv_standard_error(marg, spec)}});
    lambdas.push_back(classes[c].lambda);
  }
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b) {
      const double ma = r.classes[a].mean.value, mb = r.classes[b].mean.value;
      std::vector<double> prod(samples);
      for (std::size_t i = 0; i < samples; ++i) prod[i] = (column[a][i] - ma) * (column[b][i] - mb);
      Estimate cov = detail::mean_estimate(prod);
      if (samples > 1) cov.value *= m / (m - 1);
      r.covariances.push_back({a, b, cov});
    }
  const PoissonSpec spec(std::move(lambdas));
  r.joint_tv = {tv_to_product_poisson(joint, spec), tv_standard_error(joint, spec)};

  if (BigInt(max_word_length(classes)) <= BigInt(n_half)) r.bounds = evaluate_bounds(classes, BigInt(n_half));

  std::vector<double> conn(samples), genus(samples), cusps(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    conn[i] = results[i].connected ? 1.0 : 0.0;
    genus[i] = static_cast<double>(results[i].genus);
    cusps[i] = static_cast<double>(results[i].cusps);
  }
  r.topology = {detail::mean_estimate(conn), detail::mean_estimate(genus), detail::mean_estimate(cusps)};
  return r;
}

}  // namespace randsurf::harness
