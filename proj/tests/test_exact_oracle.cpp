#include "oracles.hpp"
#include "randsurf/chen_stein.hpp"
#include "randsurf/exact_oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace randsurf;

namespace {

WordClass cls(const char* w) { return canonicalize(Word(w)); }

}  // namespace

TEST(GluingCount, DoubleFactorials) {
  EXPECT_EQ(gluing_count(1), 15);
  EXPECT_EQ(gluing_count(2), 10395);
  EXPECT_EQ(gluing_count(3), 34459425);
}

TEST(Enumeration, EachMatchingExactlyOnce) {
  for (std::uint32_t n : {1u, 2u}) {
    const auto all = enumerate_all_gluings(n);
    EXPECT_EQ(BigInt(all.size()), gluing_count(n));
    std::set<std::vector<std::pair<std::uint32_t, std::uint32_t>>> distinct, reference;
    for (const auto& g : all) distinct.insert(g.pairs());
    for (const auto& g : oracle::all_gluings(n)) reference.insert(g.pairs());
    EXPECT_EQ(distinct.size(), all.size());
    EXPECT_EQ(distinct, reference);
  }
  EXPECT_THROW(enumerate_all_gluings(3), PreconditionError);
  EXPECT_THROW(for_each_gluing(4, [](const Gluing&) {}), PreconditionError);
  EXPECT_THROW(for_each_gluing(0, [](const Gluing&) {}), PreconditionError);
}

TEST(Enumeration, PartitionsCoverTheSpace) {
  std::size_t total = 0;
  for (std::uint32_t p = 2; p <= 12; ++p) {
    std::size_t part = 0;
    for_each_gluing_in_partition(2, p, [&](const Gluing& g) {
      EXPECT_EQ(g.partner(Side{1}).label, p);
      ++part;
    });
    EXPECT_EQ(part, 945u);  // 9!!
    total += part;
  }
  EXPECT_EQ(total, 10395u);
}

TEST(ExactJoint, LRAtNOne) {
  const auto sys = exact_joint_distribution({cls("LR")}, 1);
  EXPECT_EQ(sys.gluing_count, 15);
  for (const auto& [v, p] : sys.joint_law.atoms) EXPECT_EQ(boost::multiprecision::denominator(Rational(p * 15)), 1);
  EXPECT_EQ(sys.joint_law.total_mass(), Rational(1));
  // the torus gluing is one of the three with count 3
  EXPECT_EQ(count_vector(Gluing::from_pairs(1, {{1, 4}, {2, 5}, {3, 6}}), {cls("LR")})[0], 3u);
  EXPECT_EQ(sys.joint_law.probability(CountVector{{3}}), make_rational(3, 15));
  EXPECT_EQ(sys.joint_law.probability(CountVector{{0}}), make_rational(12, 15));
  EXPECT_EQ(sys.exact_means[0], make_rational(3, 5));
  EXPECT_LE(sys.exact_mtv, 1);
  EXPECT_GE(sys.exact_mtv, 0);
}

TEST(ExactJoint, MeansMatchBruteForceAverages) {
  const auto classes = enumerate_classes_by_length(4);
  for (std::uint32_t n : {1u, 2u}) {
    const auto sys = exact_joint_distribution(classes, n, 2);
    std::vector<BigInt> totals(classes.size(), 0);
    for (const auto& g : oracle::all_gluings(n)) {
      const auto counts = oracle::brute_counts(g, 4);
      for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto it = counts.find(classes[i].canonical.str());
        if (it != counts.end()) totals[i] += it->second;
      }
    }
    for (std::size_t i = 0; i < classes.size(); ++i) {
      EXPECT_EQ(sys.exact_means[i], Rational(totals[i], sys.gluing_count)) << classes[i].canonical.str();
      const Rational scaled = sys.exact_means[i] * sys.gluing_count * BigInt(2 * classes[i].word_length);
      EXPECT_EQ(boost::multiprecision::denominator(scaled), 1);
    }
  }
}

TEST(ExactJoint, WorkerCountDoesNotMatter) {
  const std::vector<WordClass> w{cls("LR"), cls("LLR"), cls("LLRR")};
  const auto one = exact_joint_distribution(w, 2, 1);
  const auto four = exact_joint_distribution(w, 2, 4);
  EXPECT_EQ(one.tallies, four.tallies);
  EXPECT_EQ(one.exact_mtv, four.exact_mtv);
}

TEST(ExactJoint, MtvWithinClampedMainBound) {
  for (std::uint32_t n : {1u, 2u}) {
    const std::vector<WordClass> w{cls(n == 1 ? "L" : "LR")};
    const auto sys = exact_joint_distribution(w, n);
    const Rational bound = main_bound<Rational>(w, n);
    const HighFloat clamped = bound < 1 ? to_high(bound) : HighFloat(1);
    EXPECT_LE(sys.exact_mtv, clamped);
  }
}

TEST(ExactJoint, MtvMatchesDoublePrecisionRoute) {
  const std::vector<WordClass> w{cls("LR"), cls("LLR")};
  const auto sys = exact_joint_distribution(w, 2);
  FiniteDistribution<double> approx;
  approx.dimension = 2;
  for (const auto& [v, p] : sys.joint_law.atoms) approx.atoms.emplace(v, to_double(p));
  const PoissonSpec spec({w[0].lambda, w[1].lambda});
  EXPECT_NEAR(static_cast<double>(sys.exact_mtv), tv_distance(approx, product_poisson(spec, 40)), 1e-9);
}

TEST(ExactJoint, Guards) {
  EXPECT_THROW(exact_joint_distribution({cls("LR")}, 3), PreconditionError);
  EXPECT_THROW(exact_joint_distribution({cls("LR")}, 0), PreconditionError);
  EXPECT_THROW(exact_joint_distribution({cls("LLLLRRR")}, 1), PreconditionError);
  EXPECT_THROW(exact_joint_distribution({}, 1), PreconditionError);
}

TEST(MirrorSymmetry, JointLawOfMirroredClass) {
  for (std::uint32_t n : {1u, 2u})
    for (const auto& c : enumerate_classes_by_length(5)) {
      const auto m = canonicalize(c.canonical.mirrored());
      if (m == c) continue;
      EXPECT_EQ(exact_joint_distribution({c}, n).tallies, exact_joint_distribution({m}, n).tallies)
          << c.canonical.str() << " N=" << n;
    }
}

TEST(Representation, AgreesForPrimitiveWords) {
  for (std::uint32_t n : {1u, 2u})
    for (const auto& c : enumerate_classes_by_length(5)) {
      const std::string s = c.canonical.str();
      bool periodic = false;
      for (std::size_t d = 1; d < s.size(); ++d)
        if (s.size() % d == 0 && oracle::rotate(s, d) == s) periodic = true;
      const auto r = representation_check(c.canonical, n);
      EXPECT_EQ(r.sequence_sum, r.sequence_sum_formula) << s;
      EXPECT_TRUE(r.distinct_triangle_probability_ok) << s;
      EXPECT_EQ(r.sequence_count, static_cast<std::uint64_t>(std::pow(6.0 * n, static_cast<double>(s.size()))));
      if (!periodic) {
        EXPECT_EQ(r.difference, 0) << s << " N=" << n;
      } else if (r.direct_mean > 0) {
        EXPECT_GT(r.difference, 0) << s << " N=" << n;
      }
    }
}

TEST(Representation, Examples) {
  const auto lr = representation_check(Word("LR"), 1);
  EXPECT_EQ(lr.direct_mean, make_rational(3, 5));
  EXPECT_EQ(lr.difference, 0);

  // reverse-swap symmetric, yet not periodic: the identity still holds
  const auto llrr = representation_check(Word("LLRR"), 2);
  EXPECT_EQ(llrr.direct_mean, make_rational(18, 35));
  EXPECT_EQ(llrr.difference, 0);

  // periodic words: a cycle of (LR)^2 has only |w|/2 distinct rotations
  const auto lrlr1 = representation_check(Word("LRLR"), 1);
  EXPECT_EQ(lrlr1.direct_mean, make_rational(3, 5));
  EXPECT_EQ(lrlr1.representation_mean, make_rational(3, 10));
  const auto lrlr2 = representation_check(Word("LRLR"), 2);
  EXPECT_EQ(lrlr2.direct_mean, make_rational(24, 35));
  EXPECT_EQ(lrlr2.representation_mean, make_rational(159, 385));
  const auto ll = representation_check(Word("LL"), 1);
  EXPECT_EQ(ll.direct_mean, make_rational(9, 5));
  EXPECT_EQ(ll.representation_mean, make_rational(6, 5));

  EXPECT_THROW(representation_check(Word("LLRRL"), 3), PreconditionError);
  EXPECT_THROW(representation_check(Word("LLRRLR"), 1), PreconditionError);
}

TEST(Representation, DistinctTriangleSequencesCountedByA) {
  for (std::size_t len = 1; len <= 4; ++len)
    for (const auto& s : oracle::all_words(len)) {
      const auto r = representation_check(Word(s), 2);
      EXPECT_EQ(BigInt(r.distinct_triangle_count), boost::multiprecision::numerator(oracle::a_kN(len, 2))) << s;
    }
}

TEST(MonteCarlo, EmpiricalLawWithinThreeStandardErrors) {
  const std::vector<WordClass> w{cls("LR"), cls("LLR")};
  for (std::uint32_t n : {1u, 2u}) {
    const auto sys = exact_joint_distribution(w, n);
    const std::uint64_t samples = 1000000;
    std::map<CountVector, std::uint64_t> freq;
    for (std::uint64_t i = 0; i < samples; ++i) ++freq[CountVector{count_vector(sample_uniform_gluing(n, 4242, i), w)}];
    for (const auto& [v, c] : freq) EXPECT_GT(sys.joint_law.probability(v), 0) << "atom outside support";
    for (const auto& [v, p] : sys.joint_law.atoms) {
      const double q = to_double(p);
      const double se = std::sqrt(q * (1 - q) / static_cast<double>(samples));
      const double emp = static_cast<double>(freq[v]) / static_cast<double>(samples);
      EXPECT_LE(std::abs(emp - q), 3 * se) << "N=" << n << " atom " << v.values[0] << "," << v.values[1];
    }
  }
}
