#pragma once
// Explicit Chen-Stein error bounds for the joint law of the class counts:
// the counting symbols p_{k,N} and a_{k,N}, the four sigma sums per class,
// the refined multivariate bound and the closed-form headline bound.
//
// Every evaluator is a template over the scalar type: LogNumber for anything
// large, Rational for exact shadow evaluation on small inputs.

#include "randsurf/common.hpp"
#include "randsurf/log_number.hpp"
#include "randsurf/word_algebra.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace randsurf {

namespace detail {

template <class T>
T from_int(const BigInt& x) {
  return T(x);
}

template <class T>
T power(const T& base, unsigned e) {
  T out(1);
  T b = base;
  while (e > 0) {
    if (e & 1u) out *= b;
    e >>= 1;
    if (e > 0) b *= b;
  }
  return out;
}

template <>
inline LogNumber power<LogNumber>(const LogNumber& base, unsigned e) {
  return pow(base, e);
}

template <class T>
class Accumulator {
 public:
  void add(const T& x) { sum_ += x; }
  T total() const { return sum_; }

 private:
  T sum_ = T(0);
};

template <>
class Accumulator<LogNumber> {
 public:
  void add(const LogNumber& x) { sum_.add(x); }
  LogNumber total() const { return sum_.total(); }

 private:
  LogSum sum_;
};

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt out = 1;
  for (unsigned i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace detail

/// 1 / ((6N-1)(6N-3)...(6N-2k+1)): probability that k given disjoint pairs
/// all occur in a uniform gluing.
template <class T = LogNumber>
T p_k_N(std::uint64_t k, const BigInt& n_half) {
  require(n_half >= 1, "N must be at least 1");
  require(BigInt(k) <= 3 * n_half, "p_{k,N} needs k <= 3N");
  BigInt den = 1;
  for (std::uint64_t i = 0; i < k; ++i) den *= 6 * n_half - 1 - 2 * BigInt(i);
  return T(1) / detail::from_int<T>(den);
}

/// 3^k 2N(2N-1)...(2N-k+1): labelled cycles through k distinct triangles.
template <class T = LogNumber>
T a_k_N(std::uint64_t k, const BigInt& n_half) {
  require(n_half >= 1, "N must be at least 1");
  require(BigInt(k) <= 2 * n_half, "a_{k,N} needs k <= 2N");
  BigInt num = 1;
  for (std::uint64_t i = 0; i < k; ++i) num *= 3 * (2 * n_half - BigInt(i));
  return detail::from_int<T>(num);
}

/// Sigma bounds for one class. s1..s4 bound the sums over labelled sequences
/// spelling exactly w; the *_class terms apply the class factor lambda
/// (squared for terms 2 to 4).
template <class T>
struct SigmaTerms {
  T s1, s2, s3, s4;
  T s1_class, s2_class, s3_class, s4_class;

  T class_total() const { return s1_class + s2_class + s3_class + s4_class; }
};

namespace detail {

// Tables of a_{k,N}, p_{k,N} and the word-independent inner sums of the
// sigma_2 / sigma_3 displays, keyed by word lengths.
template <class T>
class SigmaEvaluator {
 public:
  SigmaEvaluator(const BigInt& n_half, std::size_t max_len) : n_(n_half), three_(3) {
    for (std::size_t k = 0; k <= 2 * max_len; ++k) {
      a_.push_back(a_k_N<T>(k, n_half));
      p_.push_back(p_k_N<T>(k, n_half));
    }
  }

  const T& a(std::size_t k) const { return a_[k]; }
  const T& p(std::size_t k) const { return p_[k]; }

  // a-index may go negative in the displays; such configurations do not exist.
  T a_signed(std::int64_t k) const { return k < 0 ? T(0) : a_[static_cast<std::size_t>(k)]; }

  // sum_{i=1}^{len-2} 3^i (len-i)^len a_{len-i} p_{len-i}^power
  T repeated_triangle_sum(std::size_t len, unsigned p_power) const {
    Accumulator<T> acc;
    for (std::size_t i = 1; i + 2 <= len; ++i) {
      acc.add(power(three_, static_cast<unsigned>(i)) * power(T(from_int<T>(len - i)), static_cast<unsigned>(len)) *
              a_[len - i] * power(p_[len - i], p_power));
    }
    return acc.total();
  }

  // sum_{i=1}^{2len} sum_{j=0}^{len} sum_{k=0}^{len'} C(2len, i) 3^{i+j+k}
  //   (len-j)^len (len'-k)^len' a_{len+len'-i-j-k}
  const T& shared_label_sum(std::size_t len, std::size_t len2) {
    const auto key = std::make_pair(len, len2);
    if (auto it = sigma2_inner_.find(key); it != sigma2_inner_.end()) return it->second;
    Accumulator<T> acc;
    for (std::size_t i = 1; i <= 2 * len; ++i) {
      const T choose = from_int<T>(binomial(static_cast<unsigned>(2 * len), static_cast<unsigned>(i)));
      for (std::size_t j = 0; j <= len; ++j)
        for (std::size_t k = 0; k <= len2; ++k) {
          const auto idx = static_cast<std::int64_t>(len + len2) - static_cast<std::int64_t>(i + j + k);
          const T a = a_signed(idx);
          if (a == T(0)) continue;
          acc.add(choose * power(three_, static_cast<unsigned>(i + j + k)) * repetition(len, j) *
                  repetition(len2, k) * a);
        }
    }
    return sigma2_inner_.emplace(key, acc.total()).first->second;
  }

  // sum_{i=1}^{len} sum_j sum_k C(len, i) 3^{i+j+k} (len-j)^len (len'-k)^len'
  //   a_{len+len'-i-j-k-1} p_{len+len'-i}
  const T& shared_pair_sum(std::size_t len, std::size_t len2) {
    const auto key = std::make_pair(len, len2);
    if (auto it = sigma3_inner_.find(key); it != sigma3_inner_.end()) return it->second;
    Accumulator<T> acc;
    for (std::size_t i = 1; i <= len; ++i) {
      const T choose = from_int<T>(binomial(static_cast<unsigned>(len), static_cast<unsigned>(i)));
      Accumulator<T> inner;
      for (std::size_t j = 0; j <= len; ++j)
        for (std::size_t k = 0; k <= len2; ++k) {
          const auto idx = static_cast<std::int64_t>(len + len2) - static_cast<std::int64_t>(i + j + k) - 1;
          const T a = a_signed(idx);
          if (a == T(0)) continue;
          inner.add(power(three_, static_cast<unsigned>(i + j + k)) * repetition(len, j) * repetition(len2, k) * a);
        }
      acc.add(choose * inner.total() * p_[len + len2 - i]);
    }
    return sigma3_inner_.emplace(key, acc.total()).first->second;
  }

  const BigInt& n_half() const { return n_; }

 private:
  // (len - j)^len, with 0^len = 0
  T repetition(std::size_t len, std::size_t j) const {
    return power(from_int<T>(BigInt(len - j)), static_cast<unsigned>(len));
  }

  BigInt n_;
  T three_;
  std::vector<T> a_, p_;
  std::map<std::pair<std::size_t, std::size_t>, T> sigma2_inner_, sigma3_inner_;
};

}  // namespace detail

/// Evaluates the four sigma displays for every class in W, in order.
/// Requires m_W <= N.
template <class T = LogNumber>
std::vector<SigmaTerms<T>> sigma_bounds(const std::vector<WordClass>& classes, const BigInt& n_half) {
  require(n_half >= 1, "N must be at least 1");
  const std::size_t m = max_word_length(classes);
  require(BigInt(m) <= n_half, "hypothesis m_W <= N violated");
  std::vector<SigmaTerms<T>> out;
  if (classes.empty()) return out;

  detail::SigmaEvaluator<T> ev(n_half, m);
  const T m_sq_over_n = detail::from_int<T>(BigInt(m * m)) / detail::from_int<T>(n_half);

  detail::Accumulator<T> single_class_sum;
  for (const auto& c : classes) single_class_sum.add(ev.a(c.word_length) * ev.p(c.word_length));

  for (const auto& cls : classes) {
    const std::size_t len = cls.word_length;
    SigmaTerms<T> t;
    t.s1 = ev.a(len) * ev.p(len) * ev.p(len) + ev.repeated_triangle_sum(len, 2);

    detail::Accumulator<T> s2, s3;
    for (const auto& other : classes) {
      const std::size_t len2 = other.word_length;
      const T members = detail::from_int<T>(BigInt(other.class_size));
      s2.add(members * ev.shared_label_sum(len, len2) * ev.p(len) * ev.p(len2));
      s3.add(members * ev.shared_pair_sum(len, len2));
    }
    t.s2 = s2.total();
    t.s3 = s3.total();

    const T inner = single_class_sum.total() + ev.repeated_triangle_sum(len, 1);
    t.s4 = m_sq_over_n * inner * inner;

    const T lambda = detail::from_int<T>(BigInt(cls.class_size)) / detail::from_int<T>(BigInt(2 * len));
    const T lambda_sq = lambda * lambda;
    t.s1_class = lambda * t.s1;
    t.s2_class = lambda_sq * t.s2;
    t.s3_class = lambda_sq * t.s3;
    t.s4_class = lambda_sq * t.s4;
    out.push_back(std::move(t));
  }
  return out;
}

/// Closed-form simplifications of the four sigma displays (unscaled), valid
/// under m_W <= N.
template <class T = LogNumber>
SigmaTerms<T> closed_form_sigma(const std::vector<WordClass>& classes, const BigInt& n_half) {
  using detail::from_int;
  using detail::power;
  const auto m = static_cast<unsigned>(max_word_length(classes));
  const T size_w = from_int<T>(BigInt(classes.size()));
  const T c_w = from_int<T>(BigInt(max_class_size(classes)));
  const T n = from_int<T>(n_half);
  const T six_fifths = T(6) / T(5);
  const T three_m = from_int<T>(BigInt(3 * m));
  const T six_m = from_int<T>(BigInt(6 * m));
  SigmaTerms<T> t;
  t.s1 = six_fifths / n * (T(1) + power(three_m, m + 1));
  t.s2 = six_fifths * size_w * c_w * power(six_m, 3 * m + 3) / n;
  t.s3 = six_fifths * size_w * c_w * power(three_m, 3 * m + 3) / n;
  const T inner = size_w * from_int<T>(BigInt(m)) + power(three_m, m);
  t.s4 = T(36) * inner * inner / (T(25) * n);
  return t;
}

/// 3 * sum over classes of the four class-scaled sigma terms.
template <class T = LogNumber>
T refined_mtv_bound(const std::vector<WordClass>& classes, const BigInt& n_half) {
  detail::Accumulator<T> acc;
  for (const auto& t : sigma_bounds<T>(classes, n_half)) acc.add(t.class_total());
  return T(3) * acc.total();
}

/// 18 |W|^3 (6 m_W)^(3 m_W + 4) / N. Requires m_W <= N.
template <class T = LogNumber>
T main_bound(std::size_t class_count, std::size_t m_w, const BigInt& n_half) {
  require(n_half >= 1, "N must be at least 1");
  require(BigInt(m_w) <= n_half, "hypothesis m_W <= N violated");
  using detail::from_int;
  using detail::power;
  const T count = from_int<T>(BigInt(class_count));
  return T(18) * power(count, 3) * power(from_int<T>(BigInt(6 * m_w)), static_cast<unsigned>(3 * m_w + 4)) /
         from_int<T>(n_half);
}

template <class T = LogNumber>
T main_bound(const std::vector<WordClass>& classes, const BigInt& n_half) {
  return main_bound<T>(classes.size(), max_word_length(classes), n_half);
}

/// min(1, 1/lambda): the single-class Stein factor.
inline double univariate_bound_scale(double lambda) {
  require(lambda > 0, "lambda must be positive");
  return std::min(1.0, 1.0 / lambda);
}

struct BoundReport {
  std::vector<WordClass> classes;
  BigInt n_half;
  std::size_t m_w;
  std::size_t c_w;
  std::vector<SigmaTerms<LogNumber>> sigma;
  LogNumber refined_mtv_bound;
  LogNumber main_bound;
  // exact shadows, present for N <= 1000 and m_W <= 6
  std::optional<Rational> refined_exact;
  std::optional<Rational> main_exact;

  bool refined_within_main() const {
    if (refined_exact && main_exact) return *refined_exact <= *main_exact;
    return refined_mtv_bound <= main_bound;
  }
};

inline BoundReport evaluate_bounds(const std::vector<WordClass>& classes, const BigInt& n_half) {
  BoundReport r;
  r.classes = classes;
  r.n_half = n_half;
  r.m_w = max_word_length(classes);
  r.c_w = max_class_size(classes);
  r.main_bound = main_bound<LogNumber>(classes, n_half);
  r.sigma = sigma_bounds<LogNumber>(classes, n_half);
  LogSum total;
  for (const auto& t : r.sigma) total.add(t.class_total());
  r.refined_mtv_bound = LogNumber(3.0) * total.total();
  if (n_half <= 1000 && r.m_w <= 6) {
    r.main_exact = main_bound<Rational>(classes, n_half);
    r.refined_exact = refined_mtv_bound<Rational>(classes, n_half);
  }
  return r;
}

struct AdmissibleTrace {
  std::optional<std::uint64_t> max_trace;  // empty: no k >= 3 qualifies
  bool census_cap_reached = false;          // k = 25 still qualified
};

/// Largest k with main_bound(W(k), N) <= tol, using the enumerated census
/// size |W(k)| and m_{W(k)} = k - 1.
inline AdmissibleTrace admissible_trace_for_N(const BigInt& n_half, double tol) {
  require(n_half >= 2, "N must be at least 2");
  require(tol > 0 && tol <= 1, "tolerance must lie in (0, 1]");
  AdmissibleTrace out;
  const LogNumber limit(tol);
  for (std::uint64_t k = 3; k <= kMaxCensusTrace; ++k) {
    const std::size_t m = k - 1;
    if (BigInt(m) > n_half) break;
    if (main_bound<LogNumber>(enumerate_classes_by_trace(k).count, m, n_half) > limit) break;
    out.max_trace = k;
    out.census_cap_reached = k == kMaxCensusTrace;
  }
  return out;
}

}  // namespace randsurf
