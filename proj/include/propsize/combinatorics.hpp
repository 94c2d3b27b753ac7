#ifndef PROPSIZE_COMBINATORICS_HPP
#define PROPSIZE_COMBINATORICS_HPP

#include <propsize/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <unordered_map>

namespace propsize {

// C(m, z); zero outside 0 <= z <= m, negative m is a domain error.
inline Int binom(Index m, Index z) {
  if (m < 0) throw std::domain_error("binom: negative upper argument");
  if (z < 0 || z > m) return Int(0);
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(m),
               static_cast<unsigned long>(z));
  return r;
}

class BinomCache {
 public:
  const Int& at(Index m, Index z) {
    if (m < 0) throw std::domain_error("binom: negative upper argument");
    if (z < 0 || z > m) return zero_;
    if (m >= (Index(1) << 31))
      throw std::overflow_error("binom cache: row too large");
    Index zc = std::min(z, m - z);
    std::uint64_t key = (static_cast<std::uint64_t>(m) << 32) |
                        static_cast<std::uint64_t>(zc);
    auto it = table_.find(key);
    if (it == table_.end()) it = table_.emplace(key, binom(m, zc)).first;
    return it->second;
  }

 private:
  std::unordered_map<std::uint64_t, Int> table_;
  Int zero_{0};
};

namespace detail {

inline void check_population(Index N, Index M, Index n) {
  if (N < 1 || M < 0 || M > N || n < 1 || n > N)
    throw std::invalid_argument("require 0 <= M <= N, 1 <= n <= N, N >= 1");
}

// Numerator of sum_{i=k..l} C(M,i) C(N-M,n-i) over the common denominator
// C(N,n), accumulated with the multiplicative one-step recurrence.
inline Int window_numerator(Index n, Index k, Index l, Index M, Index N,
                            BinomCache& cache) {
  Index lo = std::max(k, std::max<Index>(0, n - (N - M)));
  Index hi = std::min(l, std::min(n, M));
  if (lo > hi) return Int(0);
  Int term = cache.at(M, lo) * cache.at(N - M, n - lo);
  Int acc = term;
  for (Index i = lo; i < hi; ++i) {
    mpz_mul_ui(term.get_mpz_t(), term.get_mpz_t(),
               static_cast<unsigned long>(M - i));
    mpz_mul_ui(term.get_mpz_t(), term.get_mpz_t(),
               static_cast<unsigned long>(n - i));
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(),
                    static_cast<unsigned long>(i + 1));
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(),
                    static_cast<unsigned long>(N - M - n + i + 1));
    acc += term;
  }
  return acc;
}

}  // namespace detail

// Probability that a size-n draw from {M good, N-M bad} has exactly i good.
inline Rat hyper_pmf(Index N, Index M, Index n, Index i) {
  detail::check_population(N, M, n);
  return Rat(binom(M, i) * binom(N - M, n - i), binom(N, n));
}

// Probability that the good count lands in [k, l].
inline Rat window_prob(Index n, Index k, Index l, Index M, Index N) {
  detail::check_population(N, M, n);
  BinomCache cache;
  return Rat(detail::window_numerator(n, k, l, M, N, cache), binom(N, n));
}

// One-step difference kernel C(M,k) C(N-M-1,n-k-1) / C(N,n).
inline Rat step_diff(Index k, Index M, Index N, Index n) {
  if (N < 1 || M < 0 || M >= N || n < 1 || n > N)
    throw std::invalid_argument("require 0 <= M < N, 1 <= n <= N");
  return Rat(binom(M, k) * binom(N - M - 1, n - k - 1), binom(N, n));
}

// Per-(N, n) window-sum evaluator: shares the denominator C(N, n) and a
// binomial cache across calls, and counts every numerator computation.
class WindowEvaluator {
 public:
  WindowEvaluator(Index N, Index n) : N_(N), n_(n), denom_(binom(N, n)) {
    detail::check_population(N, 0, n);
  }

  Index population() const { return N_; }
  Index sample() const { return n_; }
  const Int& denom() const { return denom_; }
  std::uint64_t evaluations() const { return evals_; }

  Int numerator(Index k, Index l, Index M) {
    ++evals_;
    return detail::window_numerator(n_, k, l, M, N_, cache_);
  }

  Rat probability(Index k, Index l, Index M) {
    return Rat(numerator(k, l, M), denom_);
  }

 private:
  Index N_, n_;
  Int denom_;
  BinomCache cache_;
  std::uint64_t evals_ = 0;
};

}  // namespace propsize

#endif
