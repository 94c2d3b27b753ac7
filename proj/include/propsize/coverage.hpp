#ifndef PROPSIZE_COVERAGE_HPP
#define PROPSIZE_COVERAGE_HPP

#include <propsize/combinatorics.hpp>

namespace propsize {

enum class CriterionKind { absolute, relative, mixed };

inline const char* to_string(CriterionKind k) {
  switch (k) {
    case CriterionKind::absolute: return "abs";
    case CriterionKind::relative: return "rel";
    default: return "mixed";
  }
}

// Error tolerance: absolute radius, relative radius, or both (mixed keeps
// whichever is weaker pointwise).  Radii must lie strictly inside (0, 1).
class ErrorCriterion {
 public:
  static ErrorCriterion absolute(const Rat& eps) {
    check_radius(eps, "absolute");
    return ErrorCriterion(CriterionKind::absolute, eps, Rat(0));
  }
  static ErrorCriterion relative(const Rat& eps) {
    check_radius(eps, "relative");
    return ErrorCriterion(CriterionKind::relative, Rat(0), eps);
  }
  static ErrorCriterion mixed(const Rat& eps_abs, const Rat& eps_rel) {
    check_radius(eps_abs, "absolute");
    check_radius(eps_rel, "relative");
    return ErrorCriterion(CriterionKind::mixed, eps_abs, eps_rel);
  }

  CriterionKind kind() const { return kind_; }
  const Rat& abs_radius() const { return ea_; }
  const Rat& rel_radius() const { return er_; }

 private:
  ErrorCriterion(CriterionKind k, Rat ea, Rat er)
      : kind_(k), ea_(std::move(ea)), er_(std::move(er)) {}
  static void check_radius(const Rat& eps, const char* which) {
    if (eps <= Rat(0) || eps >= Rat(1))
      throw std::invalid_argument(std::string(which) +
                                  " radius must lie in (0, 1)");
  }
  CriterionKind kind_;
  Rat ea_, er_;
};

// Closed range [L, U] of population counts under consideration.
struct PopulationFrame {
  Index N, L, U;
  PopulationFrame(Index N_, Index L_, Index U_) : N(N_), L(L_), U(U_) {
    if (N < 1 || L < 0 || L > U || U > N)
      throw std::invalid_argument("frame requires N >= 1 and 0 <= L <= U <= N");
  }
  Index width() const { return U - L; }
  bool contains(Index M) const { return L <= M && M <= U; }
  friend bool operator==(const PopulationFrame& a, const PopulationFrame& b) {
    return a.N == b.N && a.L == b.L && a.U == b.U;
  }
};

// Integer window [g, h] of sample counts accepted at a given M; may be empty.
struct AcceptanceWindow {
  Index g, h;
  bool empty() const { return g > h; }
  bool contains(Index k) const { return g <= k && k <= h; }
  friend bool operator==(const AcceptanceWindow& a, const AcceptanceWindow& b) {
    return a.g == b.g && a.h == b.h;
  }
};

// Ratio N * eps_abs / eps_rel whose floor splits the mixed criterion into
// its absolute and relative regimes.
inline Rat mixed_break_value(Index N, const ErrorCriterion& crit) {
  if (crit.kind() != CriterionKind::mixed)
    throw std::invalid_argument("break value requires a mixed criterion");
  return Rat(Int(N)) * crit.abs_radius() / crit.rel_radius();
}

inline Int mixed_breakpoint(Index N, const ErrorCriterion& crit) {
  return mixed_break_value(N, crit).floor();
}

namespace detail {

inline Index to_index(const Int& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("index overflow");
  return v.get_si();
}

// Machine-word lane for the window and candidate arithmetic: everything is
// a floor or ceiling of (a +- b) / c with operands far below 2^42, so
// 128-bit intermediates are exact whenever the radius fits a word.
using i128 = __int128;

inline Index fdiv(i128 a, i128 b) {
  i128 q = a / b;
  if (a % b != 0 && a < 0) --q;
  return static_cast<Index>(q);
}

inline Index cdiv(i128 a, i128 b) {
  i128 q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return static_cast<Index>(q);
}

inline bool small_frac(const Rat& e, long& p, long& q) {
  if (!e.num().fits_slong_p() || !e.den().fits_slong_p()) return false;
  p = e.num().get_si();
  q = e.den().get_si();
  return p > 0 && q > 0 && p < (1L << 31) && q < (1L << 31);
}

constexpr Index kSmallIndex = Index(1) << 31;

inline AcceptanceWindow absolute_window(Index n, Index M, Index N,
                                        const Rat& eps) {
  long p, q;
  if (N < kSmallIndex && small_frac(eps, p, q)) {
    i128 den = i128(N) * q;
    i128 c = i128(n) * M * q;
    i128 r = i128(n) * N * p;
#ifdef PROPSIZE_FAULT_NONSTRICT_WINDOW
    return {cdiv(c - r, den), cdiv(c + r, den) - 1};
#else
    return {fdiv(c - r, den) + 1, cdiv(c + r, den) - 1};
#endif
  }
  Rat center = Rat(Int(n) * Int(M), Int(N));
  Rat lo = center - Rat(Int(n)) * eps;
  Rat hi = center + Rat(Int(n)) * eps;
#ifdef PROPSIZE_FAULT_NONSTRICT_WINDOW
  return {to_index(lo.ceil()), to_index(hi.ceil()) - 1};
#else
  return {to_index(lo.floor()) + 1, to_index(hi.ceil()) - 1};
#endif
}

inline AcceptanceWindow relative_window(Index n, Index M, Index N,
                                        const Rat& eps) {
  long p, q;
  if (N < kSmallIndex && small_frac(eps, p, q)) {
    i128 den = i128(N) * q;
    i128 lo = i128(n) * M * (q - p);
    i128 hi = i128(n) * M * (q + p);
    return {fdiv(lo, den) + 1, cdiv(hi, den) - 1};
  }
  Rat center = Rat(Int(n) * Int(M), Int(N));
  Rat lo = center * (Rat(1) - eps);
  Rat hi = center * (Rat(1) + eps);
  return {to_index(lo.floor()) + 1, to_index(hi.ceil()) - 1};
}

}  // namespace detail

// Sample counts k whose estimate k/n meets the tolerance at M, i.e. the
// integers strictly inside the real acceptance interval.
inline AcceptanceWindow acceptance_window(Index n, Index M, Index N,
                                          const ErrorCriterion& crit) {
  detail::check_population(N, M, n);
  switch (crit.kind()) {
    case CriterionKind::absolute:
      return detail::absolute_window(n, M, N, crit.abs_radius());
    case CriterionKind::relative:
      return detail::relative_window(n, M, N, crit.rel_radius());
    default:
      if (Int(M) <= mixed_breakpoint(N, crit))
        return detail::absolute_window(n, M, N, crit.abs_radius());
      return detail::relative_window(n, M, N, crit.rel_radius());
  }
}

// Direct statement of the tolerance event for a drawn count k, bypassing
// the window construction entirely.
inline bool criterion_holds(Index k, Index n, Index M, Index N,
                            const ErrorCriterion& crit) {
  detail::check_population(N, M, n);
  Int dev = ::abs(Int(k) * N - Int(M) * n);
  auto abs_ok = [&] {
    const Rat& e = crit.abs_radius();
    return dev * e.den() < e.num() * Int(n) * N;
  };
  auto rel_ok = [&] {
    const Rat& e = crit.rel_radius();
    return dev * e.den() < e.num() * Int(n) * M;
  };
  switch (crit.kind()) {
    case CriterionKind::absolute: return abs_ok();
    case CriterionKind::relative: return rel_ok();
    default: return abs_ok() || rel_ok();
  }
}

// Probability that the drawn count lands in the acceptance window at M.
inline Rat coverage(Index n, Index M, Index N, const ErrorCriterion& crit) {
  AcceptanceWindow w = acceptance_window(n, M, N, crit);
  if (w.empty()) return Rat(0);
  return window_prob(n, w.g, w.h, M, N);
}

// Same value routed through a shared evaluator; empty windows are resolved
// without spending an evaluation.
inline Rat coverage(WindowEvaluator& ev, Index M, const ErrorCriterion& crit) {
  AcceptanceWindow w = acceptance_window(ev.sample(), M, ev.population(), crit);
  if (w.empty()) return Rat(0);
  return ev.probability(w.g, w.h, M);
}

// Confirms that branching on the breakpoint reproduces the union of the
// absolute and relative events for every k; the mixed window at each M is
// simply the wider of the two concentric intervals.
inline bool mixed_piecewise_check(Index n, Index N, const ErrorCriterion& crit,
                                  Index M_lo, Index M_hi) {
  if (crit.kind() != CriterionKind::mixed)
    throw std::invalid_argument("piecewise check requires a mixed criterion");
  for (Index M = M_lo; M <= M_hi; ++M) {
    AcceptanceWindow w = acceptance_window(n, M, N, crit);
    for (Index k = 0; k <= n; ++k)
      if (w.contains(k) != criterion_holds(k, n, M, N, crit)) return false;
  }
  return true;
}

}  // namespace propsize

#endif
