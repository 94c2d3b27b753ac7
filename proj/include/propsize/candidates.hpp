#ifndef PROPSIZE_CANDIDATES_HPP
#define PROPSIZE_CANDIDATES_HPP

#include <propsize/coverage.hpp>

#include <utility>
#include <vector>

namespace propsize {

// Why a value entered the candidate set; when several sources produce the
// same value the earlier tag in this order wins.
enum class Provenance { endpoint, breakpoint, floor_family, ceiling_family };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::endpoint: return "endpoint";
    case Provenance::breakpoint: return "breakpoint";
    case Provenance::floor_family: return "floor_family";
    default: return "ceiling_family";
  }
}

// Population counts that can attain the minimum coverage over a frame,
// together with the proven bound on how many there can be.
struct CandidateSet {
  struct Member {
    Index value;
    Provenance tag;
  };
  std::vector<Member> members;  // ascending, unique values
  Rat bound;

  std::size_t size() const { return members.size(); }
  std::vector<Index> values() const {
    std::vector<Index> v;
    v.reserve(members.size());
    for (const Member& m : members) v.push_back(m.value);
    return v;
  }
  bool contains(Index value) const {
    auto it = std::lower_bound(
        members.begin(), members.end(), value,
        [](const Member& m, Index x) { return m.value < x; });
    return it != members.end() && it->value == value;
  }
};

// Raised when the mixed construction is asked for a frame that does not
// straddle the regime boundary; `resolution` names the set to use instead.
class mixed_precondition_error : public std::invalid_argument {
 public:
  enum class Resolution { use_absolute, use_relative, use_union };

  mixed_precondition_error(Resolution r, Rat break_value, std::string what)
      : std::invalid_argument(std::move(what)),
        resolution(r),
        break_value(std::move(break_value)) {}

  Resolution resolution;
  Rat break_value;
};

namespace detail {

class SetBuilder {
 public:
  SetBuilder(Index lo, Index hi) : lo_(lo), hi_(hi) {}
  void add(Index value, Provenance tag) {
    if (value < lo_ || value > hi_) return;
    items_.push_back({value, tag});
  }
  CandidateSet finish(Rat bound) && {
    std::sort(items_.begin(), items_.end(),
              [](const CandidateSet::Member& a, const CandidateSet::Member& b) {
                return a.value != b.value
                           ? a.value < b.value
                           : static_cast<int>(a.tag) < static_cast<int>(b.tag);
              });
    auto last = std::unique(items_.begin(), items_.end(),
                            [](const CandidateSet::Member& a,
                               const CandidateSet::Member& b) {
                              return a.value == b.value;
                            });
    items_.erase(last, items_.end());
    CandidateSet out;
    out.members = std::move(items_);
    out.bound = std::move(bound);
    return out;
  }

 private:
  Index lo_, hi_;
  std::vector<CandidateSet::Member> items_;
};

inline void check_radius_raw(const Rat& eps) {
  if (eps <= Rat(0) || eps >= Rat(1))
    throw std::invalid_argument("radius must lie in (0, 1)");
}

inline void check_sample(const PopulationFrame& f, Index n) {
  if (n < 1 || n > f.N) throw std::invalid_argument("require 1 <= n <= N");
}

// Interior values M in (L, U) where floor(n(M/N - eps)) steps up, i.e.
// M = floor(N(k/n - eps)) for k with that value inside the open interval.
inline void absolute_families(SetBuilder& b, const PopulationFrame& f, Index n,
                              const Rat& eps) {
  const Index N = f.N, L = f.L, U = f.U;
  long p, q;
  if (N < kSmallIndex && small_frac(eps, p, q)) {
    i128 Nq = i128(N) * q, nq = i128(n) * q, np = i128(n) * p;
    Index k1 = cdiv(i128(n) * (L + 1) * q + np * N, Nq);
    Index k2 = cdiv(i128(n) * U * q + np * N, Nq) - 1;
    for (Index k = k1; k <= k2; ++k)
      b.add(fdiv(i128(N) * (i128(k) * q - np), nq), Provenance::floor_family);
    Index k3 = fdiv(i128(n) * L * q - np * N, Nq) + 1;
    Index k4 = fdiv(i128(n) * (U - 1) * q - np * N, Nq);
    for (Index k = k3; k <= k4; ++k)
      b.add(cdiv(i128(N) * (i128(k) * q + np), nq), Provenance::ceiling_family);
    return;
  }
  Rat ne = Rat(Int(n)) * eps;
  Index k1 = to_index((Rat(Int(n) * Int(L + 1), Int(N)) + ne).ceil());
  Index k2 = to_index((Rat(Int(n) * Int(U), Int(N)) + ne).ceil()) - 1;
  for (Index k = k1; k <= k2; ++k) {
    Int v = ((Rat(Int(k), Int(n)) - eps) * Rat(Int(N))).floor();
    b.add(to_index(v), Provenance::floor_family);
  }
  Index k3 = to_index((Rat(Int(n) * Int(L), Int(N)) - ne).floor()) + 1;
  Index k4 = to_index((Rat(Int(n) * Int(U - 1), Int(N)) - ne).floor());
  for (Index k = k3; k <= k4; ++k) {
    Int v = ((Rat(Int(k), Int(n)) + eps) * Rat(Int(N))).ceil();
    b.add(to_index(v), Provenance::ceiling_family);
  }
}

// Same construction for the relative windows, whose edges scale with M.
inline void relative_families(SetBuilder& b, const PopulationFrame& f, Index n,
                              const Rat& eps) {
  const Index N = f.N, L = f.L, U = f.U;
  long p, q;
  if (N < kSmallIndex && small_frac(eps, p, q)) {
    i128 Nq = i128(N) * q;
    i128 up = i128(n) * (q + p), dn = i128(n) * (q - p);
    Index k1 = cdiv(up * (L + 1), Nq);
    Index k2 = cdiv(up * U, Nq) - 1;
    for (Index k = k1; k <= k2; ++k)
      b.add(fdiv(i128(N) * k * q, up), Provenance::floor_family);
    Index k3 = fdiv(dn * L, Nq) + 1;
    Index k4 = fdiv(dn * (U - 1), Nq);
    for (Index k = k3; k <= k4; ++k)
      b.add(cdiv(i128(N) * k * q, dn), Provenance::ceiling_family);
    return;
  }
  Rat up = Rat(1) + eps, dn = Rat(1) - eps;
  Index k1 = to_index((up * Rat(Int(n) * Int(L + 1), Int(N))).ceil());
  Index k2 = to_index((up * Rat(Int(n) * Int(U), Int(N))).ceil()) - 1;
  for (Index k = k1; k <= k2; ++k) {
    Int v = (Rat(Int(Int(k) * Int(N))) / (up * Rat(Int(n)))).floor();
    b.add(to_index(v), Provenance::floor_family);
  }
  Index k3 = to_index((dn * Rat(Int(n) * Int(L), Int(N))).floor()) + 1;
  Index k4 = to_index((dn * Rat(Int(n) * Int(U - 1), Int(N))).floor());
  for (Index k = k3; k <= k4; ++k) {
    Int v = (Rat(Int(Int(k) * Int(N))) / (dn * Rat(Int(n)))).ceil();
    b.add(to_index(v), Provenance::ceiling_family);
  }
}

}  // namespace detail

// Candidate minimizers for the absolute criterion over [L, U]; fewer than
// 2n(U - L - 1)/N + 4 of them.
inline CandidateSet candidate_set_absolute(const PopulationFrame& f, Index n,
                                           const Rat& eps) {
  detail::check_radius_raw(eps);
  detail::check_sample(f, n);
  detail::SetBuilder b(f.L, f.U);
  b.add(f.L, Provenance::endpoint);
  b.add(f.U, Provenance::endpoint);
  detail::absolute_families(b, f, n, eps);
  Rat bound = Rat(Int(2 * n) * Int(f.U - f.L - 1), Int(f.N)) + Rat(4);
  return std::move(b).finish(std::move(bound));
}

// Candidate minimizers for the relative criterion over [L, U]; same bound.
inline CandidateSet candidate_set_relative(const PopulationFrame& f, Index n,
                                           const Rat& eps) {
  detail::check_radius_raw(eps);
  detail::check_sample(f, n);
  detail::SetBuilder b(f.L, f.U);
  b.add(f.L, Provenance::endpoint);
  b.add(f.U, Provenance::endpoint);
  detail::relative_families(b, f, n, eps);
  Rat bound = Rat(Int(2 * n) * Int(f.U - f.L - 1), Int(f.N)) + Rat(4);
  return std::move(b).finish(std::move(bound));
}

// Candidate minimizers for the mixed criterion, valid when the regime
// boundary N * eps_abs / eps_rel lies strictly between L and U; fewer than
// 2n(U - L - 3)/N + 8 members.  Outside that range the thrown error names
// the pure set (or union of both) that coincides with the mixed coverage.
inline CandidateSet candidate_set_mixed(const PopulationFrame& f, Index n,
                                        const ErrorCriterion& crit) {
  if (crit.kind() != CriterionKind::mixed)
    throw std::invalid_argument("candidate_set_mixed requires a mixed criterion");
  detail::check_sample(f, n);
  Rat x = mixed_break_value(f.N, crit);
  using Res = mixed_precondition_error::Resolution;
  if (x < Rat(Int(f.L)))
    throw mixed_precondition_error(
        Res::use_relative, x,
        "regime boundary below frame: relative windows apply throughout");
  if (x > Rat(Int(f.U)))
    throw mixed_precondition_error(
        Res::use_absolute, x,
        "regime boundary above frame: absolute windows apply throughout");
  if (x == Rat(Int(f.L)) || x == Rat(Int(f.U)))
    throw mixed_precondition_error(
        Res::use_union, x,
        "regime boundary sits on a frame endpoint: take both pure sets");

  Index B = detail::to_index(x.floor());
  detail::SetBuilder b(f.L, f.U);
  b.add(f.L, Provenance::endpoint);
  b.add(f.U, Provenance::endpoint);
  b.add(B, Provenance::breakpoint);
  b.add(B + 1, Provenance::breakpoint);
  if (B > f.L)
    detail::absolute_families(b, PopulationFrame(f.N, f.L, B), n,
                              crit.abs_radius());
  if (B + 1 < f.U)
    detail::relative_families(b, PopulationFrame(f.N, B + 1, f.U), n,
                              crit.rel_radius());
  Rat bound = Rat(Int(2 * n) * Int(f.U - f.L - 3), Int(f.N)) + Rat(8);
  return std::move(b).finish(std::move(bound));
}

// Mirror frame under M -> N - M; absolute coverage is invariant under it.
inline PopulationFrame reflect_frame(const PopulationFrame& f) {
  return PopulationFrame(f.N, f.N - f.U, f.N - f.L);
}

}  // namespace propsize

#endif
