#ifndef PROPSIZE_SIZING_HPP
#define PROPSIZE_SIZING_HPP

#include <propsize/candidates.hpp>

#include <exception>
#include <map>
#include <thread>
#include <vector>

namespace propsize {

enum class SearchMode { ascending, accelerated };

// A sizing problem: find the least n whose worst-case coverage over the
// frame exceeds 1 - delta.
struct SizingRequest {
  PopulationFrame frame;
  ErrorCriterion criterion;
  Rat delta;
  SearchMode mode = SearchMode::ascending;

  SizingRequest(PopulationFrame f, ErrorCriterion c, Rat d,
                SearchMode m = SearchMode::ascending)
      : frame(f), criterion(std::move(c)), delta(std::move(d)), mode(m) {
    if (delta <= Rat(0) || delta >= Rat(1))
      throw std::invalid_argument("delta must lie in (0, 1)");
  }
};

struct FrameMinResult {
  Index worst_M;           // smallest evaluated M attaining the minimum
  Rat value;               // exact minimum coverage over the frame
  std::uint64_t evaluations;
  std::uint64_t candidates;
};

struct SampleSizeResult {
  Index n_min;
  Index worst_M;
  Rat min_coverage;
  std::uint64_t coverage_evaluations;  // summed over the whole search
  std::uint64_t candidates_at_n_min;
};

// One record per sample size inspected during a search.  Ascending searches
// record the frame minimum at every n; accelerated searches may instead
// record a single failing witness for sizes they can rule out early.
struct TraceEntry {
  Index n;
  Index worst_M;
  Rat min_coverage;
};

// The requested tolerance can never be met: some admissible M pins the
// coverage at zero no matter how large the sample gets.
class infeasible_error : public std::runtime_error {
 public:
  explicit infeasible_error(std::string what)
      : std::runtime_error(std::move(what)) {}
};

// No admissible sample size satisfies the request (defensive; a census
// meets any feasible tolerance).
class unreachable_error : public std::runtime_error {
 public:
  explicit unreachable_error(std::string what)
      : std::runtime_error(std::move(what)) {}
};

// Candidate set plus the construction that produced it.  Mixed requests
// whose regime boundary misses the frame interior fall back to the pure
// set (or the union of both) that the thrown error prescribes.
struct CandidatePlan {
  enum class Route {
    absolute,
    relative,
    mixed_interior,
    fallback_absolute,
    fallback_relative,
    fallback_union
  };
  CandidateSet set;
  Route route;
};

inline const char* to_string(CandidatePlan::Route r) {
  switch (r) {
    case CandidatePlan::Route::absolute: return "absolute";
    case CandidatePlan::Route::relative: return "relative";
    case CandidatePlan::Route::mixed_interior: return "mixed_interior";
    case CandidatePlan::Route::fallback_absolute: return "fallback_absolute";
    case CandidatePlan::Route::fallback_relative: return "fallback_relative";
    default: return "fallback_union";
  }
}

namespace detail {

inline CandidateSet merge_sets(const CandidateSet& a, const CandidateSet& b) {
  std::map<Index, Provenance> merged;
  for (const auto& m : a.members) merged.try_emplace(m.value, m.tag);
  for (const auto& m : b.members) {
    auto [it, fresh] = merged.try_emplace(m.value, m.tag);
    if (!fresh && static_cast<int>(m.tag) < static_cast<int>(it->second))
      it->second = m.tag;
  }
  CandidateSet out;
  out.members.reserve(merged.size());
  for (auto& [v, t] : merged) out.members.push_back({v, t});
  out.bound = a.bound + b.bound;
  return out;
}

}  // namespace detail

inline CandidatePlan plan_candidates(const PopulationFrame& f, Index n,
                                     const ErrorCriterion& crit) {
  using Route = CandidatePlan::Route;
  switch (crit.kind()) {
    case CriterionKind::absolute:
      return {candidate_set_absolute(f, n, crit.abs_radius()), Route::absolute};
    case CriterionKind::relative:
      return {candidate_set_relative(f, n, crit.rel_radius()), Route::relative};
    default:
      try {
        return {candidate_set_mixed(f, n, crit), Route::mixed_interior};
      } catch (const mixed_precondition_error& e) {
        using Res = mixed_precondition_error::Resolution;
        switch (e.resolution) {
          case Res::use_absolute:
            return {candidate_set_absolute(f, n, crit.abs_radius()),
                    Route::fallback_absolute};
          case Res::use_relative:
            return {candidate_set_relative(f, n, crit.rel_radius()),
                    Route::fallback_relative};
          default:
            return {detail::merge_sets(
                        candidate_set_absolute(f, n, crit.abs_radius()),
                        candidate_set_relative(f, n, crit.rel_radius())),
                    Route::fallback_union};
        }
      }
  }
}

namespace detail {

// Coverage is trivially one at the frame ends of the absolute criterion:
// a population with no (or only) marked items is estimated exactly.
inline bool known_one(Index M, Index N, const ErrorCriterion& crit) {
  return crit.kind() == CriterionKind::absolute && (M == 0 || M == N);
}

// Absolute coverage is invariant under M -> N - M, so a frame symmetric
// about N/2 can be folded onto its lower half before evaluation.
inline PopulationFrame reduced_frame(const PopulationFrame& f,
                                     const ErrorCriterion& crit) {
  if (crit.kind() == CriterionKind::absolute && f.L + f.U == f.N &&
      f.U > (f.N + 1) / 2)
    return PopulationFrame(f.N, f.L, (f.N + 1) / 2);
  return f;
}

inline void numerators_for_members(const std::vector<CandidateSet::Member>& ms,
                                   std::size_t begin, std::size_t end,
                                   Index N, Index n,
                                   const ErrorCriterion& crit,
                                   std::vector<Int>& nums,
                                   std::uint64_t& evals) {
  WindowEvaluator ev(N, n);
  for (std::size_t i = begin; i < end; ++i) {
    Index M = ms[i].value;
    if (known_one(M, N, crit)) {
      nums[i] = ev.denom();
      continue;
    }
    AcceptanceWindow w = acceptance_window(n, M, N, crit);
    nums[i] = w.empty() ? Int(0) : ev.numerator(w.g, w.h, M);
  }
  evals = ev.evaluations();
}

}  // namespace detail

// Exact minimum coverage over the frame at sample size n, evaluated on the
// candidate set only.  An absolute criterion over a frame symmetric about
// N/2 is folded onto its lower half first.  The reduction over members is
// sequential and index-ordered, so the result does not depend on `threads`.
inline FrameMinResult min_coverage_over_frame(const PopulationFrame& frame,
                                              Index n,
                                              const ErrorCriterion& crit,
                                              int threads = 1) {
  detail::check_sample(frame, n);
  PopulationFrame f = detail::reduced_frame(frame, crit);
  CandidatePlan plan = plan_candidates(f, n, crit);
  const auto& ms = plan.set.members;
  std::vector<Int> nums(ms.size());
  std::uint64_t evals = 0;

  std::size_t want = threads > 1 ? std::min<std::size_t>(threads, ms.size()) : 1;
  if (want > 1 && ms.size() >= 2 * want) {
    std::size_t chunk = (ms.size() + want - 1) / want;
    std::vector<std::thread> pool;
    std::vector<std::uint64_t> counts(want, 0);
    std::vector<std::exception_ptr> errs(want);
    for (std::size_t t = 0; t < want; ++t) {
      std::size_t b = t * chunk, e = std::min(ms.size(), b + chunk);
      pool.emplace_back([&, b, e, t] {
        try {
          detail::numerators_for_members(ms, b, e, f.N, n, crit, nums,
                                         counts[t]);
        } catch (...) {
          errs[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& ep : errs)
      if (ep) std::rethrow_exception(ep);
    for (auto c : counts) evals += c;
  } else {
    detail::numerators_for_members(ms, 0, ms.size(), f.N, n, crit, nums, evals);
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < nums.size(); ++i)
    if (nums[i] < nums[best]) best = i;
  return {ms[best].value, Rat(nums[best], binom(f.N, n)), evals,
          static_cast<std::uint64_t>(ms.size())};
}

// Number of window sums min_coverage_over_frame would actually compute:
// candidate members minus the trivially-known and empty-window ones.  Costs
// only the candidate construction, no hypergeometric arithmetic.
inline std::uint64_t planned_evaluations(const PopulationFrame& frame, Index n,
                                         const ErrorCriterion& crit) {
  PopulationFrame f = detail::reduced_frame(frame, crit);
  CandidatePlan plan = plan_candidates(f, n, crit);
  std::uint64_t count = 0;
  for (const auto& m : plan.set.members) {
    if (detail::known_one(m.value, f.N, crit)) continue;
    if (acceptance_window(n, m.value, f.N, crit).empty()) continue;
    ++count;
  }
  return count;
}

namespace detail {

inline void check_feasible(const SizingRequest& req) {
  if (req.criterion.kind() == CriterionKind::relative && req.frame.L == 0)
    throw infeasible_error(
        "relative tolerance is unattainable: M = 0 is admissible and its "
        "coverage is zero at every sample size");
}

struct SearchState {
  const SizingRequest& req;
  int threads;
  std::vector<TraceEntry>* trace;
  Rat threshold;
  std::uint64_t total_evals = 0;
  std::map<Index, FrameMinResult> cache;
  Index last_worst = -1;

  FrameMinResult full(Index n) {
    FrameMinResult r =
        min_coverage_over_frame(req.frame, n, req.criterion, threads);
    total_evals += r.evaluations;
    cache.emplace(n, r);
    last_worst = r.worst_M;
    if (trace) trace->push_back({n, r.worst_M, r.value});
    return r;
  }

  bool satisfied(const FrameMinResult& r) const { return r.value > threshold; }

  SampleSizeResult result_at(Index n) const {
    const FrameMinResult& r = cache.at(n);
    return {n, r.worst_M, r.value, total_evals, r.candidates};
  }
};

// Tries to rule out sample size n by exhibiting one candidate with
// coverage at or below the threshold; falls back to the full minimum.
// Returns true when n actually satisfies the criterion.
inline bool witness_or_full(SearchState& st, Index n) {
  const ErrorCriterion& crit = st.req.criterion;
  PopulationFrame f = reduced_frame(st.req.frame, crit);
  CandidatePlan plan = plan_candidates(f, n, crit);
  const auto& ms = plan.set.members;

  std::vector<std::size_t> order;
  order.reserve(ms.size());
  std::size_t preferred = ms.size();
  if (st.last_worst >= 0)
    for (std::size_t i = 0; i < ms.size(); ++i)
      if (ms[i].value == st.last_worst) preferred = i;
  if (preferred < ms.size()) order.push_back(preferred);
  for (std::size_t i = 0; i < ms.size(); ++i)
    if (i != preferred) order.push_back(i);

  WindowEvaluator ev(f.N, n);
  std::vector<Int> nums(ms.size());
  std::vector<bool> have(ms.size(), false);
  for (std::size_t i : order) {
    Index M = ms[i].value;
    if (known_one(M, f.N, crit)) {
      nums[i] = ev.denom();
    } else {
      AcceptanceWindow w = acceptance_window(n, M, f.N, crit);
      nums[i] = w.empty() ? Int(0) : ev.numerator(w.g, w.h, M);
    }
    have[i] = true;
    Rat value(nums[i], ev.denom());
    if (value <= st.threshold) {
      st.total_evals += ev.evaluations();
      st.last_worst = M;
      if (st.trace) st.trace->push_back({n, M, value});
      return false;
    }
  }
  // Every candidate cleared the threshold, so n satisfies the criterion;
  // reduce index-ordered for the canonical worst member.
  st.total_evals += ev.evaluations();
  std::size_t best = 0;
  for (std::size_t i = 1; i < nums.size(); ++i)
    if (nums[i] < nums[best]) best = i;
  FrameMinResult r{ms[best].value, Rat(nums[best], ev.denom()),
                   ev.evaluations(),
                   static_cast<std::uint64_t>(ms.size())};
  st.cache.emplace(n, r);
  st.last_worst = r.worst_M;
  if (st.trace) st.trace->push_back({n, r.worst_M, r.value});
  return true;
}

}  // namespace detail

// Least n >= 2 with frame-minimum coverage strictly above 1 - delta.  The
// ascending mode walks n upward evaluating every size; the accelerated mode
// brackets by doubling, bisects, then certifies every smaller size with a
// failing witness, and both return identical results.  When a trace is
// supplied it receives one entry per inspected n with the answer's entry
// last.
inline SampleSizeResult minimum_sample_size(
    const SizingRequest& req, int threads = 1,
    std::vector<TraceEntry>* trace = nullptr) {
  detail::check_feasible(req);
  const Index N = req.frame.N;
  if (N < 2)
    throw std::invalid_argument("sizing requires a population of at least 2");
  detail::SearchState st{req, threads, trace, Rat(1) - req.delta, 0, {}, -1};

  if (req.mode == SearchMode::ascending) {
    for (Index n = 2; n <= N; ++n) {
      FrameMinResult r = st.full(n);
      if (st.satisfied(r)) return st.result_at(n);
    }
    throw unreachable_error("no sample size up to a census satisfies the request");
  }

  Index lo = 1, hi = 0;
  for (Index n = 2;; n = std::min(N, 2 * n)) {
    FrameMinResult r = st.full(n);
    if (st.satisfied(r)) {
      hi = n;
      break;
    }
    lo = n;
    if (n == N)
      throw unreachable_error("no sample size up to a census satisfies the request");
  }
  while (hi - lo > 1) {
    Index mid = lo + (hi - lo) / 2;
    FrameMinResult r = st.full(mid);
    if (st.satisfied(r))
      hi = mid;
    else
      lo = mid;
  }
  Index answer = hi;
  for (Index n = 2; n < answer; ++n) {
    if (auto it = st.cache.find(n); it != st.cache.end()) continue;
    if (detail::witness_or_full(st, n)) {
      answer = n;
      break;
    }
  }
  if (trace) {
    for (std::size_t i = 0; i < trace->size(); ++i) {
      if ((*trace)[i].n == answer && i + 1 != trace->size()) {
        TraceEntry e = (*trace)[i];
        trace->erase(trace->begin() + static_cast<std::ptrdiff_t>(i));
        trace->push_back(e);
        break;
      }
    }
  }
  return st.result_at(answer);
}

inline std::vector<TraceEntry> sizing_trace(const SizingRequest& req,
                                            int threads = 1) {
  std::vector<TraceEntry> out;
  minimum_sample_size(req, threads, &out);
  return out;
}

}  // namespace propsize

#endif
