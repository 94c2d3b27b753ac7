#ifndef PROPSIZE_ORACLE_HPP
#define PROPSIZE_ORACLE_HPP

#include <propsize/rng.hpp>
#include <propsize/sizing.hpp>

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

// Independent checking machinery: exhaustive scans, combinatorial identity
// sweeps and simulation, used to corroborate the candidate-set engine.
namespace propsize {
namespace oracle {

struct Failure {
  std::string instance;
  std::string expected;
  std::string actual;
};

struct VerificationReport {
  std::string name;
  std::uint64_t instances = 0;
  std::uint64_t failure_count = 0;
  std::vector<Failure> failures;  // first 16 kept for display
  std::uint64_t engine_evaluations = 0;
  std::uint64_t oracle_evaluations = 0;

  bool pass() const { return failure_count == 0; }
  void fail(std::string inst, std::string exp, std::string act) {
    ++failure_count;
    if (failures.size() < 16)
      failures.push_back({std::move(inst), std::move(exp), std::move(act)});
  }
};

inline VerificationReport make_report(std::string name) {
  VerificationReport rep;
  rep.name = std::move(name);
  return rep;
}

// Minimum coverage by walking every M in the frame; the reference the
// candidate engine is measured against.
inline FrameMinResult full_scan_min(const PopulationFrame& f, Index n,
                                    const ErrorCriterion& crit) {
  WindowEvaluator ev(f.N, n);
  Index worst = f.L;
  Rat best = coverage(ev, f.L, crit);
  for (Index M = f.L + 1; M <= f.U; ++M) {
    Rat v = coverage(ev, M, crit);
    if (v < best) {
      best = v;
      worst = M;
    }
  }
  return {worst, best, ev.evaluations(),
          static_cast<std::uint64_t>(f.width() + 1)};
}

namespace detail {

inline std::string instance_tag(const PopulationFrame& f, Index n,
                                const ErrorCriterion& crit) {
  std::ostringstream os;
  os << "N=" << f.N << " [" << f.L << "," << f.U << "] n=" << n << " "
     << to_string(crit.kind());
  switch (crit.kind()) {
    case CriterionKind::absolute:
      os << " eps=" << crit.abs_radius();
      break;
    case CriterionKind::relative:
      os << " eps=" << crit.rel_radius();
      break;
    default:
      os << " eps_abs=" << crit.abs_radius()
         << " eps_rel=" << crit.rel_radius();
  }
  return os.str();
}

// Numerator prefix sums over the shared denominator C(N, n): row M holds
// sum_{i<=j} C(M,i) C(N-M,n-i) for j in [0, n].
struct SumTable {
  Index N, n;
  Int D;
  std::vector<std::vector<Int>> P;

  SumTable(Index N_, Index n_, BinomCache& cache) : N(N_), n(n_) {
    D = binom(N, n);
    P.assign(static_cast<std::size_t>(N + 1), {});
    for (Index M = 0; M <= N; ++M) {
      auto& row = P[static_cast<std::size_t>(M)];
      row.resize(static_cast<std::size_t>(n + 1));
      Int acc(0);
      for (Index i = 0; i <= n; ++i) {
        acc += cache.at(M, i) * cache.at(N - M, n - i);
        row[static_cast<std::size_t>(i)] = acc;
      }
    }
  }

  // Numerator of the window sum over [k, l] at M.
  Int S(Index k, Index l, Index M) const {
    if (l < k || l < 0 || k > n) return Int(0);
    const auto& row = P[static_cast<std::size_t>(M)];
    Int hi = row[static_cast<std::size_t>(std::min(l, n))];
    if (k > 0) hi -= row[static_cast<std::size_t>(std::min(k, n) - 1)];
    return hi;
  }
};

inline Int step_kernel_num(BinomCache& cache, Index k, Index M, Index N,
                           Index n) {
  return cache.at(M, k) * cache.at(N - M - 1, n - k - 1);
}

inline std::string itag(Index N, Index n, std::initializer_list<Index> rest) {
  std::ostringstream os;
  os << "N=" << N << " n=" << n;
  for (Index v : rest) os << " " << v;
  return os.str();
}

}  // namespace detail

// --- combinatorial identity suite -----------------------------------------

// Stepping the population by one changes the lower-tail probability by
// exactly one kernel term.
inline VerificationReport check_prefix_step(Index N_max) {
  VerificationReport rep = make_report("prefix_step_identity");
  BinomCache cache;
  for (Index N = 2; N <= N_max; ++N) {
    for (Index n = 1; n <= N; ++n) {
      detail::SumTable t(N, n, cache);
      for (Index M = 0; M < N; ++M) {
        for (Index k = -1; k <= n + 1; ++k) {
          ++rep.instances;
          Int lhs = t.S(0, k, M) - t.S(0, k, M + 1);
          Int rhs = detail::step_kernel_num(cache, k, M, N, n);
          if (lhs != rhs)
            rep.fail(detail::itag(N, n, {M, k}), rhs.get_str(), lhs.get_str());
          if (rep.instances % 97 == 0 && k >= 0) {
            Rat pub = window_prob(n, 0, k, M, N);
            if (pub != Rat(t.S(0, k, M), t.D))
              rep.fail(detail::itag(N, n, {M, k}), "table == window_prob",
                       "mismatch");
          }
        }
      }
    }
  }
  return rep;
}

// General-window version: the step decomposes into the two edge kernels.
inline VerificationReport check_window_step(Index N_max) {
  VerificationReport rep = make_report("window_step_identity");
  BinomCache cache;
  for (Index N = 2; N <= N_max; ++N) {
    for (Index n = 1; n <= N; ++n) {
      detail::SumTable t(N, n, cache);
      for (Index M = 1; M <= N; ++M) {
        for (Index k = -1; k <= n; ++k) {
          for (Index l = k; l <= n + 1; ++l) {
            ++rep.instances;
            Int lhs = t.S(k, l, M) - t.S(k, l, M - 1);
            Int rhs = detail::step_kernel_num(cache, k - 1, M - 1, N, n) -
                      detail::step_kernel_num(cache, l, M - 1, N, n);
            if (lhs != rhs)
              rep.fail(detail::itag(N, n, {M, k, l}), rhs.get_str(),
                       lhs.get_str());
            if (rep.instances % 97 == 0 && k >= 0 && l <= n) {
              Rat pub = window_prob(n, k, l, M, N);
              if (pub != Rat(t.S(k, l, M), t.D))
                rep.fail(detail::itag(N, n, {M, k, l}), "table == window_prob",
                         "mismatch");
            }
          }
        }
      }
    }
  }
  return rep;
}

// Floor-threshold implications used to localize the kernel's mode.
inline VerificationReport check_floor_thresholds(Index N_max) {
  VerificationReport rep = make_report("floor_threshold_bounds");
  for (Index N = 2; N <= N_max; ++N) {
    for (Index n = 2; n <= N; ++n) {
      for (Index M = 0; M <= N; ++M) {
        Index mode = n * M / (N + 1);
        for (Index l = 0; l <= n; ++l) {
          if (M >= 1 + N * l / (n - 1)) {
            ++rep.instances;
            if (!(mode >= l))
              rep.fail(detail::itag(N, n, {M, l}), "floor >= l", "violated");
          }
        }
        for (Index k = 0; k < n; ++k) {
          // floor division also for the negative k - 1 = -1 case
          Index bound = 1 + (k >= 1 ? N * (k - 1) / (n - 1)
                                    : -((N + n - 2) / (n - 1)));
          if (M <= bound) {
            ++rep.instances;
            if (!(mode <= k - 1))
              rep.fail(detail::itag(N, n, {M, k}), "floor <= k-1", "violated");
          }
        }
      }
    }
  }
  return rep;
}

// The kernel rises to its mode and falls after it, in both arguments.
inline VerificationReport check_kernel_unimodality(Index N_max) {
  VerificationReport rep = make_report("kernel_unimodality_in_k");
  BinomCache cache;
  for (Index N = 2; N <= N_max; ++N) {
    for (Index n = 1; n <= N; ++n) {
      for (Index M = 1; M <= N; ++M) {
        Index mode = n * M / (N + 1);
        for (Index r = 1; r <= mode; ++r) {
          ++rep.instances;
          if (detail::step_kernel_num(cache, r - 1, M - 1, N, n) >
              detail::step_kernel_num(cache, r, M - 1, N, n))
            rep.fail(detail::itag(N, n, {M, r}), "ascending below mode",
                     "violated");
        }
        for (Index r = std::max<Index>(mode, 0); r <= n - 1; ++r) {
          ++rep.instances;
          if (detail::step_kernel_num(cache, r + 1, M - 1, N, n) >
              detail::step_kernel_num(cache, r, M - 1, N, n))
            rep.fail(detail::itag(N, n, {M, r}), "descending above mode",
                     "violated");
        }
      }
    }
  }
  return rep;
}

inline VerificationReport check_kernel_shift(Index N_max) {
  VerificationReport rep = make_report("kernel_monotone_in_M");
  BinomCache cache;
  for (Index N = 2; N <= N_max; ++N) {
    for (Index n = 2; n <= N; ++n) {
      for (Index r = 0; r <= n; ++r) {
        Index thr = 1 + N * r / (n - 1);
        for (Index M = 2; M <= std::min(thr, N); ++M) {
          ++rep.instances;
          if (detail::step_kernel_num(cache, r, M - 2, N, n) >
              detail::step_kernel_num(cache, r, M - 1, N, n))
            rep.fail(detail::itag(N, n, {r, M}), "ascending below threshold",
                     "violated");
        }
        for (Index M = std::max<Index>(thr, 1); M < N; ++M) {
          ++rep.instances;
          if (detail::step_kernel_num(cache, r, M, N, n) >
              detail::step_kernel_num(cache, r, M - 1, N, n))
            rep.fail(detail::itag(N, n, {r, M}), "descending above threshold",
                     "violated");
        }
      }
    }
  }
  return rep;
}

// For a fixed window the coverage curve in M has its minimum at a frame
// end; verified by the ascend-then-descend shape of each curve, plus an
// exhaustive frame check on small populations.
inline VerificationReport check_window_min_at_ends(Index N_max) {
  VerificationReport rep = make_report("window_min_at_ends");
  BinomCache cache;
  for (Index N = 2; N <= N_max; ++N) {
    for (Index n = 1; n <= N; ++n) {
      detail::SumTable t(N, n, cache);
      for (Index k = 0; k <= n; ++k) {
        for (Index l = k; l <= n; ++l) {
          ++rep.instances;
          std::vector<Int> curve;
          curve.reserve(static_cast<std::size_t>(N + 1));
          for (Index M = 0; M <= N; ++M) curve.push_back(t.S(k, l, M));
          std::size_t i = 0;
          while (i + 1 < curve.size() && curve[i + 1] >= curve[i]) ++i;
          while (i + 1 < curve.size() && curve[i + 1] <= curve[i]) ++i;
          if (i + 1 != curve.size())
            rep.fail(detail::itag(N, n, {k, l}), "single-peak curve",
                     "interior dip");
          if (N <= 12) {
            for (Index L = 0; L <= N; ++L) {
              for (Index U = L; U <= N; ++U) {
                Int ends = std::min(curve[static_cast<std::size_t>(L)],
                                    curve[static_cast<std::size_t>(U)]);
                for (Index M = L; M <= U; ++M)
                  if (curve[static_cast<std::size_t>(M)] < ends)
                    rep.fail(detail::itag(N, n, {k, l, L, U}),
                             "min at frame ends", "interior minimum");
              }
            }
          }
        }
      }
    }
  }
  return rep;
}

namespace detail {

inline std::vector<Rat> inversion_radii(Index N, Index n) {
  std::vector<Rat> out = {Rat(Int(1), Int(20)), Rat(Int(1), Int(10)),
                          Rat(Int(1), Int(8)),  Rat(Int(1), Int(4)),
                          Rat(Int(9), Int(20)), Rat(Int(499), Int(1000))};
  Index k0 = (n + 1) / 2, t0 = N / 2;
  Rat edge = Rat(Int(k0), Int(n)) - Rat(Int(t0), Int(N));
  if (edge > Rat(0) && edge < Rat(1)) out.push_back(edge);
  out.push_back(Rat(Int(1), Int(n) * Int(N)));
  return out;
}

}  // namespace detail

// Inverting the window ceiling across the floor-family grid.
inline VerificationReport check_ceil_inversion(Index N_max) {
  VerificationReport rep = make_report("ceil_grid_inverse");
  for (Index N = 2; N <= N_max; ++N) {
    for (Index n = 1; n <= N; ++n) {
      for (const Rat& eps : detail::inversion_radii(N, n)) {
        for (Index k = -n; k <= 2 * n; ++k) {
          Index m0 = propsize::detail::to_index(
              ((Rat(Int(k), Int(n)) - eps) * Rat(Int(N))).floor());
          Index m1 = propsize::detail::to_index(
              ((Rat(Int(k + 1), Int(n)) - eps) * Rat(Int(N))).floor());
          auto ceil_at = [&](Index m) {
            return propsize::detail::to_index(
                ((Rat(Int(m), Int(N)) + eps) * Rat(Int(n))).ceil());
          };
          ++rep.instances;
          if (ceil_at(m0) != k)
            rep.fail(detail::itag(N, n, {k, m0}), std::to_string(k),
                     std::to_string(ceil_at(m0)));
          for (Index m = m0 + 1; m <= m1; ++m) {
            ++rep.instances;
            if (ceil_at(m) != k + 1)
              rep.fail(detail::itag(N, n, {k, m}), std::to_string(k + 1),
                       std::to_string(ceil_at(m)));
          }
        }
      }
    }
  }
  return rep;
}

// Inverting the window floor across the ceiling-family grid.
inline VerificationReport check_floor_inversion(Index N_max) {
  VerificationReport rep = make_report("floor_grid_inverse");
  for (Index N = 2; N <= N_max; ++N) {
    for (Index n = 1; n <= N; ++n) {
      for (const Rat& eps : detail::inversion_radii(N, n)) {
        for (Index k = -n; k <= 2 * n; ++k) {
          Index c0 = propsize::detail::to_index(
              ((Rat(Int(k), Int(n)) + eps) * Rat(Int(N))).ceil());
          Index c1 = propsize::detail::to_index(
              ((Rat(Int(k + 1), Int(n)) + eps) * Rat(Int(N))).ceil());
          auto floor_at = [&](Index m) {
            return propsize::detail::to_index(
                ((Rat(Int(m), Int(N)) - eps) * Rat(Int(n))).floor());
          };
          for (Index m = c0; m < c1; ++m) {
            ++rep.instances;
            if (floor_at(m) != k)
              rep.fail(detail::itag(N, n, {k, m}), std::to_string(k),
                       std::to_string(floor_at(m)));
          }
          ++rep.instances;
          if (floor_at(c1) != k + 1)
            rep.fail(detail::itag(N, n, {k, c1}), std::to_string(k + 1),
                     std::to_string(floor_at(c1)));
        }
      }
    }
  }
  return rep;
}

// Growing the window upper edge while stepping M up never lowers coverage.
inline VerificationReport check_expand_upper(Index N_max) {
  VerificationReport rep = make_report("expand_upper_compare");
  BinomCache cache;
  for (Index N = 2; N <= N_max; ++N) {
    for (Index n = 1; n <= N; ++n) {
      detail::SumTable t(N, n, cache);
      for (Index rho = 0; rho < N; ++rho) {
        for (Index g = -1; g <= n; ++g) {
          for (Index h = g; h <= n; ++h) {
            ++rep.instances;
            if (t.S(g, h + 1, rho + 1) < t.S(g, h, rho))
              rep.fail(detail::itag(N, n, {rho, g, h}), ">= 0", "negative");
          }
        }
      }
    }
  }
  return rep;
}

// Lowering the window lower edge while stepping M down never lowers it.
inline VerificationReport check_shift_lower(Index N_max) {
  VerificationReport rep = make_report("shift_lower_compare");
  BinomCache cache;
  for (Index N = 2; N <= N_max; ++N) {
    for (Index n = 1; n <= N; ++n) {
      detail::SumTable t(N, n, cache);
      for (Index tau = 1; tau <= N; ++tau) {
        for (Index g = 0; g <= n; ++g) {
          for (Index h = g; h <= n; ++h) {
            ++rep.instances;
            if (t.S(g - 1, h, tau - 1) < t.S(g, h, tau))
              rep.fail(detail::itag(N, n, {tau, g, h}), ">= 0", "negative");
          }
        }
      }
    }
  }
  return rep;
}

// The whole identity battery at a given exhaustive-grid ceiling.
inline std::vector<VerificationReport> identity_suite(Index N_max) {
  return {check_prefix_step(N_max),       check_window_step(N_max),
          check_floor_thresholds(N_max),  check_kernel_unimodality(N_max),
          check_kernel_shift(N_max),      check_window_min_at_ends(N_max),
          check_ceil_inversion(N_max),    check_floor_inversion(N_max),
          check_expand_upper(N_max),      check_shift_lower(N_max)};
}

// --- candidate-set equivalence sweeps -------------------------------------

struct GridSpec {
  Index N_lo = 2;
  Index N_hi = 60;
  Index n_stride = 1;
  int random_frames = 5;
  std::uint64_t seed = 0;

  static std::vector<Rat> default_radii() {
    return {Rat(Int(1), Int(20)), Rat(Int(1), Int(10)), Rat(Int(1), Int(4)),
            Rat(Int(9), Int(20))};
  }
  std::vector<Rat> radii = default_radii();
};

namespace detail {

inline std::vector<PopulationFrame> frames_for(const GridSpec& g, Index N,
                                               bool positive_lower) {
  std::vector<PopulationFrame> out;
  Index base = positive_lower ? 1 : 0;
  out.emplace_back(N, base, N);
  if ((N + 1) / 2 >= base) out.emplace_back(N, base, (N + 1) / 2);
  Rng rng(g.seed, static_cast<std::uint64_t>(N) * 2 + (positive_lower ? 1 : 0));
  for (int i = 0; i < g.random_frames; ++i) {
    Index L = base + static_cast<Index>(rng.below(
                         static_cast<std::uint64_t>(N - base + 1)));
    Index U = L + static_cast<Index>(
                      rng.below(static_cast<std::uint64_t>(N - L + 1)));
    out.emplace_back(N, L, U);
  }
  return out;
}

inline void compare_instance(VerificationReport& rep, const PopulationFrame& f,
                             Index n, const ErrorCriterion& crit,
                             int threads) {
  ++rep.instances;
  FrameMinResult engine = min_coverage_over_frame(f, n, crit, threads);
  FrameMinResult scan = full_scan_min(f, n, crit);
  rep.engine_evaluations += engine.evaluations;
  rep.oracle_evaluations += scan.evaluations;
  if (engine.value != scan.value) {
    rep.fail(instance_tag(f, n, crit), scan.value.to_fraction(),
             engine.value.to_fraction());
    return;
  }
  if (coverage(n, engine.worst_M, f.N, crit) != engine.value)
    rep.fail(instance_tag(f, n, crit), "reported worst M attains the minimum",
             "it does not");
}

}  // namespace detail

inline VerificationReport sweep_absolute(const GridSpec& g, int threads = 1) {
  VerificationReport rep = make_report("absolute_candidate_equivalence");
  for (Index N = g.N_lo; N <= g.N_hi; ++N) {
    auto frames = detail::frames_for(g, N, false);
    for (const Rat& eps : g.radii) {
      auto crit = ErrorCriterion::absolute(eps);
      for (const auto& f : frames)
        for (Index n = 2; n <= N; n += g.n_stride)
          detail::compare_instance(rep, f, n, crit, threads);
    }
  }
  return rep;
}

inline VerificationReport sweep_relative(const GridSpec& g, int threads = 1) {
  VerificationReport rep = make_report("relative_candidate_equivalence");
  for (Index N = g.N_lo; N <= g.N_hi; ++N) {
    auto frames = detail::frames_for(g, N, true);
    for (const Rat& eps : g.radii) {
      auto crit = ErrorCriterion::relative(eps);
      for (const auto& f : frames)
        for (Index n = 2; n <= N; n += g.n_stride)
          detail::compare_instance(rep, f, n, crit, threads);
    }
  }
  return rep;
}

namespace detail {

// Break values steering the mixed construction into its interior case and
// every degenerate routing, expressed per frame.
inline std::vector<Rat> mixed_targets(const PopulationFrame& f) {
  std::vector<Rat> out;
  auto push = [&](const Rat& x) {
    if (x <= Rat(0)) return;
    for (const Rat& y : out)
      if (y == x) return;
    out.push_back(x);
  };
  push(Rat(Int(2 * (f.L + f.U) + 1), Int(4)));
  if (f.U - f.L >= 2) push(Rat(Int(f.L + 1)));
  push(Rat(Int(f.L)));
  push(Rat(Int(f.U)));
  push(Rat(Int(2 * f.L - 1), Int(2)));
  push(Rat(Int(2 * f.U + 1), Int(2)));
  return out;
}

}  // namespace detail

inline VerificationReport sweep_mixed(const GridSpec& g, int threads = 1) {
  VerificationReport rep = make_report("mixed_candidate_equivalence");
  Rat er(Int(9), Int(20));
  for (Index N = g.N_lo; N <= g.N_hi; ++N) {
    auto frames = detail::frames_for(g, N, false);
    for (const auto& f : frames) {
      for (const Rat& x : detail::mixed_targets(f)) {
        Rat ea = x * er / Rat(Int(N));
        if (ea <= Rat(0) || ea >= Rat(1)) continue;
        auto crit = ErrorCriterion::mixed(ea, er);
        for (Index n = 2; n <= N; n += g.n_stride)
          detail::compare_instance(rep, f, n, crit, threads);
      }
    }
  }
  return rep;
}

// Candidate-set cardinality versus its proven bound, all three criteria.
inline VerificationReport sweep_bounds(const GridSpec& g) {
  VerificationReport rep = make_report("candidate_size_bounds");
  Rat er(Int(9), Int(20));
  for (Index N = g.N_lo; N <= g.N_hi; ++N) {
    auto frames = detail::frames_for(g, N, false);
    for (const auto& f : frames) {
      for (Index n = 2; n <= N; n += g.n_stride) {
        for (const Rat& eps : g.radii) {
          ++rep.instances;
          CandidateSet sa = candidate_set_absolute(f, n, eps);
          if (!(Rat(Int(Index(sa.size()))) < sa.bound))
            rep.fail(detail::instance_tag(f, n, ErrorCriterion::absolute(eps)),
                     "size < bound", std::to_string(sa.size()));
          ++rep.instances;
          CandidateSet sr = candidate_set_relative(f, n, eps);
          if (!(Rat(Int(Index(sr.size()))) < sr.bound))
            rep.fail(detail::instance_tag(f, n, ErrorCriterion::relative(eps)),
                     "size < bound", std::to_string(sr.size()));
        }
        for (const Rat& x : detail::mixed_targets(f)) {
          Rat ea = x * er / Rat(Int(N));
          if (ea <= Rat(0) || ea >= Rat(1)) continue;
          auto crit = ErrorCriterion::mixed(ea, er);
          try {
            CandidateSet sm = candidate_set_mixed(f, n, crit);
            ++rep.instances;
            if (!(Rat(Int(Index(sm.size()))) < sm.bound))
              rep.fail(detail::instance_tag(f, n, crit), "size < bound",
                       std::to_string(sm.size()));
          } catch (const mixed_precondition_error&) {
          }
        }
      }
    }
  }
  return rep;
}

// Evaluation economy of the folded symmetric frame: at most n + 2 window
// sums regardless of N.
inline VerificationReport sweep_economy(Index N_max, Index n_max,
                                        Index N_stride = 1) {
  VerificationReport rep = make_report("half_frame_evaluation_budget");
  auto crit = ErrorCriterion::absolute(Rat(Int(1), Int(10)));
  for (Index N = 2; N <= N_max; N += N_stride) {
    PopulationFrame f(N, 0, (N + 1) / 2);
    for (Index n = 2; n <= std::min(N, n_max); ++n) {
      ++rep.instances;
      std::uint64_t planned = planned_evaluations(f, n, crit);
      rep.engine_evaluations += planned;
      if (planned > static_cast<std::uint64_t>(n) + 2)
        rep.fail(detail::instance_tag(f, n, crit), "evaluations <= n + 2",
                 std::to_string(planned));
    }
  }
  return rep;
}

// --- simulation -----------------------------------------------------------

struct McResult {
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  Rat estimate;
  Rat exact;
  bool within_four_se = false;
};

// Empirical hit rate of the tolerance event, judged against the exact
// coverage with the folded inequality (est - p)^2 <= 16 est (1 - est) / T,
// so no square roots are ever taken.
inline McResult monte_carlo_coverage(Index n, Index M, Index N,
                                     const ErrorCriterion& crit,
                                     std::uint64_t trials, std::uint64_t seed,
                                     std::uint64_t stream = 0) {
  Rng rng(seed, Rng::mix(0x6D63636F76ull) ^ stream);
  SubsetSampler sampler(N, M);
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Index k = sampler.draw(rng, n);
    if (criterion_holds(k, n, M, N, crit)) ++hits;
  }
  McResult out;
  out.hits = hits;
  out.trials = trials;
  out.estimate = Rat(Int(static_cast<long>(hits)),
                     Int(static_cast<long>(trials)));
  out.exact = coverage(n, M, N, crit);
  Rat diff = out.estimate - out.exact;
  Rat lhs = diff * diff;
  Rat rhs = Rat(16) * out.estimate * (Rat(1) - out.estimate) /
            Rat(Int(static_cast<long>(trials)));
  out.within_four_se = lhs <= rhs;
  return out;
}

// Seeded batch of simulation instances across all three criteria.
inline VerificationReport sweep_monte_carlo(int count, std::uint64_t trials,
                                            std::uint64_t seed,
                                            Index N_max = 60,
                                            int allowed_misses = 1) {
  VerificationReport rep = make_report("monte_carlo_consistency");
  Rng pick(seed, 0x696E7374ull);
  std::vector<Rat> radii = GridSpec::default_radii();
  int misses = 0;
  for (int i = 0; i < count; ++i) {
    Index N = 10 + static_cast<Index>(pick.below(
                       static_cast<std::uint64_t>(N_max - 9)));
    Index M = static_cast<Index>(pick.below(static_cast<std::uint64_t>(N + 1)));
    Index n = 2 + static_cast<Index>(pick.below(
                      static_cast<std::uint64_t>(N - 1)));
    const Rat& e1 = radii[pick.below(radii.size())];
    const Rat& e2 = radii[pick.below(radii.size())];
    ErrorCriterion crit = [&] {
      switch (i % 3) {
        case 0: return ErrorCriterion::absolute(e1);
        case 1: return ErrorCriterion::relative(e1);
        default: return ErrorCriterion::mixed(std::min(e1, e2), std::max(e1, e2));
      }
    }();
    ++rep.instances;
    McResult r = monte_carlo_coverage(n, M, N, crit, trials, seed,
                                      static_cast<std::uint64_t>(i));
    if (!r.within_four_se) {
      ++misses;
      if (misses > allowed_misses)
        rep.fail(detail::instance_tag(PopulationFrame(N, M, M), n, crit),
                 "estimate within four standard errors",
                 r.estimate.to_fraction() + " vs " + r.exact.to_fraction());
    }
  }
  return rep;
}

// --- sizing cross-checks --------------------------------------------------

// Seeded sizing requests: the engine answer must satisfy the criterion
// (full scan), its predecessor must not, and both search modes must agree.
inline VerificationReport sweep_sizing(int count, Index N_max,
                                       std::uint64_t seed, int threads = 1) {
  VerificationReport rep = make_report("sizing_soundness_minimality");
  Rng pick(seed, 0x73697A65ull);
  std::vector<Rat> radii = {Rat(Int(1), Int(8)), Rat(Int(1), Int(4)),
                            Rat(Int(2), Int(5)), Rat(Int(9), Int(20))};
  std::vector<Rat> deltas = {Rat(Int(1), Int(10)), Rat(Int(1), Int(20)),
                             Rat(Int(1), Int(100))};
  for (int i = 0; i < count; ++i) {
    Index N = 2 + static_cast<Index>(pick.below(
                      static_cast<std::uint64_t>(N_max - 1)));
    int kind = i % 3;
    Index base = kind == 1 ? 1 : 0;
    if (base > N) continue;
    Index L = base + static_cast<Index>(pick.below(
                         static_cast<std::uint64_t>(N - base + 1)));
    Index U = L + static_cast<Index>(
                      pick.below(static_cast<std::uint64_t>(N - L + 1)));
    const Rat& e1 = radii[pick.below(radii.size())];
    const Rat& e2 = radii[pick.below(radii.size())];
    const Rat& delta = deltas[pick.below(deltas.size())];
    ErrorCriterion crit = [&] {
      switch (kind) {
        case 0: return ErrorCriterion::absolute(e1);
        case 1: return ErrorCriterion::relative(e1);
        default: return ErrorCriterion::mixed(std::min(e1, e2), std::max(e1, e2));
      }
    }();
    PopulationFrame f(N, L, U);
    ++rep.instances;
    SizingRequest asc(f, crit, delta, SearchMode::ascending);
    SizingRequest acc(f, crit, delta, SearchMode::accelerated);
    std::string tag = detail::instance_tag(f, 0, crit);
    try {
      SampleSizeResult a = minimum_sample_size(asc, threads);
      rep.engine_evaluations += a.coverage_evaluations;
      FrameMinResult at = full_scan_min(f, a.n_min, crit);
      rep.oracle_evaluations += at.evaluations;
      if (!(at.value > Rat(1) - delta))
        rep.fail(tag, "answer satisfies the criterion", "full scan refutes");
      if (a.n_min > 2) {
        FrameMinResult before = full_scan_min(f, a.n_min - 1, crit);
        rep.oracle_evaluations += before.evaluations;
        if (before.value > Rat(1) - delta)
          rep.fail(tag, "predecessor fails the criterion",
                   "full scan satisfies at n - 1");
      }
      SampleSizeResult b = minimum_sample_size(acc, threads);
      rep.engine_evaluations += b.coverage_evaluations;
      if (a.n_min != b.n_min || a.worst_M != b.worst_M ||
          a.min_coverage != b.min_coverage)
        rep.fail(tag, "accelerated equals ascending", "modes disagree");
    } catch (const infeasible_error&) {
      if (!(crit.kind() == CriterionKind::relative && L == 0))
        rep.fail(tag, "feasible request", "infeasible_error");
    }
  }
  return rep;
}

// --- tiers ----------------------------------------------------------------

enum class Tier { fast, slow };

inline std::vector<VerificationReport> run_verification(Tier tier,
                                                        std::uint64_t seed,
                                                        int threads = 1) {
  std::vector<VerificationReport> out;
  GridSpec grid;
  grid.seed = seed;
  if (tier == Tier::fast) {
    grid.N_hi = 30;
    for (auto& r : identity_suite(20)) out.push_back(std::move(r));
    out.push_back(sweep_absolute(grid, threads));
    out.push_back(sweep_relative(grid, threads));
    out.push_back(sweep_mixed(grid, threads));
    out.push_back(sweep_bounds(grid));
    out.push_back(sweep_economy(400, 60, 7));
    out.push_back(sweep_monte_carlo(10, 20000, seed));
    out.push_back(sweep_sizing(40, 50, seed, threads));
  } else {
    grid.N_hi = 60;
    for (auto& r : identity_suite(40)) out.push_back(std::move(r));
    out.push_back(sweep_absolute(grid, threads));
    out.push_back(sweep_relative(grid, threads));
    out.push_back(sweep_mixed(grid, threads));
    out.push_back(sweep_bounds(grid));
    out.push_back(sweep_economy(10000, 200, 1));
    out.push_back(sweep_monte_carlo(50, 200000, seed));
    out.push_back(sweep_sizing(200, 80, seed, threads));
  }
  return out;
}

}  // namespace oracle
}  // namespace propsize

#endif
