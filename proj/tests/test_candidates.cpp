#include <catch2/catch_amalgamated.hpp>
#include <propsize/candidates.hpp>

#include <vector>

using namespace propsize;

namespace {

struct ScanMin {
  Index worst_M;
  Rat value;
};

ScanMin scan_min(const PopulationFrame& f, Index n, const ErrorCriterion& c) {
  ScanMin best{f.L, coverage(n, f.L, f.N, c)};
  for (Index M = f.L + 1; M <= f.U; ++M) {
    Rat v = coverage(n, M, f.N, c);
    if (v < best.value) best = {M, v};
  }
  return best;
}

Rat set_min(const CandidateSet& s, const PopulationFrame& f, Index n,
            const ErrorCriterion& c) {
  Rat best(2);
  for (Index M : s.values()) best = std::min(best, coverage(n, M, f.N, c));
  return best;
}

}  // namespace

TEST_CASE("absolute candidate set hand example", "[candidates]") {
  PopulationFrame f(10, 0, 10);
  CandidateSet s = candidate_set_absolute(f, 4, Rat(Int(1), Int(10)));
  CHECK(s.values() == std::vector<Index>{0, 1, 4, 6, 9, 10});
  CHECK(s.bound == Rat(Int(56), Int(5)));
  CHECK(Rat(Int(Index(s.size()))) < s.bound);
  CHECK(s.members.front().tag == Provenance::endpoint);
  CHECK(s.members.back().tag == Provenance::endpoint);
  CHECK(s.contains(6));
  CHECK_FALSE(s.contains(5));
}

TEST_CASE("relative candidate set hand example", "[candidates]") {
  PopulationFrame f(10, 1, 9);
  CandidateSet s = candidate_set_relative(f, 5, Rat(Int(1), Int(2)));
  CHECK(s.values() == std::vector<Index>{1, 2, 4, 5, 6, 8, 9});
}

TEST_CASE("degenerate single-point frame", "[candidates]") {
  PopulationFrame f(12, 7, 7);
  CandidateSet s = candidate_set_absolute(f, 5, Rat(Int(1), Int(4)));
  CHECK(s.values() == std::vector<Index>{7});
  CHECK(Rat(1) < s.bound);
}

TEST_CASE("frame reflection", "[candidates]") {
  PopulationFrame f(100, 70, 90);
  PopulationFrame r = reflect_frame(f);
  CHECK(r == PopulationFrame(100, 10, 30));
  CHECK(reflect_frame(r) == f);
}

TEST_CASE("candidate minima match full scans", "[candidates]") {
  std::vector<Rat> radii = {Rat(Int(1), Int(20)), Rat(Int(1), Int(4)),
                            Rat(Int(9), Int(20))};
  for (Index N = 2; N <= 28; ++N) {
    std::vector<PopulationFrame> frames;
    frames.emplace_back(N, 0, N);
    frames.emplace_back(N, 0, (N + 1) / 2);
    if (N >= 3) frames.emplace_back(N, 1, N - 1);
    for (Index n = 2; n <= N; ++n) {
      for (const Rat& eps : radii) {
        for (const PopulationFrame& f : frames) {
          auto ac = ErrorCriterion::absolute(eps);
          CandidateSet sa = candidate_set_absolute(f, n, eps);
          CHECK(set_min(sa, f, n, ac) == scan_min(f, n, ac).value);
          CHECK(Rat(Int(Index(sa.size()))) < sa.bound);
          if (f.L >= 1) {
            auto rc = ErrorCriterion::relative(eps);
            CandidateSet sr = candidate_set_relative(f, n, eps);
            CHECK(set_min(sr, f, n, rc) == scan_min(f, n, rc).value);
            CHECK(Rat(Int(Index(sr.size()))) < sr.bound);
          }
        }
      }
    }
  }
}

TEST_CASE("members are sorted, unique, inside the frame", "[candidates]") {
  for (Index N : {9, 17, 26}) {
    PopulationFrame f(N, 1, N - 1);
    for (Index n = 2; n <= N; ++n) {
      for (const Rat& eps : {Rat(Int(1), Int(8)), Rat(Int(2), Int(5))}) {
        for (const CandidateSet& s : {candidate_set_absolute(f, n, eps),
                                      candidate_set_relative(f, n, eps)}) {
          Index prev = f.L - 1;
          for (const auto& m : s.members) {
            CHECK(m.value > prev);
            CHECK(f.contains(m.value));
            prev = m.value;
          }
        }
      }
    }
  }
}

TEST_CASE("family scan finds no interior value outside the set",
          "[candidates]") {
  for (Index N : {8, 15, 23}) {
    PopulationFrame f(N, 0, N);
    for (Index n = 2; n <= N; ++n) {
      for (const Rat& eps : {Rat(Int(1), Int(10)), Rat(Int(1), Int(4)),
                             Rat(Int(9), Int(20))}) {
        CandidateSet sa = candidate_set_absolute(f, n, eps);
        CandidateSet sr = candidate_set_relative(f, n, eps);
        Rat up = Rat(1) + eps, dn = Rat(1) - eps;
        for (Index k = -2 * n; k <= 3 * n; ++k) {
          Index fa = detail::to_index(
              ((Rat(Int(k), Int(n)) - eps) * Rat(Int(N))).floor());
          if (fa > f.L && fa < f.U) CHECK(sa.contains(fa));
          Index ca = detail::to_index(
              ((Rat(Int(k), Int(n)) + eps) * Rat(Int(N))).ceil());
          if (ca > f.L && ca < f.U) CHECK(sa.contains(ca));
          Index fr = detail::to_index(
              (Rat(Int(Int(k) * Int(N))) / (up * Rat(Int(n)))).floor());
          if (fr > f.L && fr < f.U) CHECK(sr.contains(fr));
          Index cr = detail::to_index(
              (Rat(Int(Int(k) * Int(N))) / (dn * Rat(Int(n)))).ceil());
          if (cr > f.L && cr < f.U) CHECK(sr.contains(cr));
        }
      }
    }
  }
}

TEST_CASE("mixed candidate set with interior breakpoint", "[candidates]") {
  auto crit = ErrorCriterion::mixed(Rat(Int(1), Int(10)), Rat(Int(1), Int(4)));
  PopulationFrame f(20, 0, 20);
  CandidateSet s = candidate_set_mixed(f, 6, crit);
  CHECK(s.contains(0));
  CHECK(s.contains(8));
  CHECK(s.contains(9));
  CHECK(s.contains(20));
  CHECK(s.bound == Rat(Int(2 * 6) * Int(17), Int(20)) + Rat(8));
  CHECK(Rat(Int(Index(s.size()))) < s.bound);
  CHECK(set_min(s, f, 6, crit) == scan_min(f, 6, crit).value);
}

TEST_CASE("mixed minima match full scans on a grid", "[candidates]") {
  std::vector<std::pair<Rat, Rat>> pairs = {
      {Rat(Int(1), Int(10)), Rat(Int(1), Int(4))},
      {Rat(Int(1), Int(20)), Rat(Int(1), Int(5))},
      {Rat(Int(1), Int(8)), Rat(Int(9), Int(20))},
      {Rat(Int(3), Int(10)), Rat(Int(2), Int(5))}};
  int proper = 0;
  for (Index N : {10, 16, 21, 26}) {
    std::vector<PopulationFrame> frames;
    frames.emplace_back(N, 0, N);
    frames.emplace_back(N, 1, N - 1);
    frames.emplace_back(N, N / 4, N);
    for (auto& [ea, er] : pairs) {
      auto crit = ErrorCriterion::mixed(ea, er);
      for (const PopulationFrame& f : frames) {
        for (Index n = 2; n <= N; n += 2) {
          try {
            CandidateSet s = candidate_set_mixed(f, n, crit);
            ++proper;
            CHECK(set_min(s, f, n, crit) == scan_min(f, n, crit).value);
            CHECK(Rat(Int(Index(s.size()))) < s.bound);
          } catch (const mixed_precondition_error&) {
          }
        }
      }
    }
  }
  CHECK(proper >= 50);
}

TEST_CASE("mixed precondition failures name the fallback", "[candidates]") {
  auto crit = ErrorCriterion::mixed(Rat(Int(1), Int(10)), Rat(Int(1), Int(4)));
  using Res = mixed_precondition_error::Resolution;
  auto expect = [&](Index L, Index U, Res r) {
    try {
      candidate_set_mixed(PopulationFrame(20, L, U), 5, crit);
      FAIL("expected mixed_precondition_error");
    } catch (const mixed_precondition_error& e) {
      CHECK(e.resolution == r);
      CHECK(e.break_value == Rat(8));
    }
  };
  expect(9, 20, Res::use_relative);
  expect(0, 7, Res::use_absolute);
  expect(8, 20, Res::use_union);
  expect(0, 8, Res::use_union);
  CHECK_NOTHROW(candidate_set_mixed(PopulationFrame(20, 7, 9), 5, crit));
}
