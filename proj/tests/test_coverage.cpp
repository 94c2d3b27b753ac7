#include <catch2/catch_amalgamated.hpp>
#include <propsize/coverage.hpp>

#include <vector>

using namespace propsize;

TEST_CASE("criterion radii must lie strictly inside (0,1)", "[coverage]") {
  CHECK_THROWS_AS(ErrorCriterion::absolute(Rat(0)), std::invalid_argument);
  CHECK_THROWS_AS(ErrorCriterion::absolute(Rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(ErrorCriterion::absolute(Rat(Int(-1), Int(2))),
                  std::invalid_argument);
  CHECK_THROWS_AS(ErrorCriterion::relative(Rat(Int(5), Int(4))),
                  std::invalid_argument);
  CHECK_THROWS_AS(ErrorCriterion::mixed(Rat(Int(1), Int(2)), Rat(1)),
                  std::invalid_argument);
  CHECK_NOTHROW(ErrorCriterion::mixed(Rat(Int(1), Int(100)),
                                      Rat(Int(99), Int(100))));
}

TEST_CASE("population frame validation", "[coverage]") {
  CHECK_NOTHROW(PopulationFrame(10, 0, 10));
  CHECK_NOTHROW(PopulationFrame(10, 3, 3));
  CHECK_THROWS_AS(PopulationFrame(10, -1, 5), std::invalid_argument);
  CHECK_THROWS_AS(PopulationFrame(10, 6, 5), std::invalid_argument);
  CHECK_THROWS_AS(PopulationFrame(10, 0, 11), std::invalid_argument);
  CHECK_THROWS_AS(PopulationFrame(0, 0, 0), std::invalid_argument);
}

TEST_CASE("absolute window hand values", "[coverage]") {
  auto crit = ErrorCriterion::absolute(Rat(Int(1), Int(20)));
  AcceptanceWindow w = acceptance_window(10, 50, 100, crit);
  CHECK(w == AcceptanceWindow{5, 5});

  auto tight = ErrorCriterion::absolute(Rat(Int(1), Int(10)));
  w = acceptance_window(10, 50, 100, tight);
  CHECK(w == AcceptanceWindow{5, 5});

  w = acceptance_window(10, 37, 100, tight);
  CHECK(w == AcceptanceWindow{3, 4});
}

TEST_CASE("relative window hand values", "[coverage]") {
  auto crit = ErrorCriterion::relative(Rat(Int(1), Int(2)));
  AcceptanceWindow w = acceptance_window(5, 0, 10, crit);
  CHECK(w == AcceptanceWindow{1, -1});
  CHECK(w.empty());
  CHECK(coverage(5, 0, 10, crit) == Rat(0));

  w = acceptance_window(5, 4, 10, crit);
  CHECK(w == AcceptanceWindow{2, 2});
}

TEST_CASE("mixed window picks a side of the breakpoint", "[coverage]") {
  auto crit =
      ErrorCriterion::mixed(Rat(Int(1), Int(10)), Rat(Int(1), Int(4)));
  CHECK(mixed_break_value(20, crit) == Rat(8));
  CHECK(mixed_breakpoint(20, crit) == 8);
  for (Index M = 0; M <= 20; ++M) {
    auto expect = M <= 8
        ? acceptance_window(6, M, 20, ErrorCriterion::absolute(crit.abs_radius()))
        : acceptance_window(6, M, 20, ErrorCriterion::relative(crit.rel_radius()));
    CHECK(acceptance_window(6, M, 20, crit) == expect);
  }
  CHECK_THROWS_AS(mixed_break_value(20, ErrorCriterion::absolute(Rat(Int(1), Int(2)))),
                  std::invalid_argument);
}

TEST_CASE("coverage hand values", "[coverage]") {
  CHECK(coverage(2, 2, 4, ErrorCriterion::absolute(Rat(Int(1), Int(4)))) ==
        Rat(Int(2), Int(3)));
  CHECK(coverage(10, 0, 100, ErrorCriterion::absolute(Rat(Int(1), Int(20)))) ==
        Rat(1));
  CHECK(coverage(10, 100, 100, ErrorCriterion::absolute(Rat(Int(1), Int(20)))) ==
        Rat(1));
}

static Rat coverage_by_event(Index n, Index M, Index N,
                             const ErrorCriterion& crit) {
  Rat total(0);
  for (Index k = 0; k <= n; ++k)
    if (criterion_holds(k, n, M, N, crit)) total += hyper_pmf(N, M, n, k);
  return total;
}

TEST_CASE("window coverage equals direct event probability", "[coverage]") {
  std::vector<Rat> radii = {Rat(Int(1), Int(20)), Rat(Int(1), Int(8)),
                            Rat(Int(1), Int(4)), Rat(Int(9), Int(20))};
  for (Index N : {6, 11, 17, 24, 30}) {
    for (Index n = 1; n <= N; n += (N > 20 ? 3 : 1)) {
      for (Index M = 0; M <= N; ++M) {
        std::vector<Rat> eps_list = radii;
        Index j = n * M / N;
        Rat boundary = Rat(Int(M), Int(N)) - Rat(Int(j), Int(n));
        if (boundary > Rat(0) && boundary < Rat(1)) eps_list.push_back(boundary);
        for (const Rat& e : eps_list) {
          CHECK(coverage(n, M, N, ErrorCriterion::absolute(e)) ==
                coverage_by_event(n, M, N, ErrorCriterion::absolute(e)));
          CHECK(coverage(n, M, N, ErrorCriterion::relative(e)) ==
                coverage_by_event(n, M, N, ErrorCriterion::relative(e)));
        }
      }
    }
  }
}

TEST_CASE("mixed window equals event union on a grid", "[coverage]") {
  std::vector<std::pair<Rat, Rat>> pairs = {
      {Rat(Int(1), Int(10)), Rat(Int(1), Int(4))},
      {Rat(Int(1), Int(20)), Rat(Int(1), Int(5))},
      {Rat(Int(1), Int(8)), Rat(Int(9), Int(20))},
      {Rat(Int(2), Int(5)), Rat(Int(1), Int(10))}};
  for (auto& [ea, er] : pairs) {
    auto crit = ErrorCriterion::mixed(ea, er);
    for (Index N : {9, 16, 25}) {
      for (Index n : {Index(2), Index(5), Index(N)}) {
        CHECK(mixed_piecewise_check(n, N, crit, 0, N));
        for (Index M = 0; M <= N; ++M)
          CHECK(coverage(n, M, N, crit) == coverage_by_event(n, M, N, crit));
      }
    }
  }
}

TEST_CASE("mixed window is the wider of the two arms", "[coverage]") {
  auto crit = ErrorCriterion::mixed(Rat(Int(1), Int(10)), Rat(Int(1), Int(4)));
  for (Index N : {15, 20}) {
    for (Index n : {Index(4), Index(9)}) {
      for (Index M = 0; M <= N; ++M) {
        AcceptanceWindow m = acceptance_window(n, M, N, crit);
        AcceptanceWindow a = acceptance_window(
            n, M, N, ErrorCriterion::absolute(crit.abs_radius()));
        AcceptanceWindow r = acceptance_window(
            n, M, N, ErrorCriterion::relative(crit.rel_radius()));
        CHECK(m.g == std::min(a.g, r.g));
        CHECK(m.h == std::max(a.h, r.h));
      }
    }
  }
}

TEST_CASE("absolute coverage is symmetric under M -> N - M", "[coverage]") {
  for (const Rat& e : {Rat(Int(1), Int(20)), Rat(Int(1), Int(4)),
                       Rat(Int(9), Int(20))}) {
    auto crit = ErrorCriterion::absolute(e);
    for (Index N : {12, 21, 33, 40}) {
      for (Index n : {Index(2), Index(7), Index(N / 2), Index(N)}) {
        for (Index M = 0; M <= N; ++M)
          CHECK(coverage(n, M, N, crit) == coverage(n, N - M, N, crit));
      }
    }
  }
}

TEST_CASE("coverage grows with the radius", "[coverage]") {
  for (Index N : {13, 22}) {
    for (Index n : {Index(3), Index(8)}) {
      for (Index M = 0; M <= N; ++M) {
        Rat prev(-1);
        for (int d = 1; d <= 9; d += 2) {
          Rat cur = coverage(n, M, N, ErrorCriterion::absolute(Rat(Int(d), Int(10))));
          CHECK(cur >= prev);
          prev = cur;
        }
      }
    }
  }
}

TEST_CASE("wide-denominator radii take the exact big-number lane",
          "[coverage]") {
  Int big = (Int(1) << 40) + 1;
  std::vector<Rat> radii = {Rat(big, Int(1) << 42), Rat(big, (Int(3) << 40))};
  for (const Rat& e : radii) {
    REQUIRE(e.den() > (Int(1) << 31));
    for (Index N : {9, 14}) {
      for (Index n = 1; n <= N; ++n) {
        for (Index M = 0; M <= N; ++M) {
          for (auto crit : {ErrorCriterion::absolute(e),
                            ErrorCriterion::relative(e)}) {
            AcceptanceWindow w = acceptance_window(n, M, N, crit);
            for (Index k = 0; k <= n; ++k)
              CHECK(w.contains(k) == criterion_holds(k, n, M, N, crit));
          }
        }
      }
    }
  }
}

TEST_CASE("evaluator route matches and skips empty windows", "[coverage]") {
  auto rel = ErrorCriterion::relative(Rat(Int(1), Int(2)));
  WindowEvaluator ev(10, 5);
  CHECK(coverage(ev, 0, rel) == Rat(0));
  CHECK(ev.evaluations() == 0);
  CHECK(coverage(ev, 4, rel) == coverage(5, 4, 10, rel));
  CHECK(ev.evaluations() == 1);
}
