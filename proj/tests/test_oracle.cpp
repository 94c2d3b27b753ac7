#include <propsize/oracle.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace propsize;
using namespace propsize::oracle;

TEST_CASE("report bookkeeping caps stored failures") {
  VerificationReport rep = make_report("demo");
  for (int i = 0; i < 40; ++i) rep.fail("inst", "a", "b");
  REQUIRE(rep.failure_count == 40);
  REQUIRE(rep.failures.size() == 16);
  REQUIRE_FALSE(rep.pass());
  REQUIRE(make_report("empty").pass());
}

TEST_CASE("full scan agrees with direct coverage minimum") {
  PopulationFrame f(23, 3, 19);
  auto crit = ErrorCriterion::absolute(Rat(Int(1), Int(8)));
  for (Index n = 2; n <= 23; ++n) {
    FrameMinResult r = full_scan_min(f, n, crit);
    Rat best = coverage(n, f.L, f.N, crit);
    Index at = f.L;
    for (Index M = f.L; M <= f.U; ++M) {
      Rat v = coverage(n, M, f.N, crit);
      if (v < best) {
        best = v;
        at = M;
      }
    }
    REQUIRE(r.value == best);
    REQUIRE(r.worst_M == at);
    REQUIRE(r.candidates == static_cast<std::uint64_t>(f.width() + 1));
  }
}

TEST_CASE("identity suite is clean on a small exhaustive grid") {
  for (const auto& rep : identity_suite(14)) {
    INFO(rep.name);
    for (const auto& f : rep.failures)
      UNSCOPED_INFO(f.instance << " expected " << f.expected << " got "
                               << f.actual);
    REQUIRE(rep.instances > 0);
    REQUIRE(rep.pass());
  }
}

TEST_CASE("equivalence sweeps are clean on a reduced grid") {
  GridSpec g;
  g.N_hi = 16;
  g.random_frames = 3;
  g.seed = 11;
  for (const auto& rep :
       {sweep_absolute(g), sweep_relative(g), sweep_mixed(g)}) {
    INFO(rep.name);
    for (const auto& f : rep.failures)
      UNSCOPED_INFO(f.instance << " expected " << f.expected << " got "
                               << f.actual);
    REQUIRE(rep.instances > 0);
    REQUIRE(rep.pass());
    REQUIRE(rep.engine_evaluations < rep.oracle_evaluations);
  }
}

TEST_CASE("bound and economy sweeps are clean") {
  GridSpec g;
  g.N_hi = 16;
  g.seed = 5;
  auto b = sweep_bounds(g);
  INFO(b.name);
  REQUIRE(b.instances > 0);
  REQUIRE(b.pass());

  auto e = sweep_economy(120, 40, 3);
  INFO(e.name);
  REQUIRE(e.instances > 0);
  REQUIRE(e.pass());
}

TEST_CASE("simulation tracks exact coverage") {
  auto crit = ErrorCriterion::absolute(Rat(Int(1), Int(8)));
  McResult r = monte_carlo_coverage(12, 17, 40, crit, 40000, 2026);
  REQUIRE(r.trials == 40000);
  REQUIRE(r.exact == coverage(12, 17, 40, crit));
  REQUIRE(r.within_four_se);

  // degenerate certainty: estimator must hit it exactly
  auto census = monte_carlo_coverage(10, 10, 10, crit, 500, 1);
  REQUIRE(census.exact == Rat(1));
  REQUIRE(census.estimate == Rat(1));
  REQUIRE(census.within_four_se);

  auto batch = sweep_monte_carlo(6, 20000, 17, 40);
  INFO(batch.name);
  REQUIRE(batch.instances == 6);
  REQUIRE(batch.pass());
}

TEST_CASE("sizing sweep certifies soundness and minimality") {
  auto rep = sweep_sizing(25, 40, 3);
  INFO(rep.name);
  for (const auto& f : rep.failures)
    UNSCOPED_INFO(f.instance << " expected " << f.expected << " got "
                             << f.actual);
  REQUIRE(rep.instances > 0);
  REQUIRE(rep.pass());
}

TEST_CASE("seeded sweeps are deterministic") {
  GridSpec g;
  g.N_hi = 12;
  g.seed = 9;
  auto a = sweep_absolute(g);
  auto b = sweep_absolute(g);
  REQUIRE(a.instances == b.instances);
  REQUIRE(a.engine_evaluations == b.engine_evaluations);
  REQUIRE(a.oracle_evaluations == b.oracle_evaluations);

  auto m1 = sweep_monte_carlo(4, 5000, 21);
  auto m2 = sweep_monte_carlo(4, 5000, 21);
  REQUIRE(m1.instances == m2.instances);
  REQUIRE(m1.failure_count == m2.failure_count);
}
