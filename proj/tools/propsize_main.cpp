// Command line front end: sizing, coverage, candidate inspection and the
// self-verification battery, with json, csv and human output.
#include <propsize/oracle.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace {

using propsize::CandidatePlan;
using propsize::ErrorCriterion;
using propsize::Index;
using propsize::PopulationFrame;
using propsize::Rat;
using propsize::SearchMode;
using propsize::SizingRequest;
using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitVerification = 4;

std::string frac(const Rat& r) { return r.to_fraction(); }
std::string dec(const Rat& r) { return r.to_decimal(12); }

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// Wall-clock cost of the exact computation, reported in the json document
// and on stderr; never part of csv or human stdout so those stay byte-stable.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                  std::chrono::steady_clock::now() - start_)
                  .count();
    return static_cast<double>(us) / 1000.0;
  }
  void to_stderr() const {
    std::cerr << "elapsed " << std::fixed << std::setprecision(3) << ms()
              << "ms\n";
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct CommonOpts {
  Index population = 0;
  Index lower = 0;
  std::optional<Index> upper;
  std::string criterion;
  std::string eps;
  std::string eps_abs;
  std::string eps_rel;
  std::string format = "json";
  int threads = 1;

  PopulationFrame frame() const {
    return PopulationFrame(population, lower, upper.value_or(population));
  }

  ErrorCriterion crit() const {
    if (criterion == "mixed") {
      if (!eps.empty())
        throw std::invalid_argument("mixed takes --eps-abs and --eps-rel");
      if (eps_abs.empty() || eps_rel.empty())
        throw std::invalid_argument(
            "mixed needs both --eps-abs and --eps-rel");
      return ErrorCriterion::mixed(Rat::parse(eps_abs), Rat::parse(eps_rel));
    }
    if (!eps_abs.empty() || !eps_rel.empty())
      throw std::invalid_argument(
          "--eps-abs/--eps-rel apply to --criterion mixed only");
    if (eps.empty()) throw std::invalid_argument("--eps is required");
    return criterion == "abs" ? ErrorCriterion::absolute(Rat::parse(eps))
                              : ErrorCriterion::relative(Rat::parse(eps));
  }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("-N,--population", o.population, "population size")
      ->required();
  cmd->add_option("-L,--lower", o.lower,
                  "smallest admissible favored count (default 0)");
  cmd->add_option("-U,--upper", o.upper,
                  "largest admissible favored count (default: population)");
  cmd->add_option("-c,--criterion", o.criterion,
                  "error criterion: abs, rel or mixed")
      ->required()
      ->check(CLI::IsMember({"abs", "rel", "mixed"}));
  cmd->add_option("-e,--eps", o.eps,
                  "error radius as p/q, decimal or integer string");
  cmd->add_option("--eps-abs", o.eps_abs, "absolute arm radius (mixed)");
  cmd->add_option("--eps-rel", o.eps_rel, "relative arm radius (mixed)");
  cmd->add_option("-f,--format", o.format, "json (default), csv or human")
      ->check(CLI::IsMember({"json", "csv", "human"}));
  cmd->add_option("-t,--threads", o.threads, "worker threads, 0 = auto")
      ->check(CLI::Range(0, 64));
}

json criterion_json(const ErrorCriterion& c) {
  json j;
  j["kind"] = to_string(c.kind());
  switch (c.kind()) {
    case propsize::CriterionKind::absolute:
      j["eps"] = frac(c.abs_radius());
      break;
    case propsize::CriterionKind::relative:
      j["eps"] = frac(c.rel_radius());
      break;
    default:
      j["eps_abs"] = frac(c.abs_radius());
      j["eps_rel"] = frac(c.rel_radius());
  }
  return j;
}

std::string criterion_human(const ErrorCriterion& c) {
  switch (c.kind()) {
    case propsize::CriterionKind::absolute:
      return "abs eps=" + frac(c.abs_radius());
    case propsize::CriterionKind::relative:
      return "rel eps=" + frac(c.rel_radius());
    default:
      return "mixed eps_abs=" + frac(c.abs_radius()) +
             " eps_rel=" + frac(c.rel_radius());
  }
}

json header_json(const char* command, const CommonOpts& o,
                 const ErrorCriterion& crit) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["population"] = o.population;
  j["lower"] = o.lower;
  j["upper"] = o.upper.value_or(o.population);
  j["criterion"] = criterion_json(crit);
  return j;
}

// --- size -----------------------------------------------------------------

struct SizeOpts {
  CommonOpts common;
  std::string delta;
  std::string search = "accelerated";
  bool trace = false;
};

int run_size(const SizeOpts& o) {
  auto crit = o.common.crit();
  SizingRequest req(o.common.frame(), crit, Rat::parse(o.delta),
                    o.search == "ascending" ? SearchMode::ascending
                                            : SearchMode::accelerated);
  if (o.trace && o.common.format == "csv")
    throw std::invalid_argument("--trace is available for json and human");
  std::vector<propsize::TraceEntry> trace;
  Stopwatch watch;
  auto res = propsize::minimum_sample_size(
      req, resolve_threads(o.common.threads), o.trace ? &trace : nullptr);
  if (o.common.format == "json") {
    json j = header_json("size", o.common, crit);
    j["delta"] = frac(req.delta);
    j["search"] = o.search;
    j["n_min"] = res.n_min;
    j["worst_m"] = res.worst_M;
    j["min_coverage"] = frac(res.min_coverage);
    j["min_coverage_decimal"] = dec(res.min_coverage);
    j["coverage_evaluations"] = res.coverage_evaluations;
    j["candidates_at_n_min"] = res.candidates_at_n_min;
    if (o.trace) {
      json t = json::array();
      for (const auto& e : trace)
        t.push_back({{"n", e.n},
                     {"worst_m", e.worst_M},
                     {"min_coverage", frac(e.min_coverage)}});
      j["trace"] = std::move(t);
    }
    j["elapsed_ms"] = watch.ms();
    std::cout << j.dump(2) << "\n";
  } else if (o.common.format == "csv") {
    std::cout << "n_min,worst_m,min_coverage,min_coverage_decimal,"
                 "coverage_evaluations,candidates_at_n_min\n"
              << res.n_min << "," << res.worst_M << ","
              << frac(res.min_coverage) << "," << dec(res.min_coverage) << ","
              << res.coverage_evaluations << "," << res.candidates_at_n_min
              << "\n";
  } else {
    auto f = req.frame;
    std::cout << "population    " << f.N << "\n"
              << "frame         [" << f.L << ", " << f.U << "]\n"
              << "criterion     " << criterion_human(crit) << "\n"
              << "delta         " << frac(req.delta) << "\n"
              << "search        " << o.search << "\n"
              << "n_min         " << res.n_min << "\n"
              << "worst M       " << res.worst_M << "\n"
              << "min coverage  " << frac(res.min_coverage) << " ~ "
              << dec(res.min_coverage) << "\n"
              << "evaluations   " << res.coverage_evaluations << "\n"
              << "candidates    " << res.candidates_at_n_min << "\n";
    if (o.trace)
      for (const auto& e : trace)
        std::cout << "trace n=" << e.n << " worst_m=" << e.worst_M
                  << " coverage=" << frac(e.min_coverage) << "\n";
  }
  watch.to_stderr();
  return 0;
}

// --- coverage -------------------------------------------------------------

struct CoverageOpts {
  CommonOpts common;
  Index sample = 0;
  std::vector<Index> counts;
};

int run_coverage(const CoverageOpts& o) {
  auto crit = o.common.crit();
  std::vector<Index> ms = o.counts;
  if (ms.empty()) {
    auto f = o.common.frame();
    for (Index M = f.L; M <= f.U; ++M) ms.push_back(M);
  }
  struct Row {
    Index M;
    propsize::AcceptanceWindow w;
    Rat p;
  };
  std::vector<Row> rows;
  rows.reserve(ms.size());
  Stopwatch watch;
  propsize::WindowEvaluator ev(o.common.population, o.sample);
  for (Index M : ms) {
    auto w = propsize::acceptance_window(o.sample, M, o.common.population,
                                         crit);
    rows.push_back({M, w, propsize::coverage(ev, M, crit)});
  }
  if (o.common.format == "json") {
    json j = header_json("coverage", o.common, crit);
    j["sample"] = o.sample;
    json out = json::array();
    for (const auto& r : rows)
      out.push_back({{"m", r.M},
                     {"window", {r.w.g, r.w.h}},
                     {"coverage", frac(r.p)},
                     {"coverage_decimal", dec(r.p)}});
    j["rows"] = std::move(out);
    j["elapsed_ms"] = watch.ms();
    std::cout << j.dump(2) << "\n";
  } else if (o.common.format == "csv") {
    std::cout << "m,window_lo,window_hi,coverage,coverage_decimal\n";
    for (const auto& r : rows)
      std::cout << r.M << "," << r.w.g << "," << r.w.h << "," << frac(r.p)
                << "," << dec(r.p) << "\n";
  } else {
    std::cout << "population  " << o.common.population << "  sample  "
              << o.sample << "  criterion  " << criterion_human(crit) << "\n";
    for (const auto& r : rows) {
      std::cout << "m " << std::setw(8) << r.M << "  window [" << r.w.g
                << ", " << r.w.h << "]  coverage " << frac(r.p) << " ~ "
                << dec(r.p) << "\n";
    }
  }
  watch.to_stderr();
  return 0;
}

// --- candidates -----------------------------------------------------------

struct CandidateOpts {
  CommonOpts common;
  Index sample = 0;
};

int run_candidates(const CandidateOpts& o) {
  auto crit = o.common.crit();
  auto f = o.common.frame();
  Stopwatch watch;
  CandidatePlan plan = propsize::plan_candidates(f, o.sample, crit);
  bool fallback = plan.route == CandidatePlan::Route::fallback_absolute ||
                  plan.route == CandidatePlan::Route::fallback_relative ||
                  plan.route == CandidatePlan::Route::fallback_union;
  if (fallback)
    std::cerr << "note: regime boundary misses the frame interior; using the "
              << to_string(plan.route) << " route\n";
  if (o.common.format == "json") {
    json j = header_json("candidates", o.common, crit);
    j["sample"] = o.sample;
    j["route"] = to_string(plan.route);
    j["bound"] = frac(plan.set.bound);
    j["bound_decimal"] = dec(plan.set.bound);
    j["size"] = plan.set.size();
    json out = json::array();
    for (const auto& m : plan.set.members)
      out.push_back({{"value", m.value}, {"origin", to_string(m.tag)}});
    j["members"] = std::move(out);
    j["elapsed_ms"] = watch.ms();
    std::cout << j.dump(2) << "\n";
  } else if (o.common.format == "csv") {
    std::cout << "value,origin\n";
    for (const auto& m : plan.set.members)
      std::cout << m.value << "," << to_string(m.tag) << "\n";
  } else {
    std::cout << "population  " << f.N << "  frame [" << f.L << ", " << f.U
              << "]  sample  " << o.sample << "\n"
              << "criterion   " << criterion_human(crit) << "\n"
              << "route       " << to_string(plan.route) << "\n"
              << "size        " << plan.set.size() << "  (bound "
              << frac(plan.set.bound) << " ~ " << dec(plan.set.bound) << ")\n";
    for (const auto& m : plan.set.members)
      std::cout << std::setw(10) << m.value << "  " << to_string(m.tag)
                << "\n";
  }
  watch.to_stderr();
  return 0;
}

// --- verify ---------------------------------------------------------------

struct VerifyOpts {
  std::string tier = "fast";
  std::uint64_t seed = 0;
  int threads = 1;
  std::string format = "json";
};

int run_verify(const VerifyOpts& o) {
  using propsize::oracle::Tier;
  auto t0 = std::chrono::steady_clock::now();
  auto reports = propsize::oracle::run_verification(
      o.tier == "slow" ? Tier::slow : Tier::fast, o.seed,
      resolve_threads(o.threads));
  auto t1 = std::chrono::steady_clock::now();
  std::uint64_t failures = 0;
  for (const auto& r : reports) failures += r.failure_count;
  if (o.format == "json") {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "verify";
    j["tier"] = o.tier;
    j["seed"] = o.seed;
    j["pass"] = failures == 0;
    json out = json::array();
    for (const auto& r : reports) {
      json e;
      e["name"] = r.name;
      e["instances"] = r.instances;
      e["failures"] = r.failure_count;
      e["engine_evaluations"] = r.engine_evaluations;
      e["oracle_evaluations"] = r.oracle_evaluations;
      if (r.failure_count > 0) {
        json s = json::array();
        for (const auto& f : r.failures)
          s.push_back({{"instance", f.instance},
                       {"expected", f.expected},
                       {"actual", f.actual}});
        e["failure_samples"] = std::move(s);
      }
      out.push_back(std::move(e));
    }
    j["reports"] = std::move(out);
    std::cout << j.dump(2) << "\n";
  } else if (o.format == "csv") {
    std::cout << "name,instances,failures,engine_evaluations,"
                 "oracle_evaluations\n";
    for (const auto& r : reports)
      std::cout << r.name << "," << r.instances << "," << r.failure_count
                << "," << r.engine_evaluations << "," << r.oracle_evaluations
                << "\n";
  } else {
    for (const auto& r : reports) {
      std::cout << (r.pass() ? "[PASS] " : "[FAIL] ") << std::left
                << std::setw(34) << r.name << std::right << " instances "
                << std::setw(9) << r.instances;
      if (r.engine_evaluations || r.oracle_evaluations)
        std::cout << "  engine_evals " << r.engine_evaluations
                  << "  oracle_evals " << r.oracle_evaluations;
      std::cout << "\n";
      for (const auto& f : r.failures)
        std::cout << "       " << f.instance << "  expected " << f.expected
                  << "  got " << f.actual << "\n";
    }
    std::cout << (failures == 0 ? "all checks passed"
                                : "verification failed")
              << "\n";
  }
  std::cerr << "elapsed " << std::fixed << std::setprecision(2)
            << std::chrono::duration<double>(t1 - t0).count() << "s\n";
  return failures == 0 ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact minimum sample size and coverage for estimating the favored "
      "share of a finite population"};
  app.require_subcommand(1);

  SizeOpts size_opts;
  auto* size_cmd = app.add_subcommand(
      "size", "least sample size meeting a confidence requirement");
  add_common(size_cmd, size_opts.common);
  size_cmd->add_option("-d,--delta", size_opts.delta,
                       "risk bound, coverage must exceed 1 - delta")
      ->required();
  size_cmd->add_option("-s,--search", size_opts.search,
                       "ascending or accelerated")
      ->check(CLI::IsMember({"ascending", "accelerated"}));
  size_cmd->add_flag("--trace", size_opts.trace,
                     "report every sample size inspected");

  CoverageOpts cov_opts;
  auto* cov_cmd = app.add_subcommand(
      "coverage", "exact coverage probability at given favored counts");
  add_common(cov_cmd, cov_opts.common);
  cov_cmd->add_option("-n,--sample", cov_opts.sample, "sample size")
      ->required();
  cov_cmd->add_option("counts", cov_opts.counts,
                      "favored counts to evaluate (default: whole frame)");

  CandidateOpts cand_opts;
  auto* cand_cmd = app.add_subcommand(
      "candidates", "worst-case candidate set for a frame and sample size");
  add_common(cand_cmd, cand_opts.common);
  cand_cmd->add_option("-n,--sample", cand_opts.sample, "sample size")
      ->required();

  VerifyOpts ver_opts;
  auto* ver_cmd = app.add_subcommand(
      "verify", "run the library's self-verification battery");
  ver_cmd->add_option("--tier", ver_opts.tier, "fast or slow")
      ->check(CLI::IsMember({"fast", "slow"}));
  ver_cmd->add_option("--seed", ver_opts.seed, "seed for randomized sweeps");
  ver_cmd->add_option("-t,--threads", ver_opts.threads,
                      "worker threads, 0 = auto")
      ->check(CLI::Range(0, 64));
  ver_cmd->add_option("-f,--format", ver_opts.format,
                      "json (default), csv or human")
      ->check(CLI::IsMember({"json", "csv", "human"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (size_cmd->parsed()) return run_size(size_opts);
    if (cov_cmd->parsed()) return run_coverage(cov_opts);
    if (cand_cmd->parsed()) return run_candidates(cand_opts);
    return run_verify(ver_opts);
  } catch (const propsize::infeasible_error& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const propsize::unreachable_error& e) {
    std::cerr << "unreachable: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}
