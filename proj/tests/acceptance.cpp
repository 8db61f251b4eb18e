// Acceptance suite: one line per criterion, exit code = number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "submod/experiments.hpp"

using namespace submod;

namespace {

struct Clock {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

struct Paired {
  double mean = 0.0;
  double se = 0.0;
};

Paired paired_diff(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d;
  for (std::size_t i = 0; i < a.size(); ++i) d.push_back(a[i] - b[i]);
  const auto agg = aggregate(d);
  return {agg.mean, agg.stderr_mean};
}

int failures = 0;

void report(int criterion, bool pass, const std::string& detail, double seconds) {
  if (!pass) ++failures;
  std::printf("criterion %d: %s — %s (%.1fs)\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str(), seconds);
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

void criterion1() {
  Clock clk;
  const auto r = check_half_optimality(500, 101);
  const double s = clk.seconds();
  report(1, r.passed && s < 60.0, r.detail, s);
}

void criterion2() {
  Clock clk;
  const std::vector<std::string> names{"random", "myopic", "rsp:2", "rsp:4", "rsp:8", "sequential"};
  std::vector<SolverSpec> specs;
  for (const auto& n : names) specs.push_back(parse_solver_spec(n));
  CoverageStudyOptions opt;
  opt.family = CoverageFamily::Area;
  opt.n_agents = 50;
  opt.trials = 50;
  opt.seed = 202;
  const auto rows = run_coverage_study(specs, opt);

  std::vector<std::vector<double>> values(specs.size());
  for (std::size_t i = 0; i < rows.size(); ++i) values[i % specs.size()].push_back(rows[i].value);

  bool pass = true;
  std::string detail;
  for (std::size_t s = 0; s + 1 < specs.size(); ++s) {
    const auto d = paired_diff(values[s + 1], values[s]);
    const bool last = (s + 2 == specs.size());
    // Strict ordering for every step but the final one, where rsp:8 may tie
    // sequential within noise.
    const bool ok = last ? d.mean >= -2.0 * d.se : d.mean > 2.0 * d.se;
    pass = pass && ok;
    detail += names[s] + "<" + names[s + 1] + ":" + fmt(d.mean) + "±" + fmt(d.se) + " ";
  }
  const double seq = aggregate(values[5]).mean;
  const double gap1 = seq - aggregate(values[1]).mean;
  const double gap8 = seq - aggregate(values[4]).mean;
  const bool shrink = gap1 >= 4.0 * gap8;
  pass = pass && shrink;
  detail += "gap shrink " + fmt(gap8 > 0 ? gap1 / gap8 : std::numeric_limits<double>::infinity()) + "x";
  const double sec = clk.seconds();
  report(2, pass && sec < 300.0, detail, sec);
}

void criterion3() {
  Clock clk;
  const int trials = 50;
  const double gamma = 8e-3;
  std::vector<double> del_global, del_local, v_global, v_local, v_seq;
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = derive_seed(303, trial);
    Rng gen(derive_seed(trial_seed, 0));
    const auto sc = gen_prob_sensing(50, gen);
    const auto graph = build_redundancy_graph(*sc.problem, sc.matroid);
    v_seq.push_back(sequential_greedy(*sc.problem, sc.matroid).value);
    {
      Rng srng(derive_seed(trial_seed, 7));
      const auto res =
          rsp_plan(*sc.problem, sc.matroid, RoundPolicy::global_adaptive(gamma), srng, &graph);
      del_global.push_back(deleted_edge_weight(graph, res.dag));
      v_global.push_back(res.value);
    }
    {
      Rng srng(derive_seed(trial_seed, 7));
      const auto res =
          rsp_plan(*sc.problem, sc.matroid, RoundPolicy::local_adaptive(gamma), srng, &graph);
      del_local.push_back(deleted_edge_weight(graph, res.dag));
      v_local.push_back(res.value);
    }
  }
  const double dg = aggregate(del_global).mean;
  const double dl = aggregate(del_local).mean;
  const double seq = aggregate(v_seq).mean;
  const double vg = aggregate(v_global).mean;
  const double vl = aggregate(v_local).mean;
  const bool pass = dg <= 0.4 && dl <= 0.4 && vg >= 0.95 * seq && vl >= 0.95 * seq;
  const double sec = clk.seconds();
  report(3,
         pass && sec < 600.0,
         "deleted weight global=" + fmt(dg) + " local=" + fmt(dl) + " (limit 0.4); objective " +
             fmt(vg) + "/" + fmt(vl) + " vs sequential " + fmt(seq),
         sec);
}

void criterion4() {
  Clock clk;
  CoverageStudyOptions opt;
  opt.family = CoverageFamily::Prob;
  opt.n_agents = 50;
  opt.trials = 50;
  opt.seed = 404;
  opt.comm_range = 2.0 * prob_agent_radius(50);
  const std::vector<SolverSpec> specs{parse_solver_spec("rsp:4"), parse_solver_spec("rrsp:4:1.0")};
  const auto rows = run_coverage_study(specs, opt);
  std::vector<double> rsp, rrsp;
  for (std::size_t i = 0; i < rows.size(); ++i)
    (i % 2 == 0 ? rsp : rrsp).push_back(rows[i].value);
  const double mr = aggregate(rsp).mean;
  const double mrr = aggregate(rrsp).mean;
  const double sec = clk.seconds();
  report(4, mrr >= 0.98 * mr && sec < 600.0,
         "range-limited mean " + fmt(mrr) + " vs unlimited " + fmt(mr) + " (loss " +
             fmt(100.0 * (1.0 - mrr / mr)) + "%)",
         sec);
}

void criterion5() {
  Clock clk;
  const std::vector<std::string> names{"myopic", "sequential", "rsp:4"};
  std::vector<SolverSpec> specs;
  for (const auto& n : names) specs.push_back(parse_solver_spec(n));
  TrackingStudyOptions opt;
  opt.n_robots = 8;
  opt.trials = 20;
  opt.seed = 505;
  const auto rows = run_tracking_study(specs, opt);

  std::vector<std::vector<double>> entropy(specs.size());
  for (const auto& row : rows)
    for (std::size_t s = 0; s < names.size(); ++s)
      if (row.solver == names[s]) entropy[s].push_back(row.result.mean_entropy_bits);

  const double myo = aggregate(entropy[0]).mean;
  bool pass = true;
  std::string detail = "myopic entropy " + fmt(myo) + "; ";
  for (std::size_t s = 1; s < names.size(); ++s) {
    const auto d = paired_diff(entropy[0], entropy[s]);
    const bool ok = d.mean >= 0.03 * myo && d.mean > 2.0 * d.se;
    pass = pass && ok;
    detail += names[s] + " saves " + fmt(100.0 * d.mean / myo) + "%±" + fmt(100.0 * d.se / myo) + " ";
  }

  // Large-team smoke run.
  Clock smoke;
  Rng gen(derive_seed(505, 1000));
  TrackingScenario sc = gen_tracking(32, gen);
  const auto res = run_tracking_trial(sc, parse_solver_spec("rrsp:4:12"), derive_seed(505, 2000));
  const double smoke_sec = smoke.seconds();
  const bool smoke_ok = std::isfinite(res.mean_entropy_bits) && smoke_sec < 1800.0;
  detail += "| n=32 smoke entropy " + fmt(res.mean_entropy_bits) + " in " + fmt(smoke_sec) + "s";
  report(5, pass && smoke_ok, detail, clk.seconds());
}

void criterion6() {
  Clock clk;
  const auto r = check_auction_equivalence(200, 606);
  const double s = clk.seconds();
  report(6, r.passed && s < 120.0, r.detail, s);
}

void criterion7() {
  Clock clk;
  CommStudyOptions opt;
  opt.team_sizes = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  opt.trials = 50;
  opt.seed = 707;
  const std::vector<SolverSpec> specs{parse_solver_spec("rrsp:4:1.0"),
                                      parse_solver_spec("auction:local")};
  const auto rows = run_comm_study(specs, opt);

  bool spans_ok = true;
  std::map<int, long long> rrsp_vol, auction_vol;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (i % 2 == 0) {  // rrsp rows
      spans_ok = spans_ok && row.stats.span == 3;
      rrsp_vol[row.n_agents] += row.stats.volume;
    } else {
      auction_vol[row.n_agents] += row.stats.volume;
    }
  }
  bool ratio_ok = true;
  double min_ratio = std::numeric_limits<double>::infinity();
  for (const auto& [n, vol] : rrsp_vol) {
    const double ratio = static_cast<double>(auction_vol[n]) / static_cast<double>(vol);
    min_ratio = std::min(min_ratio, ratio);
    ratio_ok = ratio_ok && ratio >= 5.0;
  }
  const double sec = clk.seconds();
  report(7, spans_ok && ratio_ok && sec < 600.0,
         std::string("span==n_d-1 ") + (spans_ok ? "everywhere" : "VIOLATED") +
             "; min auction/rrsp volume ratio " + fmt(min_ratio),
         sec);
}

void criterion8() {
  Clock clk;
  const auto r = check_acceptance_rate(808);
  const double s = clk.seconds();
  report(8, r.passed && s < 10.0, r.detail, s);
}

void criterion9() {
  Clock clk;
  const std::vector<CheckResult> checks{
      check_chain_rule(1000, 909),
      check_lemma_pairwise_redundancy(1000, 909),
      check_coverage_orders(1000, 909),
      check_capacity_dominance(1000, 909),
      check_filter_mass(1000, 909),
  };
  bool pass = true;
  std::string detail;
  for (const auto& c : checks) {
    pass = pass && c.passed;
    detail += c.name + (c.passed ? " ok; " : " FAILED (" + c.detail + "); ");
  }
  report(9, pass, detail, clk.seconds());
}

}  // namespace

int main(int argc, char** argv) {
  void (*const criteria[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                criterion6, criterion7, criterion8, criterion9};
  if (argc > 1) {
    // Optional arguments select individual criteria by number.
    for (int i = 1; i < argc; ++i) {
      const int k = std::atoi(argv[i]);
      if (k < 1 || k > 9) {
        std::fprintf(stderr, "usage: %s [criterion 1-9]...\n", argv[0]);
        return 2;
      }
      criteria[k - 1]();
    }
    return failures;
  }
  for (const auto& c : criteria) c();
  return failures;
}
