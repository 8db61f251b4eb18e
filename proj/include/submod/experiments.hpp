#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "submod/csv.hpp"
#include "submod/netsim.hpp"
#include "submod/parallel.hpp"
#include "submod/redundancy.hpp"
#include "submod/rng.hpp"
#include "submod/scenarios.hpp"
#include "submod/setfun.hpp"
#include "submod/solvers.hpp"
#include "submod/tracking.hpp"

namespace submod {

struct Aggregate {
  int n = 0;
  double mean = 0.0;
  double sd = 0.0;
  double stderr_mean = 0.0;
};

inline Aggregate aggregate(const std::vector<double>& xs) {
  Aggregate a;
  a.n = static_cast<int>(xs.size());
  if (a.n == 0) return a;
  a.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / a.n;
  if (a.n > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - a.mean) * (x - a.mean);
    a.sd = std::sqrt(ss / (a.n - 1));
    a.stderr_mean = a.sd / std::sqrt(static_cast<double>(a.n));
  }
  return a;
}

// ---------------------------------------------------------------------------
// Random small instances for oracle-backed property tests.
// ---------------------------------------------------------------------------

struct SmallInstance {
  std::shared_ptr<ProbCoverageProblem> problem;
  SimplePartitionMatroid matroid{std::vector<int>{1}};
  std::vector<GroundElement> ground;
};

inline SmallInstance random_prob_instance(Rng& rng, int max_agents = 4, int max_actions = 4,
                                          int max_events = 6) {
  const int n_a = rng.uniform_int(1, max_agents);
  std::vector<int> blocks(n_a);
  for (auto& b : blocks) b = rng.uniform_int(1, max_actions);
  const int n_e = rng.uniform_int(1, max_events);
  std::vector<Event> events(n_e);
  for (auto& e : events) e = {{rng.uniform(), rng.uniform()}, rng.uniform()};

  std::vector<int> offsets(blocks.size() + 1, 0);
  for (std::size_t i = 0; i < blocks.size(); ++i) offsets[i + 1] = offsets[i] + blocks[i];
  std::vector<double> fail(static_cast<std::size_t>(offsets.back()) * n_e);
  for (auto& p : fail) p = rng.uniform();

  auto failure = [fail, offsets, n_e](const GroundElement& x, int e) {
    return fail[static_cast<std::size_t>(offsets[x.agent_id] + x.action_id) * n_e + e];
  };

  SmallInstance inst;
  inst.problem = std::make_shared<ProbCoverageProblem>(events, blocks, failure);
  inst.matroid = SimplePartitionMatroid(blocks);
  for (int i = 0; i < n_a; ++i)
    for (int a = 0; a < blocks[i]; ++a) inst.ground.push_back({i, a});
  return inst;
}

// Draw `count` distinct ground elements (fewer if the ground set is small).
inline std::vector<GroundElement> sample_elements(const std::vector<GroundElement>& ground,
                                                  int count, Rng& rng,
                                                  std::vector<GroundElement>* exclude = nullptr) {
  std::vector<GroundElement> pool = ground;
  if (exclude != nullptr)
    pool.erase(std::remove_if(pool.begin(), pool.end(),
                              [&](const GroundElement& x) {
                                return std::find(exclude->begin(), exclude->end(), x) !=
                                       exclude->end();
                              }),
               pool.end());
  std::vector<GroundElement> out;
  while (count-- > 0 && !pool.empty()) {
    const int k = rng.uniform_int(0, static_cast<int>(pool.size()) - 1);
    out.push_back(pool[k]);
    pool.erase(pool.begin() + k);
  }
  return out;
}

inline Selection to_selection(const std::vector<GroundElement>& xs) {
  Selection s;
  for (const auto& x : xs) s.add(x);
  return s;
}

// ---------------------------------------------------------------------------
// Property-check battery (shared by the tinycheck CLI command, the unit
// tests, and the acceptance suite).
// ---------------------------------------------------------------------------

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Sequential greedy is half-optimal, and the post-hoc DAG bound
// 2 f(X^d) + deleted weight dominates the exact optimum.
inline CheckResult check_half_optimality(int instances, std::uint64_t seed) {
  int violations = 0;
  for (int i = 0; i < instances; ++i) {
    Rng rng(derive_seed(seed, i));
    const auto inst = random_prob_instance(rng);
    const auto [opt_sel, opt] = brute_force_optimum(*inst.problem, inst.matroid);
    const auto seq = sequential_greedy(*inst.problem, inst.matroid);
    if (seq.value < 0.5 * opt - 1e-9) ++violations;

    const auto graph = build_redundancy_graph(*inst.problem, inst.matroid);
    const int n_a = inst.matroid.n_agents();
    const auto myopic = myopic_plan(*inst.problem, inst.matroid);
    if (posthoc_bound(myopic, graph) < opt - 1e-9) ++violations;
    const auto rsp = rsp_plan(*inst.problem, inst.matroid,
                              RoundPolicy::fixed(rng.uniform_int(1, n_a)), rng);
    if (posthoc_bound(rsp, graph) < opt - 1e-9) ++violations;
  }
  return {"half-optimality + post-hoc bound", violations == 0,
          std::to_string(violations) + " violations / " + std::to_string(instances) + " instances"};
}

// f(Y|X) equals the telescoping sum of element gains.
inline CheckResult check_chain_rule(int cases, std::uint64_t seed) {
  int violations = 0;
  for (int i = 0; i < cases; ++i) {
    Rng rng(derive_seed(seed, 0x10000 + i));
    const auto inst = random_prob_instance(rng);
    auto xs = sample_elements(inst.ground, rng.uniform_int(0, 3), rng);
    auto ys = sample_elements(inst.ground, rng.uniform_int(1, 5), rng, &xs);
    if (ys.empty()) continue;
    const auto& f = *inst.problem;
    Selection x = to_selection(xs);
    Selection xy = x;
    double sum = 0.0;
    for (const auto& y : ys) {
      sum += f.value(xy.with(y)) - f.value(xy);
      xy.add(y);
    }
    const double direct = f.value(xy) - f.value(x);
    if (std::abs(direct - sum) > 1e-9) ++violations;
  }
  return {"chain rule", violations == 0,
          std::to_string(violations) + " violations / " + std::to_string(cases) + " cases"};
}

// Pairwise redundancy bound: f(A|B,C) - f(A|C) >= sum_b f(A;{b}) for
// disjoint A, B, C on 3-increasing objectives.
inline CheckResult check_lemma_pairwise_redundancy(int cases, std::uint64_t seed) {
  int violations = 0;
  for (int i = 0; i < cases; ++i) {
    Rng rng(derive_seed(seed, 0x20000 + i));
    const auto inst = random_prob_instance(rng, 4, 4, 6);
    auto as = sample_elements(inst.ground, rng.uniform_int(1, 2), rng);
    auto bs = sample_elements(inst.ground, rng.uniform_int(1, 3), rng, &as);
    auto joined = as;
    joined.insert(joined.end(), bs.begin(), bs.end());
    auto cs = sample_elements(inst.ground, rng.uniform_int(0, 2), rng, &joined);
    if (bs.empty()) continue;
    const auto& f = *inst.problem;
    const auto value_of = [&](std::vector<GroundElement> v) { return f.value(to_selection(v)); };

    auto abc = as;
    abc.insert(abc.end(), bs.begin(), bs.end());
    abc.insert(abc.end(), cs.begin(), cs.end());
    auto bc = bs;
    bc.insert(bc.end(), cs.begin(), cs.end());
    auto ac = as;
    ac.insert(ac.end(), cs.begin(), cs.end());
    const double lhs = (value_of(abc) - value_of(bc)) - (value_of(ac) - value_of(cs));

    double rhs = 0.0;
    for (const auto& b : bs) {
      auto ab = as;
      ab.push_back(b);
      rhs += value_of(ab) - value_of(as) - value_of({b});
    }
    if (lhs < rhs - 1e-9) ++violations;
  }
  return {"pairwise redundancy bound", violations == 0,
          std::to_string(violations) + " violations / " + std::to_string(cases) + " cases"};
}

// Probabilistic coverage is monotone, submodular, and 3-increasing.
inline CheckResult check_coverage_orders(int cases, std::uint64_t seed) {
  int violations = 0;
  for (int i = 0; i < cases; ++i) {
    Rng rng(derive_seed(seed, 0x30000 + i));
    const auto inst = random_prob_instance(rng);
    const auto& f = *inst.problem;

    // Monotone: S subset of T.
    auto ts = sample_elements(inst.ground, rng.uniform_int(1, 5), rng);
    std::vector<GroundElement> ss;
    for (const auto& x : ts)
      if (rng.uniform() < 0.5) ss.push_back(x);
    if (f.value(to_selection(ss)) > f.value(to_selection(ts)) + 1e-9) ++violations;

    // Submodular: gain at A >= gain at B for A subset of B.
    auto bs = sample_elements(inst.ground, rng.uniform_int(0, 4), rng);
    auto xs = sample_elements(inst.ground, 1, rng, &bs);
    if (!xs.empty()) {
      std::vector<GroundElement> as;
      for (const auto& x : bs)
        if (rng.uniform() < 0.5) as.push_back(x);
      const double ga = marginal_gain(f, xs[0], to_selection(as));
      const double gb = marginal_gain(f, xs[0], to_selection(bs));
      if (ga < gb - 1e-9) ++violations;
    }

    // 3-increasing: second derivatives grow under conditioning.
    auto ab = sample_elements(inst.ground, 2, rng);
    if (ab.size() == 2) {
      auto ds = sample_elements(inst.ground, rng.uniform_int(0, 3), rng, &ab);
      std::vector<GroundElement> cs;
      for (const auto& x : ds)
        if (rng.uniform() < 0.5) cs.push_back(x);
      const double low = second_derivative(f, ab[0], ab[1], to_selection(cs));
      const double high = second_derivative(f, ab[0], ab[1], to_selection(ds));
      if (low > high + 1e-9) ++violations;
    }
  }
  return {"coverage monotone/submodular/3-increasing", violations == 0,
          std::to_string(violations) + " violations / " + std::to_string(cases) + " cases"};
}

// Capacity weights dominate the exact pairwise weights for per-event sum
// decompositions of probabilistic coverage.
inline CheckResult check_capacity_dominance(int cases, std::uint64_t seed) {
  int violations = 0;
  for (int i = 0; i < cases; ++i) {
    Rng rng(derive_seed(seed, 0x40000 + i));
    const auto inst = random_prob_instance(rng, 4, 3, 4);
    const auto& f = *inst.problem;
    const int n_a = inst.matroid.n_agents();
    if (n_a < 2) continue;

    std::vector<std::shared_ptr<ProbCoverageProblem>> components;
    std::vector<const SetObjective*> ptrs;
    for (int e = 0; e < f.n_events(); ++e) {
      auto failure = [&f, e](const GroundElement& x, int) { return f.failure_prob(x, e); };
      components.push_back(std::make_shared<ProbCoverageProblem>(
          std::vector<Event>{f.events()[e]}, inst.matroid.block_sizes(), failure));
      ptrs.push_back(components.back().get());
    }
    const auto w_hat = capacity_weights(ptrs, inst.matroid, &f);
    for (int a = 0; a < n_a; ++a)
      for (int b = a + 1; b < n_a; ++b)
        if (w_hat.weight(a, b) < pairwise_weight(f, inst.matroid, a, b) - 1e-9) ++violations;
  }
  return {"capacity-weight dominance", violations == 0,
          std::to_string(violations) + " violations / " + std::to_string(cases) + " cases"};
}

// Histogram filters conserve probability mass through arbitrary
// predict/update interleavings.
inline CheckResult check_filter_mass(int cases, std::uint64_t seed) {
  int violations = 0;
  for (int i = 0; i < cases; ++i) {
    Rng rng(derive_seed(seed, 0x50000 + i));
    const GridWorld world{rng.uniform_int(2, 7)};
    TargetFilter f = rng.uniform() < 0.5
                         ? TargetFilter::uniform(world)
                         : TargetFilter::point_mass(world, rng.uniform_int(0, world.n_cells() - 1));
    if (rng.uniform() < 0.3) f.sparse_threshold = 1e-3;
    const int ops = rng.uniform_int(1, 10);
    for (int o = 0; o < ops; ++o) {
      if (rng.uniform() < 0.5) {
        filter_predict(f, world);
      } else {
        filter_update(f, world, rng.uniform_int(0, world.n_cells() - 1), rng.uniform(-2.0, 25.0));
      }
      if (std::abs(f.mass() - 1.0) > 1e-9) ++violations;
    }
  }
  return {"filter mass conservation", violations == 0,
          std::to_string(violations) + " violations / " + std::to_string(cases) + " cases"};
}

// DSGA's excess-suboptimality bound and its worst-case relation to
// sequential greedy.
inline CheckResult check_dsga_bounds(int instances, std::uint64_t seed) {
  int violations = 0;
  for (int i = 0; i < instances; ++i) {
    Rng rng(derive_seed(seed, 0x60000 + i));
    const auto inst = random_prob_instance(rng);
    const int n_a = inst.matroid.n_agents();
    const int n_d = rng.uniform_int(1, n_a);
    const auto [opt_sel, opt] = brute_force_optimum(*inst.problem, inst.matroid);
    const auto dsga = dsga_plan(*inst.problem, inst.matroid, n_d);
    const auto seq = sequential_greedy(*inst.problem, inst.matroid);
    const double psi = dsga.psi.value_or(0.0);
    if (opt > 2.0 * dsga.value + psi + 1e-9) ++violations;
    const int commits = (n_a + n_d - 1) / n_d;
    if (seq.value > (1.0 + commits) * dsga.value + 1e-9) ++violations;
    if (psi < -1e-12) ++violations;
  }
  return {"DSGA bounds", violations == 0,
          std::to_string(violations) + " violations / " + std::to_string(instances) + " instances"};
}

// Converged auctions reproduce general greedy exactly on random connected
// instances.
inline CheckResult check_auction_equivalence(int instances, std::uint64_t seed) {
  int violations = 0;
  for (int i = 0; i < instances; ++i) {
    Rng rng(derive_seed(seed, 0x70000 + i));
    auto inst = random_prob_instance(rng, 6, 4, 6);
    const int n_a = inst.matroid.n_agents();
    // Random connected graph: a random attachment tree plus extra edges.
    std::vector<std::vector<int>> adj(n_a);
    for (int v = 1; v < n_a; ++v) {
      const int u = rng.uniform_int(0, v - 1);
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    for (int u = 0; u < n_a; ++u)
      for (int v = u + 1; v < n_a; ++v)
        if (rng.uniform() < 0.3 && std::find(adj[u].begin(), adj[u].end(), v) == adj[u].end()) {
          adj[u].push_back(v);
          adj[v].push_back(u);
        }

    const auto greedy = general_greedy(*inst.problem, inst.matroid);
    // The claim is about converged auctions, so allow ample rounds: each of
    // the n commits may need up to diameter (< n) rounds to propagate on a
    // path graph, which can exceed the 3n running default.
    const int rounds = 3 * n_a * n_a;
    const auto ga = global_auction(*inst.problem, inst.matroid, adj, rounds);
    const auto la = local_auction(*inst.problem, inst.matroid, adj, rounds);

    auto as_sorted = [](const Selection& s) {
      std::vector<GroundElement> v(s.begin(), s.end());
      std::sort(v.begin(), v.end());
      return v;
    };
    const auto want = as_sorted(greedy.selection);
    if (!ga.converged || as_sorted(ga.selection) != want) ++violations;
    if (!la.converged || as_sorted(la.selection) != want) ++violations;
  }
  return {"auction equivalence", violations == 0,
          std::to_string(violations) + " violations / " + std::to_string(instances) + " instances"};
}

// Expected deleted-edge weight under the adaptive round policies stays
// within the per-agent budget.
inline CheckResult check_rsp_expected_deletion(int draws, std::uint64_t seed) {
  Rng gen(derive_seed(seed, 0x80000));
  const auto sc = gen_prob_sensing(10, gen);
  const auto graph = build_redundancy_graph(*sc.problem, sc.matroid);
  const double budget = sc.matroid.n_agents() * sc.gamma;

  int failures = 0;
  for (const RoundPolicy policy :
       {RoundPolicy::global_adaptive(sc.gamma), RoundPolicy::local_adaptive(sc.gamma)}) {
    double total = 0.0;
    Rng rng(derive_seed(seed, 0x80001));
    for (int d = 0; d < draws; ++d) {
      const auto [rounds, n_d] = rsp_assign_rounds(sc.matroid.n_agents(), policy, &graph, rng);
      total += deleted_edge_weight(graph, rounds_to_dag(rounds));
    }
    if (total / draws > budget) ++failures;
  }
  return {"RSP expected deleted weight", failures == 0,
          std::to_string(failures) + " policies over budget (" + std::to_string(draws) + " draws)"};
}

// Empirical synchronous-epoch acceptance rate vs the nominal formula.
inline CheckResult check_acceptance_rate(std::uint64_t seed) {
  int failures = 0;
  std::string detail;
  for (int n_d : {2, 3, 6}) {
    Rng rng(derive_seed(seed, 0x90000 + n_d));
    const auto stats = sync_epoch_sim(20, n_d, 100, {}, rng);  // 38,000 events
    const double want = nominal_acceptance_rate(n_d);
    if (std::abs(stats.rate() - want) > 0.02) ++failures;
    detail += "n_d=" + std::to_string(n_d) + ":" + format_double(stats.rate()) + " ";
  }
  return {"sync-epoch acceptance rate", failures == 0, detail};
}

inline std::vector<CheckResult> run_tinycheck(std::uint64_t seed) {
  return {
      check_half_optimality(500, seed),
      check_chain_rule(1000, seed),
      check_lemma_pairwise_redundancy(1000, seed),
      check_coverage_orders(1000, seed),
      check_capacity_dominance(1000, seed),
      check_filter_mass(1000, seed),
      check_dsga_bounds(500, seed),
      check_auction_equivalence(200, seed),
      check_rsp_expected_deletion(500, seed),
      check_acceptance_rate(seed),
  };
}

// ---------------------------------------------------------------------------
// Experiment drivers (shared by the CLI and the acceptance suite).
// ---------------------------------------------------------------------------

struct SolverRunRow {
  int trial = 0;
  std::string solver;
  double value = 0.0;
  int rounds_used = 0;
  std::optional<double> psi;
  bool converged = true;
  std::optional<BoundReport> bounds;
};

enum class CoverageFamily { Area, Prob };

struct CoverageStudyOptions {
  CoverageFamily family = CoverageFamily::Area;
  int n_agents = 50;
  int trials = 50;
  std::uint64_t seed = 0;
  int jobs = 0;
  int grid = 512;
  bool with_bounds = false;
  double comm_range = -1.0;  // >0 overrides every rrsp spec's range
  // Scale applied to the sensing/agent radii in area-coverage studies. The
  // default normalizes the total sensing-action area to one (matching the
  // design goal that objective values stay at most one); at twice that area
  // the unit square saturates and myopic planning loses its advantage over
  // random selection, because crowding out neighbors costs more than the
  // boundary clipping that myopic selection avoids.
  double area_radius_scale = 0.70710678118654752;
};

// Per-trial scenario generation plus one run per solver spec. Solver rng
// streams share a per-trial seed, so rsp/rrsp at equal n_d draw identical
// rounds and pair exactly.
inline std::vector<SolverRunRow> run_coverage_study(std::vector<SolverSpec> specs,
                                                    const CoverageStudyOptions& opt) {
  for (auto& s : specs)
    if (s.family == SolverFamily::Rrsp && opt.comm_range > 0.0) s.comm_range = opt.comm_range;

  const bool need_graph =
      opt.with_bounds || std::any_of(specs.begin(), specs.end(),
                                     [](const SolverSpec& s) { return s.needs_redundancy_graph(); });

  std::vector<SolverRunRow> rows(static_cast<std::size_t>(opt.trials) * specs.size());
  parallel_for(opt.trials, opt.jobs, [&](int trial) {
    const std::uint64_t trial_seed = derive_seed(opt.seed, trial);
    Rng gen(derive_seed(trial_seed, 0));

    std::shared_ptr<SetObjective> f;
    SimplePartitionMatroid m{std::vector<int>{1}};
    std::vector<Point2> positions;
    if (opt.family == CoverageFamily::Area) {
      auto sc = gen_area_coverage(opt.n_agents, gen, 10, opt.grid, opt.area_radius_scale);
      f = sc.problem;
      m = sc.matroid;
      positions = sc.agent_positions;
    } else {
      auto sc = gen_prob_sensing(opt.n_agents, gen);
      f = sc.problem;
      m = sc.matroid;
      positions = sc.agent_positions;
    }

    std::optional<RedundancyGraph> graph;
    if (need_graph) graph = build_redundancy_graph(*f, m);

    SolveContext ctx;
    ctx.positions = &positions;
    ctx.weights = [&]() { return graph ? &*graph : nullptr; };

    for (std::size_t s = 0; s < specs.size(); ++s) {
      Rng srng(derive_seed(trial_seed, 7));
      const SolveResult res = solve_with_spec(*f, m, specs[s], srng, ctx);
      SolverRunRow row;
      row.trial = trial;
      row.solver = specs[s].text;
      row.value = res.value;
      row.rounds_used = res.rounds_used;
      row.psi = res.psi;
      row.converged = res.converged;
      if (opt.with_bounds) row.bounds = make_bound_report(*f, m, res, *graph);
      rows[static_cast<std::size_t>(trial) * specs.size() + s] = std::move(row);
    }
  });
  return rows;
}

struct TrackingStudyOptions {
  int n_robots = 8;
  int trials = 20;
  std::uint64_t seed = 0;
  int jobs = 0;
  int n_samples = 50;
  int trial_length = 100;
  int burn_in = 20;
};

struct TrackingRunRow {
  int trial = 0;
  std::string solver;
  TrackingTrialResult result;
};

inline std::vector<TrackingRunRow> run_tracking_study(const std::vector<SolverSpec>& specs,
                                                      const TrackingStudyOptions& opt) {
  const int jobs_total = opt.trials * static_cast<int>(specs.size());
  std::vector<TrackingRunRow> rows(jobs_total);
  parallel_for(jobs_total, opt.jobs, [&](int idx) {
    const int trial = idx / static_cast<int>(specs.size());
    const int s = idx % static_cast<int>(specs.size());
    Rng gen(derive_seed(opt.seed, 1000 + trial));
    TrackingScenario sc = gen_tracking(opt.n_robots, gen);
    sc.n_samples = opt.n_samples;
    sc.trial_length = opt.trial_length;
    sc.burn_in = opt.burn_in;
    rows[idx] = {trial, specs[s].text, run_tracking_trial(sc, specs[s], derive_seed(opt.seed, trial))};
  });
  return rows;
}

struct CommStudyOptions {
  std::vector<int> team_sizes;
  int trials = 50;
  std::uint64_t seed = 0;
  int jobs = 0;
  int grid = 256;  // message counts are insensitive to coverage resolution
};

struct CommRow {
  int n_agents = 0;
  int trial = 0;
  std::string solver;
  double objective = 0.0;
  MessageStats stats;
  bool converged = true;
};

// Area-coverage instances on connected geometric graphs with r_c = 3 r_a;
// every solver run is charged its communication cost on that graph.
inline std::vector<CommRow> run_comm_study(const std::vector<SolverSpec>& specs,
                                           const CommStudyOptions& opt) {
  const int n_sizes = static_cast<int>(opt.team_sizes.size());
  const int jobs_total = n_sizes * opt.trials;
  std::vector<CommRow> rows(static_cast<std::size_t>(jobs_total) * specs.size());
  parallel_for(jobs_total, opt.jobs, [&](int idx) {
    const int size_idx = idx / opt.trials;
    const int trial = idx % opt.trials;
    const int n = opt.team_sizes[size_idx];
    const double r_c = 3.0 * area_agent_radius(n);
    const std::uint64_t trial_seed = derive_seed(opt.seed, idx);

    Rng gen(derive_seed(trial_seed, 0));
    const auto positions = gen_connected_positions(n, r_c, gen);
    const auto sc = gen_area_coverage_at(positions, gen, 10, opt.grid);
    const auto graph = CommGraph::from_positions(positions, r_c);

    SolveContext ctx;
    ctx.positions = &positions;
    std::vector<std::vector<int>> adjacency = graph.adjacency;
    ctx.adjacency = &adjacency;

    for (std::size_t s = 0; s < specs.size(); ++s) {
      SolverSpec spec = specs[s];
      if (spec.family == SolverFamily::Rrsp) spec.comm_range = r_c;
      Rng srng(derive_seed(trial_seed, 7));
      const SolveResult res = solve_with_spec(*sc.problem, sc.matroid, spec, srng, ctx);
      CommRow row;
      row.n_agents = n;
      row.trial = trial;
      row.solver = specs[s].text;
      row.objective = res.value;
      row.stats = account_solver_messages(res.trace, graph);
      row.converged = res.converged;
      rows[static_cast<std::size_t>(idx) * specs.size() + s] = std::move(row);
    }
  });
  return rows;
}

// ---------------------------------------------------------------------------
// Output provenance.
// ---------------------------------------------------------------------------

inline std::string git_describe() {
  FILE* pipe = ::popen("git describe --always --dirty 2>/dev/null", "r");
  if (pipe == nullptr) return "unknown";
  char buf[128];
  std::string out;
  while (std::fgets(buf, sizeof(buf), pipe) != nullptr) out += buf;
  ::pclose(pipe);
  while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
  return out.empty() ? "unknown" : out;
}

inline std::string provenance_line(std::uint64_t seed, const std::string& git) {
  return "seed=" + std::to_string(seed) + " git=" + git;
}

}  // namespace submod
