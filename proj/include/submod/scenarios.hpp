#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "submod/netsim.hpp"
#include "submod/objectives.hpp"
#include "submod/redundancy.hpp"
#include "submod/rng.hpp"
#include "submod/solvers.hpp"
#include "submod/tracking.hpp"

namespace submod {

struct ScenarioConfig {
  std::string family;  // area_coverage | prob_sensing | tracking
  int n_agents = 50;
  std::uint64_t seed = 0;
  std::map<std::string, double> overrides;
};

// Published radii: density-normalized so expected coverage stays constant
// as the team grows.
inline double area_sensor_radius(int n) { return std::sqrt(2.0 / (n * std::numbers::pi)); }
inline double area_agent_radius(int n) { return 2.0 * area_sensor_radius(n); }
inline double prob_sensor_radius(int n) { return std::sqrt(0.6 / (n * std::numbers::pi)); }
inline double prob_agent_radius(int n) { return 4.0 * prob_sensor_radius(n); }

namespace detail {

inline Point2 uniform_in_disk(const Point2& center, double radius, Rng& rng) {
  while (true) {
    const double dx = rng.uniform(-radius, radius);
    const double dy = rng.uniform(-radius, radius);
    if (dx * dx + dy * dy <= radius * radius) return {center.x + dx, center.y + dy};
  }
}

}  // namespace detail

struct AreaScenario {
  std::shared_ptr<AreaCoverageProblem> problem;
  SimplePartitionMatroid matroid{std::vector<int>{1}};
  std::vector<Point2> agent_positions;
  double r_s = 0.0;
  double r_a = 0.0;
};

// Area coverage around fixed agent positions (used when positions come
// from the connected-graph generator).
inline AreaScenario gen_area_coverage_at(const std::vector<Point2>& positions, Rng& rng,
                                         int actions_per_agent = 10, int grid_resolution = 512,
                                         double radius_scale = 1.0) {
  const int n = static_cast<int>(positions.size());
  if (n < 1) throw std::invalid_argument("gen_area_coverage_at: need at least one agent");
  if (!(radius_scale > 0.0)) throw std::invalid_argument("gen_area_coverage_at: radius_scale must be > 0");
  AreaScenario sc;
  sc.r_s = radius_scale * area_sensor_radius(n);
  sc.r_a = radius_scale * area_agent_radius(n);
  sc.agent_positions = positions;
  std::vector<std::vector<Point2>> centers(n);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < actions_per_agent; ++a)
      centers[i].push_back(detail::uniform_in_disk(positions[i], sc.r_a, rng));
  sc.problem = std::make_shared<AreaCoverageProblem>(std::move(centers), sc.r_s, grid_resolution);
  sc.matroid = SimplePartitionMatroid(std::vector<int>(n, actions_per_agent));
  return sc;
}

// Area coverage: agents uniform in the unit square, 10 candidate sensing
// actions per agent uniform in the r_a-disk about the agent.
inline AreaScenario gen_area_coverage(int n, Rng& rng, int actions_per_agent = 10,
                                      int grid_resolution = 512, double radius_scale = 1.0) {
  if (n < 1) throw std::invalid_argument("gen_area_coverage: n must be >= 1");
  std::vector<Point2> positions;
  for (int i = 0; i < n; ++i) positions.push_back({rng.uniform(), rng.uniform()});
  return gen_area_coverage_at(positions, rng, actions_per_agent, grid_resolution, radius_scale);
}

// The fixed Gaussian mixture the probabilistic-sensing events are drawn
// from: three equal-weight isotropic components, rejection-sampled into
// the unit square.
struct EventMixture {
  std::vector<Point2> means{{0.25, 0.25}, {0.7, 0.3}, {0.5, 0.8}};
  double sigma = 0.12;

  Point2 sample(Rng& rng) const {
    while (true) {
      const Point2& mu = means[rng.uniform_int(0, static_cast<int>(means.size()) - 1)];
      const Point2 p{mu.x + sigma * rng.normal(), mu.y + sigma * rng.normal()};
      if (p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0) return p;
    }
  }
};

struct ProbSensingScenario {
  std::shared_ptr<ProbCoverageProblem> problem;
  SimplePartitionMatroid matroid{std::vector<int>{1}};
  std::vector<Point2> agent_positions;
  double r_s = 0.0;
  double r_a = 0.0;
  double gamma = 0.0;  // per-agent suboptimality budget, default 0.4/n
  double r_c = 0.0;    // communication range, default 2 r_a
};

// Probabilistic sensing: 50 events of value 1/50 from the fixed mixture;
// detection succeeds with probability exp(-d^2 / r_s^4).
inline ProbSensingScenario gen_prob_sensing(int n, Rng& rng, int n_events = 50,
                                            int actions_per_agent = 10) {
  if (n < 1) throw std::invalid_argument("gen_prob_sensing: n must be >= 1");
  ProbSensingScenario sc;
  sc.r_s = prob_sensor_radius(n);
  sc.r_a = prob_agent_radius(n);
  sc.gamma = 0.4 / n;
  sc.r_c = 2.0 * sc.r_a;

  const EventMixture mixture;
  std::vector<Event> events;
  for (int e = 0; e < n_events; ++e) events.push_back({mixture.sample(rng), 1.0 / n_events});

  std::vector<Point2> actions;  // flat, n * actions_per_agent
  for (int i = 0; i < n; ++i) {
    sc.agent_positions.push_back({rng.uniform(), rng.uniform()});
    for (int a = 0; a < actions_per_agent; ++a)
      actions.push_back(detail::uniform_in_disk(sc.agent_positions[i], sc.r_a, rng));
  }

  const double r_s = sc.r_s;
  auto failure = [&events, &actions, actions_per_agent, r_s](const GroundElement& x,
                                                             int event) -> double {
    const Point2& p = actions[static_cast<std::size_t>(x.agent_id) * actions_per_agent + x.action_id];
    return 1.0 - detection_success_prob(distance(p, events[event].position), r_s);
  };
  sc.problem = std::make_shared<ProbCoverageProblem>(events, std::vector<int>(n, actions_per_agent),
                                                     failure, actions);
  sc.matroid = SimplePartitionMatroid(std::vector<int>(n, actions_per_agent));
  return sc;
}

struct TrackingScenario {
  int n_robots = 1;
  GridWorld world;
  std::vector<int> robot_cells;
  std::vector<int> target_cells;  // one target per robot; initially known
  double sparse_threshold = 0.0;
  int n_samples = 50;
  int horizon = 2;
  int trial_length = 100;
  int burn_in = 20;
};

inline TrackingScenario gen_tracking(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("gen_tracking: n must be >= 1");
  TrackingScenario sc;
  sc.n_robots = n;
  sc.world = GridWorld::for_robots(n);
  sc.sparse_threshold = n >= 16 ? 1e-3 : 0.0;
  for (int i = 0; i < n; ++i) {
    sc.robot_cells.push_back(rng.uniform_int(0, sc.world.n_cells() - 1));
    sc.target_cells.push_back(rng.uniform_int(0, sc.world.n_cells() - 1));
  }
  return sc;
}

// Everything a solver spec might need beyond (f, m): positions for range
// limits, a comm graph for auctions, and lazily built redundancy weights
// for the adaptive round policies.
struct SolveContext {
  const std::vector<Point2>* positions = nullptr;
  const std::vector<std::vector<int>>* adjacency = nullptr;
  std::function<const RedundancyGraph*()> weights;
};

inline SolveResult solve_with_spec(const SetObjective& f, const SimplePartitionMatroid& m,
                                   const SolverSpec& spec, Rng& rng, const SolveContext& ctx = {}) {
  const auto weights = [&]() -> const RedundancyGraph* {
    if (!spec.needs_redundancy_graph()) return nullptr;
    if (!ctx.weights)
      throw std::invalid_argument("solve_with_spec: adaptive policy needs redundancy weights");
    return ctx.weights();
  };
  const auto adjacency = [&]() -> std::vector<std::vector<int>> {
    if (ctx.adjacency != nullptr) return *ctx.adjacency;
    std::vector<std::vector<int>> complete(m.n_agents());
    for (int i = 0; i < m.n_agents(); ++i)
      for (int j = 0; j < m.n_agents(); ++j)
        if (j != i) complete[i].push_back(j);
    return complete;
  };

  switch (spec.family) {
    case SolverFamily::Random:
      return random_plan(f, m, rng);
    case SolverFamily::Myopic:
      return myopic_plan(f, m);
    case SolverFamily::Sequential:
      return sequential_greedy(f, m);
    case SolverFamily::General:
      return general_greedy(f, m);
    case SolverFamily::Dsga:
      return dsga_plan(f, m, spec.n_d);
    case SolverFamily::Rsp:
      return rsp_plan(f, m, spec.policy, rng, weights());
    case SolverFamily::Rrsp: {
      if (ctx.positions == nullptr)
        throw std::invalid_argument("solve_with_spec: rrsp needs agent positions");
      return rrsp_plan(f, m, spec.policy, *ctx.positions, spec.comm_range, rng, weights());
    }
    case SolverFamily::AuctionGlobal: {
      const int rounds = spec.max_rounds > 0 ? spec.max_rounds : default_auction_rounds(m.n_agents());
      return global_auction(f, m, adjacency(), rounds);
    }
    case SolverFamily::AuctionLocal: {
      const int rounds = spec.max_rounds > 0 ? spec.max_rounds : default_auction_rounds(m.n_agents());
      return local_auction(f, m, adjacency(), rounds);
    }
  }
  throw std::invalid_argument("solve_with_spec: unknown solver family");
}

// Per-target capacity weights for a tracking planning step.
inline RedundancyGraph tracking_capacity_weights(const TrackingObjective& f,
                                                 const SimplePartitionMatroid& m) {
  std::vector<TrackingObjective> components;
  components.reserve(f.n_targets());
  for (int k = 0; k < f.n_targets(); ++k) components.push_back(f.single_target(k));
  std::vector<const SetObjective*> ptrs;
  for (const auto& c : components) ptrs.push_back(&c);
  return capacity_weights(ptrs, m);
}

struct TrackingStepRecord {
  int step = 0;
  double mean_entropy_bits = 0.0;
  double objective = 0.0;
  long planning_evals = 0;
};

struct TrackingTrialResult {
  std::vector<TrackingStepRecord> steps;
  double mean_entropy_bits = 0.0;  // over the post-burn-in steps
};

// One tracking trial: plan with a two-step receding horizon, execute the
// first move, step the targets, then measure and update every filter with
// every robot's range observation (observations are shared). Environment
// randomness is drawn from a stream independent of the solver's, so trials
// pair across solvers.
inline TrackingTrialResult run_tracking_trial(const TrackingScenario& sc, const SolverSpec& spec,
                                              std::uint64_t trial_seed) {
  Rng env_rng(derive_seed(trial_seed, 1));
  Rng solver_rng(derive_seed(trial_seed, 2));

  const GridWorld& world = sc.world;
  std::vector<int> robots = sc.robot_cells;
  std::vector<int> targets = sc.target_cells;
  std::vector<TargetFilter> filters;
  for (int cell : targets) filters.push_back(TargetFilter::point_mass(world, cell, sc.sparse_threshold));

  const int n_actions = sc.horizon == 1 ? GridWorld::kMoves : TrackingObjective::kSequences;
  const SimplePartitionMatroid matroid(std::vector<int>(sc.n_robots, n_actions));

  TrackingTrialResult out;
  double entropy_sum = 0.0;
  int entropy_steps = 0;

  for (int t = 1; t <= sc.trial_length; ++t) {
    TrackingOptions opt;
    opt.n_samples = sc.n_samples;
    opt.horizon = sc.horizon;
    opt.noise_seed = derive_seed(trial_seed, 0x9000 + t);
    if (spec.family == SolverFamily::Rrsp)
      opt.target_mask_range = 12.0;  // ignore targets believed far away
    const TrackingObjective f(world, filters, robots, opt);

    std::vector<Point2> positions(sc.n_robots);
    for (int i = 0; i < sc.n_robots; ++i)
      positions[i] = {static_cast<double>(world.cell_x(robots[i])),
                      static_cast<double>(world.cell_y(robots[i]))};

    RedundancyGraph weights(0);
    bool have_weights = false;
    SolveContext ctx;
    ctx.positions = &positions;
    ctx.weights = [&]() -> const RedundancyGraph* {
      if (!have_weights) {
        weights = tracking_capacity_weights(f, matroid);
        have_weights = true;
      }
      return &weights;
    };

    const SolveResult res = solve_with_spec(f, matroid, spec, solver_rng, ctx);

    // Execute the first move of each robot's committed sequence.
    for (const auto& x : res.selection) {
      const int first = sc.horizon == 1 ? x.action_id : x.action_id / GridWorld::kMoves;
      robots[x.agent_id] = world.move(robots[x.agent_id], first);
    }

    // Targets walk; every robot ranges every target; filters absorb all
    // observations (centralized estimation).
    for (int k = 0; k < sc.n_robots; ++k) targets[k] = target_step(targets[k], world, env_rng);
    for (int k = 0; k < sc.n_robots; ++k) {
      filter_predict(filters[k], world);
      for (int r = 0; r < sc.n_robots; ++r) {
        const double z = range_measurement(robots[r], targets[k], world, env_rng);
        filter_update(filters[k], world, robots[r], z);
      }
    }

    TrackingStepRecord rec;
    rec.step = t;
    for (const auto& filt : filters) rec.mean_entropy_bits += filter_entropy(filt);
    rec.mean_entropy_bits /= sc.n_robots;
    rec.objective = res.value;
    rec.planning_evals = f.evaluation_count();
    out.steps.push_back(rec);

    if (t > sc.burn_in) {
      entropy_sum += rec.mean_entropy_bits;
      ++entropy_steps;
    }
  }
  out.mean_entropy_bits = entropy_steps > 0 ? entropy_sum / entropy_steps : 0.0;
  return out;
}

}  // namespace submod
