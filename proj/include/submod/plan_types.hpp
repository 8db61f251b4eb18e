#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "submod/setfun.hpp"

namespace submod {

// Per-agent in-neighbor sets over a total agent order. Acyclic by
// construction: in_neighbors[i] may only contain agents that appear
// earlier in agent_order.
struct PlannerDag {
  std::vector<int> agent_order;               // planning order (agent ids)
  std::vector<std::vector<int>> in_neighbors;  // indexed by agent id

  int n_agents() const { return static_cast<int>(agent_order.size()); }

  static PlannerDag complete(const std::vector<int>& order) {
    PlannerDag dag;
    dag.agent_order = order;
    dag.in_neighbors.assign(order.size(), {});
    for (std::size_t k = 0; k < order.size(); ++k)
      for (std::size_t j = 0; j < k; ++j) dag.in_neighbors[order[k]].push_back(order[j]);
    return dag;
  }

  static PlannerDag empty(int n_agents) {
    PlannerDag dag;
    dag.agent_order.resize(n_agents);
    for (int i = 0; i < n_agents; ++i) dag.agent_order[i] = i;
    dag.in_neighbors.assign(n_agents, {});
    return dag;
  }

  // Throws if some in-neighbor is not strictly earlier in the order.
  void validate() const {
    std::vector<int> position(in_neighbors.size(), -1);
    for (std::size_t k = 0; k < agent_order.size(); ++k) position[agent_order[k]] = static_cast<int>(k);
    for (std::size_t i = 0; i < in_neighbors.size(); ++i) {
      if (position[i] < 0) throw std::invalid_argument("PlannerDag: agent missing from order");
      for (int j : in_neighbors[i])
        if (position[j] >= position[i])
          throw std::invalid_argument("PlannerDag: in-neighbor not earlier in order (cycle)");
    }
  }
};

enum class RoundVariant { Fixed, GlobalAdaptive, LocalAdaptive };

struct RoundPolicy {
  RoundVariant variant = RoundVariant::Fixed;
  int n_d = 1;         // fixed variant
  double gamma = 0.0;  // adaptive variants

  static RoundPolicy fixed(int n_d) {
    if (n_d < 1) throw std::invalid_argument("RoundPolicy: n_d must be >= 1");
    return {RoundVariant::Fixed, n_d, 0.0};
  }
  static RoundPolicy global_adaptive(double gamma) {
    if (gamma <= 0.0) throw std::invalid_argument("RoundPolicy: gamma must be positive");
    return {RoundVariant::GlobalAdaptive, 1, gamma};
  }
  static RoundPolicy local_adaptive(double gamma) {
    if (gamma <= 0.0) throw std::invalid_argument("RoundPolicy: gamma must be positive");
    return {RoundVariant::LocalAdaptive, 1, gamma};
  }
};

enum class SolverFamily { Random, Myopic, Sequential, General, Dsga, Rsp, Rrsp, AuctionGlobal, AuctionLocal };

// Message-accounting inputs recorded while a solver runs.
struct MessageTrace {
  SolverFamily family = SolverFamily::Sequential;
  std::vector<int> order;           // sequential: planning order
  std::vector<int> round_of_agent;  // rsp/rrsp: 1-based rounds
  int n_rounds = 0;
  double comm_range = std::numeric_limits<double>::infinity();  // rrsp
  int auction_rounds = 0;
  // auction: length of the list each agent sent, per round
  std::vector<std::vector<int>> auction_list_lengths;
};

struct SolveResult {
  Selection selection;
  double value = 0.0;
  std::vector<double> per_agent_gain;  // decision order, matches selection
  int rounds_used = 0;
  std::optional<double> psi;  // DSGA only
  PlannerDag dag;
  std::optional<std::vector<int>> round_of_agent;
  bool converged = true;  // auctions only; true elsewhere
  MessageTrace trace;
};

}  // namespace submod
