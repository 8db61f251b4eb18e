#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "submod/objectives.hpp"
#include "submod/plan_types.hpp"
#include "submod/setfun.hpp"

namespace submod {

// Symmetric, non-negative inter-agent redundancy weights with zero
// diagonal.
class RedundancyGraph {
 public:
  explicit RedundancyGraph(int n_agents)
      : n_(n_agents), w_(static_cast<std::size_t>(n_agents) * n_agents, 0.0) {}

  int n_agents() const { return n_; }

  double weight(int i, int j) const { return w_[static_cast<std::size_t>(i) * n_ + j]; }

  void set_weight(int i, int j, double w) {
    if (i == j) throw std::invalid_argument("RedundancyGraph: no self edges");
    w = std::max(0.0, w);  // clamp numerical noise; redundancies are non-negative
    w_[static_cast<std::size_t>(i) * n_ + j] = w;
    w_[static_cast<std::size_t>(j) * n_ + i] = w;
  }

  // Sum over undirected edges (each pair counted once).
  double total_weight() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) t += weight(i, j);
    return t;
  }

  double row_sum(int i) const {
    double t = 0.0;
    for (int j = 0; j < n_; ++j) t += weight(i, j);
    return t;
  }

 private:
  int n_;
  std::vector<double> w_;
};

// w_ij = max over the action product of -f(x_i; x_j), clamped at zero.
inline double pairwise_weight(const SetObjective& f, const SimplePartitionMatroid& m, int agent_i,
                              int agent_j) {
  if (agent_i == agent_j) throw std::invalid_argument("pairwise_weight: i == j");
  double w = 0.0;
  const Selection empty;
  for (int a = 0; a < m.block_size(agent_i); ++a)
    for (int b = 0; b < m.block_size(agent_j); ++b)
      w = std::max(w, -second_derivative(f, {agent_i, a}, {agent_j, b}, empty));
  return w;
}

// Closed-form pairwise weight for probabilistic coverage:
// -f(a; b) = sum_e v_e (1 - p_a^e)(1 - p_b^e).
inline double pairwise_weight(const ProbCoverageProblem& f, const SimplePartitionMatroid& m,
                              int agent_i, int agent_j) {
  if (agent_i == agent_j) throw std::invalid_argument("pairwise_weight: i == j");
  const int n_e = f.n_events();
  double w = 0.0;
  for (int a = 0; a < m.block_size(agent_i); ++a) {
    const double* pa = f.failure_row({agent_i, a});
    for (int b = 0; b < m.block_size(agent_j); ++b) {
      const double* pb = f.failure_row({agent_j, b});
      double overlap = 0.0;
      for (int e = 0; e < n_e; ++e)
        overlap += f.events()[e].value * (1.0 - pa[e]) * (1.0 - pb[e]);
      w = std::max(w, overlap);
    }
  }
  return w;
}

// Closed-form pairwise weight for area coverage: -f(a; b) is the covered
// overlap |cells(a) & cells(b)| / n_cells; one stamp pass per agent pair.
inline double pairwise_weight(const AreaCoverageProblem& f, const SimplePartitionMatroid& m,
                              int agent_i, int agent_j) {
  if (agent_i == agent_j) throw std::invalid_argument("pairwise_weight: i == j");
  if (m.block_size(agent_i) > 16) {
    // Rare: blocks wider than the stamp mask; intersect sorted cell lists.
    int best = 0;
    for (int a = 0; a < m.block_size(agent_i); ++a) {
      auto [ai, ae] = f.cell_span({agent_i, a});
      for (int b = 0; b < m.block_size(agent_j); ++b) {
        auto [bi, be] = f.cell_span({agent_j, b});
        int count = 0;
        auto* x = ai;
        auto* y = bi;
        while (x != ae && y != be) {
          if (*x < *y)
            ++x;
          else if (*y < *x)
            ++y;
          else {
            ++count;
            ++x;
            ++y;
          }
        }
        best = std::max(best, count);
      }
    }
    return static_cast<double>(best) / f.n_cells();
  }
  std::vector<std::uint16_t> stamp(f.n_cells(), 0);
  for (int a = 0; a < m.block_size(agent_i); ++a) {
    auto [it, end] = f.cell_span({agent_i, a});
    for (; it != end; ++it) stamp[*it] |= static_cast<std::uint16_t>(1u << a);
  }
  std::vector<int> counts(m.block_size(agent_i), 0);
  int best = 0;
  for (int b = 0; b < m.block_size(agent_j); ++b) {
    std::fill(counts.begin(), counts.end(), 0);
    auto [it, end] = f.cell_span({agent_j, b});
    for (; it != end; ++it) {
      std::uint16_t mask = stamp[*it];
      while (mask) {
        const int a = std::countr_zero(mask);
        ++counts[a];
        mask &= static_cast<std::uint16_t>(mask - 1);
      }
    }
    for (int c : counts) best = std::max(best, c);
  }
  return static_cast<double>(best) / f.n_cells();
}

// Full redundancy graph; one pairwise_weight per agent pair, computed once
// per scenario. Coverage objectives take their closed-form fast paths.
inline RedundancyGraph build_redundancy_graph(const SetObjective& f,
                                              const SimplePartitionMatroid& m) {
  const auto* prob = dynamic_cast<const ProbCoverageProblem*>(&f);
  const auto* area = dynamic_cast<const AreaCoverageProblem*>(&f);
  RedundancyGraph g(m.n_agents());
  for (int i = 0; i < m.n_agents(); ++i) {
    for (int j = i + 1; j < m.n_agents(); ++j) {
      const double w = prob   ? pairwise_weight(*prob, m, i, j)
                       : area ? pairwise_weight(*area, m, i, j)
                              : pairwise_weight(f, m, i, j);
      g.set_weight(i, j, w);
    }
  }
  return g;
}

// Channel capacities C_ik = max over block i of f_k({x}) and weights
// W_hat(i,j) = sum_k min(C_ik, C_jk). Upper-bounds pairwise_weight of the
// summed objective.
inline RedundancyGraph capacity_weights(const std::vector<const SetObjective*>& components,
                                        const SimplePartitionMatroid& m,
                                        const SetObjective* whole = nullptr) {
  const int n_a = m.n_agents();
  const int n_k = static_cast<int>(components.size());

  if (whole != nullptr) {
    // Probe the sum decomposition on a few selections.
    std::vector<Selection> probes;
    probes.emplace_back();
    for (int i = 0; i < std::min(n_a, 3); ++i) {
      Selection s;
      for (int j = 0; j <= i; ++j) s.add({j, 0});
      probes.push_back(s);
    }
    for (const auto& s : probes) {
      double sum = 0.0;
      for (const auto* fk : components) sum += fk->value(s);
      if (std::abs(sum - whole->value(s)) > 1e-9)
        throw std::invalid_argument("capacity_weights: components do not decompose the objective");
    }
  }

  std::vector<double> cap(static_cast<std::size_t>(n_a) * n_k, 0.0);
  for (int i = 0; i < n_a; ++i) {
    for (int a = 0; a < m.block_size(i); ++a) {
      Selection single;
      single.add({i, a});
      for (int k = 0; k < n_k; ++k) {
        auto& c = cap[static_cast<std::size_t>(i) * n_k + k];
        c = std::max(c, components[k]->value(single));
      }
    }
  }

  RedundancyGraph g(n_a);
  for (int i = 0; i < n_a; ++i) {
    for (int j = i + 1; j < n_a; ++j) {
      double w = 0.0;
      for (int k = 0; k < n_k; ++k)
        w += std::min(cap[static_cast<std::size_t>(i) * n_k + k],
                      cap[static_cast<std::size_t>(j) * n_k + k]);
      g.set_weight(i, j, w);
    }
  }
  return g;
}

// Cumulative weight of edges the DAG deletes: sum over (i, j) with j an
// earlier agent not in N_i.
inline double deleted_edge_weight(const RedundancyGraph& graph, const PlannerDag& dag) {
  if (graph.n_agents() != dag.n_agents())
    throw std::invalid_argument("deleted_edge_weight: size mismatch");
  std::vector<char> in_nbr(graph.n_agents(), 0);
  double total = 0.0;
  for (std::size_t k = 0; k < dag.agent_order.size(); ++k) {
    const int i = dag.agent_order[k];
    for (int j : dag.in_neighbors[i]) in_nbr[j] = 1;
    for (std::size_t p = 0; p < k; ++p) {
      const int j = dag.agent_order[p];
      if (!in_nbr[j]) total += graph.weight(i, j);
    }
    for (int j : dag.in_neighbors[i]) in_nbr[j] = 0;
  }
  return total;
}

// 2 f(X^d) + deleted-edge weight; an upper bound on the optimum.
inline double posthoc_bound(const SolveResult& result, const RedundancyGraph& graph) {
  return 2.0 * result.value + deleted_edge_weight(graph, result.dag);
}

// Data-dependent upper bounds on the optimum from a solution's residual
// marginal gains (online) and from per-agent best singletons (oblivious).
inline std::pair<double, double> online_bounds(const SetObjective& f,
                                               const SimplePartitionMatroid& m,
                                               const Selection& s) {
  auto ev = evaluator_for(f, s);
  double online = ev->value();
  double oblivious = 0.0;
  auto empty_ev = f.make_evaluator();
  for (int i = 0; i < m.n_agents(); ++i) {
    double best_gain = 0.0;
    double best_single = 0.0;
    for (int a = 0; a < m.block_size(i); ++a) {
      const GroundElement x{i, a};
      if (!s.contains(x)) best_gain = std::max(best_gain, ev->gain(x));
      best_single = std::max(best_single, empty_ev->gain(x));
    }
    online += best_gain;
    oblivious += best_single;
  }
  return {online, oblivious};
}

struct BoundReport {
  double objective_value = 0.0;
  double deleted_edge_weight = 0.0;
  double posthoc_upper_bound = 0.0;
  double online_upper_bound = 0.0;
  double oblivious_upper_bound = 0.0;
  double suboptimality_lower_bound = 0.0;  // value / min(upper bounds)
};

inline BoundReport make_bound_report(const SetObjective& f, const SimplePartitionMatroid& m,
                                     const SolveResult& result, const RedundancyGraph& graph) {
  BoundReport r;
  r.objective_value = result.value;
  r.deleted_edge_weight = deleted_edge_weight(graph, result.dag);
  r.posthoc_upper_bound = 2.0 * result.value + r.deleted_edge_weight;
  auto [online, oblivious] = online_bounds(f, m, result.selection);
  r.online_upper_bound = online;
  r.oblivious_upper_bound = oblivious;
  const double best = std::min({r.posthoc_upper_bound, r.online_upper_bound, r.oblivious_upper_bound});
  r.suboptimality_lower_bound = best > 0.0 ? result.value / best : 0.0;
  return r;
}

// DSGA excess suboptimality: sum over commits of (gain at own-plan time -
// gain at commit time). Non-negative by submodularity.
inline double dsga_psi(const std::vector<std::pair<double, double>>& commit_trace) {
  double psi = 0.0;
  for (const auto& [initial, at_commit] : commit_trace) psi += initial - at_commit;
  return psi;
}

}  // namespace submod
