#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "submod/objectives.hpp"
#include "submod/plan_types.hpp"
#include "submod/redundancy.hpp"
#include "submod/rng.hpp"
#include "submod/setfun.hpp"

namespace submod {

namespace detail {

// Argmax of marginal gain over one agent's block; ties broken by lowest
// action_id.
inline std::pair<GroundElement, double> best_in_block(const Evaluator& ev,
                                                      const SimplePartitionMatroid& m, int agent) {
  thread_local std::vector<double> gains;
  ev.block_gains(agent, m.block_size(agent), gains);
  int best = 0;
  for (int a = 1; a < m.block_size(agent); ++a)
    if (gains[a] > gains[best]) best = a;
  return {GroundElement{agent, best}, gains[best]};
}

inline SolveResult finalize(const SetObjective& f, Selection selection,
                            std::vector<double> gains, PlannerDag dag) {
  SolveResult r;
  r.selection = std::move(selection);
  r.per_agent_gain = std::move(gains);
  r.dag = std::move(dag);
  r.value = f.value(r.selection);
  return r;
}

}  // namespace detail

// Greedy planning on a directed acyclic graph: agent i maximizes marginal
// gain conditioned only on the decisions of its in-neighbors. The complete
// DAG recovers sequential greedy; the empty DAG is myopic planning.
inline SolveResult dag_greedy(const SetObjective& f, const SimplePartitionMatroid& m,
                              const PlannerDag& dag) {
  if (dag.n_agents() != m.n_agents())
    throw std::invalid_argument("dag_greedy: DAG does not cover all agents");
  dag.validate();

  const int n = m.n_agents();
  std::vector<GroundElement> pick(n);
  std::vector<double> gains;
  gains.reserve(n);
  Selection selection;

  auto prefix_ev = f.make_evaluator();  // all picks so far, in decision order
  std::unique_ptr<Evaluator> cached_ev;
  std::vector<int> cached_key;
  std::vector<char> is_nbr(n, 0);

  for (int k = 0; k < n; ++k) {
    const int i = dag.agent_order[k];
    const auto& nbrs = dag.in_neighbors[i];

    const Evaluator* ev;
    if (static_cast<int>(nbrs.size()) == k) {
      ev = prefix_ev.get();
    } else {
      std::vector<int> key(nbrs);
      std::sort(key.begin(), key.end());
      if (!cached_ev || key != cached_key) {
        cached_ev = f.make_evaluator();
        for (int j : nbrs) is_nbr[j] = 1;
        for (int p = 0; p < k; ++p) {
          const int j = dag.agent_order[p];
          if (is_nbr[j]) cached_ev->add(pick[j]);
        }
        for (int j : nbrs) is_nbr[j] = 0;
        cached_key = std::move(key);
      }
      ev = cached_ev.get();
    }

    auto [best, gain] = detail::best_in_block(*ev, m, i);
    pick[i] = best;
    gains.push_back(gain);
    selection.add(best);
    prefix_ev->add(best);
  }

  SolveResult r = detail::finalize(f, std::move(selection), std::move(gains), dag);
  r.rounds_used = n;
  return r;
}

// Locally greedy / sequential maximization: agents choose in the given
// order, each maximizing marginal gain given all prior picks.
inline SolveResult sequential_greedy(const SetObjective& f, const SimplePartitionMatroid& m,
                                     const std::vector<int>& order) {
  std::vector<int> seen(order);
  std::sort(seen.begin(), seen.end());
  for (int i = 0; i < m.n_agents(); ++i)
    if (i >= static_cast<int>(seen.size()) || seen[i] != i)
      throw std::invalid_argument("sequential_greedy: order is not an agent permutation");

  SolveResult r = dag_greedy(f, m, PlannerDag::complete(order));
  r.trace.family = SolverFamily::Sequential;
  r.trace.order = order;
  return r;
}

inline SolveResult sequential_greedy(const SetObjective& f, const SimplePartitionMatroid& m) {
  std::vector<int> order(m.n_agents());
  std::iota(order.begin(), order.end(), 0);
  return sequential_greedy(f, m, order);
}

// Standard greedy: repeatedly add the globally best feasible element until
// the basis is complete. Ties broken by (gain, agent_id, action_id).
inline SolveResult general_greedy(const SetObjective& f, const SimplePartitionMatroid& m) {
  const int n = m.n_agents();
  auto ev = f.make_evaluator();
  std::vector<char> assigned(n, 0);
  Selection selection;
  std::vector<double> gains;
  std::vector<int> decision_order;

  for (int step = 0; step < n; ++step) {
    GroundElement best;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (assigned[i]) continue;
      for (int a = 0; a < m.block_size(i); ++a) {
        const double g = ev->gain({i, a});
        if (g > best_gain) {
          best = {i, a};
          best_gain = g;
        }
      }
    }
    assigned[best.agent_id] = 1;
    selection.add(best);
    gains.push_back(best_gain);
    decision_order.push_back(best.agent_id);
    ev->add(best);
  }

  SolveResult r =
      detail::finalize(f, std::move(selection), std::move(gains), PlannerDag::complete(decision_order));
  r.rounds_used = n;
  r.trace.family = SolverFamily::General;
  r.trace.order = decision_order;
  return r;
}

inline SolveResult myopic_plan(const SetObjective& f, const SimplePartitionMatroid& m) {
  SolveResult r = dag_greedy(f, m, PlannerDag::empty(m.n_agents()));
  r.rounds_used = 1;
  r.trace.family = SolverFamily::Myopic;
  return r;
}

inline SolveResult random_plan(const SetObjective& f, const SimplePartitionMatroid& m, Rng& rng) {
  Selection selection;
  for (int i = 0; i < m.n_agents(); ++i)
    selection.add({i, rng.uniform_int(0, m.block_size(i) - 1)});
  SolveResult r;
  r.selection = selection;
  r.value = f.value(selection);
  r.per_agent_gain.assign(m.n_agents(), 0.0);
  r.dag = PlannerDag::empty(m.n_agents());
  r.rounds_used = 1;
  r.trace.family = SolverFamily::Random;
  return r;
}

// Draw one planning round per agent: d_i ~ Uniform{1..k_i}. Adaptive
// variants size k_i from redundancy-graph weights and a per-agent
// suboptimality budget gamma.
inline std::pair<std::vector<int>, int> rsp_assign_rounds(int n_agents, const RoundPolicy& policy,
                                                          const RedundancyGraph* weights, Rng& rng) {
  std::vector<int> k(n_agents, 1);
  switch (policy.variant) {
    case RoundVariant::Fixed:
      if (policy.n_d < 1) throw std::invalid_argument("rsp_assign_rounds: n_d must be >= 1");
      std::fill(k.begin(), k.end(), policy.n_d);
      break;
    case RoundVariant::GlobalAdaptive: {
      if (policy.gamma <= 0.0) throw std::invalid_argument("rsp_assign_rounds: gamma must be positive");
      if (weights == nullptr)
        throw std::invalid_argument("rsp_assign_rounds: adaptive policy requires redundancy weights");
      const int n_d =
          std::max(1, static_cast<int>(std::ceil(weights->total_weight() / (n_agents * policy.gamma))));
      std::fill(k.begin(), k.end(), n_d);
      break;
    }
    case RoundVariant::LocalAdaptive: {
      if (policy.gamma <= 0.0) throw std::invalid_argument("rsp_assign_rounds: gamma must be positive");
      if (weights == nullptr)
        throw std::invalid_argument("rsp_assign_rounds: adaptive policy requires redundancy weights");
      for (int i = 0; i < n_agents; ++i)
        k[i] = std::max(1, static_cast<int>(std::ceil(weights->row_sum(i) / (2.0 * policy.gamma))));
      break;
    }
  }
  std::vector<int> round(n_agents);
  int n_d = 1;
  for (int i = 0; i < n_agents; ++i) {
    round[i] = rng.uniform_int(1, k[i]);
    n_d = std::max(n_d, k[i]);
  }
  return {round, n_d};
}

// DAG for a round assignment: agents ordered by (round, agent_id);
// in-neighbors are all earlier agents in strictly earlier rounds.
inline PlannerDag rounds_to_dag(const std::vector<int>& round_of_agent) {
  const int n = static_cast<int>(round_of_agent.size());
  PlannerDag dag;
  dag.agent_order.resize(n);
  std::iota(dag.agent_order.begin(), dag.agent_order.end(), 0);
  std::stable_sort(dag.agent_order.begin(), dag.agent_order.end(),
                   [&](int a, int b) { return round_of_agent[a] < round_of_agent[b]; });
  dag.in_neighbors.assign(n, {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (round_of_agent[j] < round_of_agent[i]) dag.in_neighbors[i].push_back(j);
  return dag;
}

// Randomized Sequential Partitions: same-round agents ignore each other
// and may plan in parallel.
inline SolveResult rsp_plan(const SetObjective& f, const SimplePartitionMatroid& m,
                            const RoundPolicy& policy, Rng& rng,
                            const RedundancyGraph* weights = nullptr) {
  auto [round, n_d] = rsp_assign_rounds(m.n_agents(), policy, weights, rng);
  SolveResult r = dag_greedy(f, m, rounds_to_dag(round));
  r.rounds_used = n_d;
  r.round_of_agent = round;
  r.trace.family = SolverFamily::Rsp;
  r.trace.round_of_agent = round;
  r.trace.n_rounds = n_d;
  return r;
}

// Range-limited RSP: additionally prune in-neighbors beyond Euclidean
// distance r_c.
inline SolveResult rrsp_plan(const SetObjective& f, const SimplePartitionMatroid& m,
                             const RoundPolicy& policy, const std::vector<Point2>& positions,
                             double r_c, Rng& rng, const RedundancyGraph* weights = nullptr) {
  if (r_c <= 0.0) throw std::invalid_argument("rrsp_plan: r_c must be positive");
  if (static_cast<int>(positions.size()) != m.n_agents())
    throw std::invalid_argument("rrsp_plan: one position per agent required");
  auto [round, n_d] = rsp_assign_rounds(m.n_agents(), policy, weights, rng);
  PlannerDag dag = rounds_to_dag(round);
  for (int i = 0; i < m.n_agents(); ++i) {
    auto& nbrs = dag.in_neighbors[i];
    nbrs.erase(std::remove_if(nbrs.begin(), nbrs.end(),
                              [&](int j) { return distance(positions[i], positions[j]) > r_c; }),
               nbrs.end());
  }
  SolveResult r = dag_greedy(f, m, dag);
  r.rounds_used = n_d;
  r.round_of_agent = round;
  r.trace.family = SolverFamily::Rrsp;
  r.trace.round_of_agent = round;
  r.trace.n_rounds = n_d;
  r.trace.comm_range = r_c;
  return r;
}

// Distributed sequential greedy assignment: n_d rounds of parallel
// planning followed by greedy commits that minimize the decay between
// each agent's initial gain and its gain at commit time. The accumulated
// decay is the excess-suboptimality term psi.
inline SolveResult dsga_plan(const SetObjective& f, const SimplePartitionMatroid& m, int n_d) {
  if (n_d < 1) throw std::invalid_argument("dsga_plan: n_d must be >= 1");
  const int n = m.n_agents();
  const int commits_per_round = (n + n_d - 1) / n_d;

  Selection committed;
  std::vector<double> commit_gain;
  std::vector<char> assigned(n, 0);
  std::vector<GroundElement> plan(n);
  std::vector<double> initial_gain(n, 0.0), current_gain(n, 0.0);
  double psi = 0.0;
  std::vector<int> decision_order;
  int rounds = 0;

  auto base_ev = f.make_evaluator();
  int n_assigned = 0;
  for (int round = 0; round < n_d && n_assigned < n; ++round) {
    ++rounds;
    // Planning phase: every unassigned agent plans against the fixed set.
    for (int i = 0; i < n; ++i) {
      if (assigned[i]) continue;
      auto [best, gain] = detail::best_in_block(*base_ev, m, i);
      plan[i] = best;
      initial_gain[i] = gain;
      current_gain[i] = gain;
    }
    // Selection phase: commit greedily, minimizing gain decay. The first
    // commit of a round (all decays zero) goes to the maximum initial gain.
    for (int c = 0; c < commits_per_round && n_assigned < n; ++c) {
      int j = -1;
      for (int i = 0; i < n; ++i) {
        if (assigned[i]) continue;
        if (j < 0) {
          j = i;
          continue;
        }
        const double decay_i = initial_gain[i] - current_gain[i];
        const double decay_j = initial_gain[j] - current_gain[j];
        if (decay_i < decay_j || (decay_i == decay_j && initial_gain[i] > initial_gain[j])) j = i;
      }
      assigned[j] = 1;
      ++n_assigned;
      psi += initial_gain[j] - current_gain[j];
      committed.add(plan[j]);
      commit_gain.push_back(current_gain[j]);
      decision_order.push_back(j);
      base_ev->add(plan[j]);
      // Survivors update their plans and gains against the grown fixed set.
      for (int i = 0; i < n; ++i) {
        if (assigned[i]) continue;
        auto [best, gain] = detail::best_in_block(*base_ev, m, i);
        plan[i] = best;
        current_gain[i] = gain;
      }
    }
  }

  SolveResult r = detail::finalize(f, std::move(committed), std::move(commit_gain),
                                   PlannerDag::complete(decision_order));
  r.rounds_used = rounds;
  r.psi = psi;
  r.trace.family = SolverFamily::Dsga;
  r.trace.order = decision_order;
  return r;
}

namespace detail {

// Ordering for auction bids: higher value wins; agent then action indices
// break symmetry deterministically.
struct BidKey {
  double value = -std::numeric_limits<double>::infinity();
  int agent_id = std::numeric_limits<int>::max();
  int action_id = std::numeric_limits<int>::max();

  friend bool operator==(const BidKey&, const BidKey&) = default;
  // True when `a` dominates `b`.
  friend bool dominates(const BidKey& a, const BidKey& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.agent_id != b.agent_id) return a.agent_id < b.agent_id;
    return a.action_id < b.action_id;
  }
};

struct AssignmentList {
  std::vector<GroundElement> elements;
  std::vector<double> values;

  BidKey key(std::size_t pos) const {
    if (pos >= elements.size()) return {};
    return {values[pos], elements[pos].agent_id, elements[pos].action_id};
  }
  bool operator==(const AssignmentList&) const = default;
};

}  // namespace detail

// Auction with global information: agents exchange assignment lists with
// neighbors and re-run general greedy over their own block plus all
// assignments they have seen. Converges to the general greedy solution on
// connected graphs.
inline SolveResult global_auction(const SetObjective& f, const SimplePartitionMatroid& m,
                                  const std::vector<std::vector<int>>& neighbors, int max_rounds) {
  const int n = m.n_agents();
  if (static_cast<int>(neighbors.size()) != n)
    throw std::invalid_argument("global_auction: one adjacency list per agent required");

  // Greedy over a restricted ground set; candidates are whole blocks for
  // some agents plus single foreign assignments.
  const auto greedy_over = [&](const std::vector<GroundElement>& extra,
                               int self) -> std::vector<GroundElement> {
    std::vector<std::vector<GroundElement>> per_agent(n);
    for (int a = 0; a < m.block_size(self); ++a) per_agent[self].push_back({self, a});
    for (const auto& x : extra) {
      auto& bucket = per_agent[x.agent_id];
      if (std::find(bucket.begin(), bucket.end(), x) == bucket.end()) bucket.push_back(x);
    }
    auto ev = f.make_evaluator();
    std::vector<char> done(n, 0);
    std::vector<GroundElement> out;
    while (true) {
      GroundElement best;
      double best_gain = -std::numeric_limits<double>::infinity();
      bool found = false;
      for (int i = 0; i < n; ++i) {
        if (done[i] || per_agent[i].empty()) continue;
        for (const auto& x : per_agent[i]) {
          const double g = ev->gain(x);
          if (!found || g > best_gain ||
              (g == best_gain && (x.agent_id < best.agent_id ||
                                  (x.agent_id == best.agent_id && x.action_id < best.action_id)))) {
            best = x;
            best_gain = g;
            found = true;
          }
        }
      }
      if (!found) break;
      done[best.agent_id] = 1;
      out.push_back(best);
      ev->add(best);
    }
    return out;
  };

  std::vector<std::vector<GroundElement>> lists(n);
  MessageTrace trace;
  trace.family = SolverFamily::AuctionGlobal;

  bool converged = false;
  int rounds = 0;
  while (rounds < max_rounds && !converged) {
    ++rounds;
    trace.auction_list_lengths.emplace_back(n);
    for (int i = 0; i < n; ++i)
      trace.auction_list_lengths.back()[i] = static_cast<int>(lists[i].size());

    std::vector<std::vector<GroundElement>> next(n);
    for (int i = 0; i < n; ++i) {
      std::vector<GroundElement> seen = lists[i];
      for (int j : neighbors[i]) seen.insert(seen.end(), lists[j].begin(), lists[j].end());
      next[i] = greedy_over(seen, i);
    }
    lists = std::move(next);
    converged = true;
    for (int i = 1; i < n && converged; ++i) converged = (lists[i] == lists[0]);
    // An identical-but-incomplete state cannot persist; require one full
    // basis before declaring convergence.
    if (converged && static_cast<int>(lists[0].size()) != n) converged = false;
  }

  trace.auction_rounds = rounds;
  Selection selection;
  std::vector<char> have(n, 0);
  for (const auto& x : lists[0]) {
    selection.add(x);
    have[x.agent_id] = 1;
  }

  SolveResult r;
  r.selection = selection;
  r.value = f.value(selection);
  r.per_agent_gain.assign(selection.size(), 0.0);
  std::vector<int> order;
  for (const auto& x : lists[0]) order.push_back(x.agent_id);
  for (int i = 0; i < n; ++i)
    if (!have[i]) order.push_back(i);
  {
    PlannerDag dag = PlannerDag::complete(order);
    r.dag = std::move(dag);
  }
  r.rounds_used = rounds;
  r.converged = converged;
  r.trace = trace;
  return r;
}

// Auction with local information: agents exchange (assignment, value)
// lists and never evaluate other agents' marginal gains. Update rule: at
// the first differing position the dominant list wins; a losing agent
// without an assignment in the winning list inserts its best bid at the
// first position where it beats the incumbent, truncating later entries.
inline SolveResult local_auction(const SetObjective& f, const SimplePartitionMatroid& m,
                                 const std::vector<std::vector<int>>& neighbors, int max_rounds) {
  using detail::AssignmentList;
  const int n = m.n_agents();
  if (static_cast<int>(neighbors.size()) != n)
    throw std::invalid_argument("local_auction: one adjacency list per agent required");

  const auto update = [&](int self, const AssignmentList& own,
                          const AssignmentList& other) -> AssignmentList {
    const std::size_t limit = std::max(own.elements.size(), other.elements.size());
    std::size_t diff = limit;
    for (std::size_t p = 0; p < limit; ++p) {
      if (own.key(p) == other.key(p)) continue;
      diff = p;
      break;
    }
    if (diff == limit) return own;  // identical lists
    if (dominates(own.key(diff), other.key(diff))) return own;
    for (const auto& x : other.elements)
      if (x.agent_id == self) return other;
    // Insert own best bid into the winning list.
    auto ev = f.make_evaluator();
    for (std::size_t p = 0; p < diff; ++p) ev->add(other.elements[p]);
    for (std::size_t pos = diff; pos <= other.elements.size(); ++pos) {
      auto [best, gain] = detail::best_in_block(*ev, m, self);
      const detail::BidKey bid{gain, best.agent_id, best.action_id};
      if (pos == other.elements.size() || dominates(bid, other.key(pos))) {
        AssignmentList out;
        out.elements.assign(other.elements.begin(), other.elements.begin() + pos);
        out.values.assign(other.values.begin(), other.values.begin() + pos);
        out.elements.push_back(best);
        out.values.push_back(gain);
        return out;
      }
      ev->add(other.elements[pos]);
    }
    return own;  // unreachable
  };

  std::vector<AssignmentList> lists(n);
  for (int i = 0; i < n; ++i) {
    auto ev = f.make_evaluator();
    auto [best, gain] = detail::best_in_block(*ev, m, i);
    lists[i].elements.push_back(best);
    lists[i].values.push_back(gain);
  }

  MessageTrace trace;
  trace.family = SolverFamily::AuctionLocal;

  bool converged = false;
  int rounds = 0;
  while (rounds < max_rounds && !converged) {
    ++rounds;
    trace.auction_list_lengths.emplace_back(n);
    for (int i = 0; i < n; ++i)
      trace.auction_list_lengths.back()[i] = static_cast<int>(lists[i].elements.size());

    std::vector<AssignmentList> next = lists;
    for (int i = 0; i < n; ++i)
      for (int j : neighbors[i]) next[i] = update(i, next[i], lists[j]);
    lists = std::move(next);
    converged = true;
    for (int i = 1; i < n && converged; ++i) converged = (lists[i] == lists[0]);
    if (converged && static_cast<int>(lists[0].elements.size()) != n) converged = false;
  }

  trace.auction_rounds = rounds;
  Selection selection;
  for (const auto& x : lists[0].elements) selection.add(x);

  SolveResult r;
  r.selection = selection;
  r.value = f.value(selection);
  r.per_agent_gain = lists[0].values;
  std::vector<int> order;
  std::vector<char> have(n, 0);
  for (const auto& x : lists[0].elements) {
    order.push_back(x.agent_id);
    have[x.agent_id] = 1;
  }
  for (int i = 0; i < n; ++i)
    if (!have[i]) order.push_back(i);
  r.dag = PlannerDag::complete(order);
  r.rounds_used = rounds;
  r.converged = converged;
  r.trace = trace;
  return r;
}

inline int default_auction_rounds(int n_agents) { return 3 * n_agents; }

// CLI solver specification, e.g. "rsp:4", "rsp:global:0.008",
// "rrsp:4:0.5", "dsga:8", "auction:local:12".
struct SolverSpec {
  SolverFamily family = SolverFamily::Sequential;
  RoundPolicy policy = RoundPolicy::fixed(1);
  double comm_range = 0.0;  // rrsp
  int n_d = 1;              // dsga
  int max_rounds = 0;       // auctions; 0 means default
  std::string text;

  bool needs_redundancy_graph() const {
    return (family == SolverFamily::Rsp || family == SolverFamily::Rrsp) &&
           policy.variant != RoundVariant::Fixed;
  }
};

inline SolverSpec parse_solver_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(':', start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }

  SolverSpec spec;
  spec.text = text;
  const auto& head = parts[0];
  const auto argi = [&](std::size_t i) { return std::stoi(parts.at(i)); };
  const auto argd = [&](std::size_t i) { return std::stod(parts.at(i)); };

  try {
    if (head == "random" && parts.size() == 1) {
      spec.family = SolverFamily::Random;
    } else if (head == "myopic" && parts.size() == 1) {
      spec.family = SolverFamily::Myopic;
    } else if (head == "sequential" && parts.size() == 1) {
      spec.family = SolverFamily::Sequential;
    } else if (head == "general" && parts.size() == 1) {
      spec.family = SolverFamily::General;
    } else if (head == "dsga" && parts.size() == 2) {
      spec.family = SolverFamily::Dsga;
      spec.n_d = argi(1);
    } else if (head == "rsp" && parts.size() == 2) {
      spec.family = SolverFamily::Rsp;
      spec.policy = RoundPolicy::fixed(argi(1));
    } else if (head == "rsp" && parts.size() == 3 && parts[1] == "global") {
      spec.family = SolverFamily::Rsp;
      spec.policy = RoundPolicy::global_adaptive(argd(2));
    } else if (head == "rsp" && parts.size() == 3 && parts[1] == "local") {
      spec.family = SolverFamily::Rsp;
      spec.policy = RoundPolicy::local_adaptive(argd(2));
    } else if (head == "rrsp" && parts.size() == 3) {
      spec.family = SolverFamily::Rrsp;
      spec.policy = RoundPolicy::fixed(argi(1));
      spec.comm_range = argd(2);
      if (spec.comm_range <= 0.0) throw std::invalid_argument("comm range");
    } else if (head == "auction" && parts.size() >= 2 && parts[1] == "global") {
      spec.family = SolverFamily::AuctionGlobal;
      if (parts.size() == 3) spec.max_rounds = argi(2);
    } else if (head == "auction" && parts.size() >= 2 && parts[1] == "local") {
      spec.family = SolverFamily::AuctionLocal;
      if (parts.size() == 3) spec.max_rounds = argi(2);
    } else {
      throw std::invalid_argument("unrecognized solver");
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_solver_spec: bad solver spec '" + text + "'");
  }
  return spec;
}

}  // namespace submod
